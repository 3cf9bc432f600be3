#pragma once

#include <array>
#include <vector>

#include "cvtele/types.hpp"

namespace cvtele {

/// Per-variable maximum degree of a Jet in (u1, v1, u2, v2).
using JetOrders = std::array<int, 4>;
using JetIndex = std::array<int, 4>;

/// Practical bound on each jet order.
inline constexpr int kMaxJetOrder = 12;

/// Truncated power series in four variables (u1, v1, u2, v2) with complex
/// coefficients. Storage is dense; coefficient (k1,l1,k2,l2) multiplies
/// u1^k1 v1^l1 u2^k2 v2^l2. Products drop every monomial whose degree in
/// some variable exceeds that variable's order.
class Jet {
 public:
  explicit Jet(JetOrders orders);

  static Jet constant(JetOrders orders, Complex value);

  const JetOrders& orders() const { return orders_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex& operator[](const JetIndex& k) { return coeffs_[offset(k)]; }
  const Complex& operator[](const JetIndex& k) const { return coeffs_[offset(k)]; }

  /// Coefficient access that returns 0 outside the truncation box.
  Complex coeff(const JetIndex& k) const;
  bool contains(const JetIndex& k) const;

  const std::vector<Complex>& coefficients() const { return coeffs_; }

  Jet& operator+=(const Jet& other);
  Jet& operator*=(Complex scalar);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);

  friend bool operator==(const Jet& a, const Jet& b) = default;

 private:
  std::size_t offset(const JetIndex& k) const;
  JetIndex unravel(std::size_t flat) const;

  JetOrders orders_;
  std::array<std::size_t, 4> strides_{};
  std::vector<Complex> coeffs_;
};

/// Truncated series of exp(u^T M u + u^T L + c) with u = (u1, v1, u2, v2).
/// M is read as a symmetric quadratic form. Throws DomainError when any
/// order exceeds kMaxJetOrder or is negative.
Jet jet_exp(const Matrix4c& quadratic, const Vector4c& linear, Complex constant,
            JetOrders orders);

/// Normalized mixed derivative
///   2^{-(n1+n2)} / (n1! n2!) * d^{n1}_{u1} d^{n1}_{v1} d^{n2}_{u2} d^{n2}_{v2} f |_0
/// read off the jet. Throws TruncationError if the jet is too short.
Complex apply_F1(const Jet& jet, int n1, int n2);

}  // namespace cvtele
