#include "cvtele/jet.hpp"

#include <cmath>
#include <string>

#include "cvtele/errors.hpp"
#include "cvtele/special_functions.hpp"

namespace cvtele {

Jet::Jet(JetOrders orders) : orders_(orders) {
  for (int o : orders_) {
    if (o < 0 || o > kMaxJetOrder) {
      throw DomainError("Jet: order " + std::to_string(o) + " outside [0, " +
                        std::to_string(kMaxJetOrder) + "]");
    }
  }
  strides_[3] = 1;
  for (int v = 2; v >= 0; --v) {
    strides_[v] = strides_[v + 1] * static_cast<std::size_t>(orders_[v + 1] + 1);
  }
  coeffs_.assign(strides_[0] * static_cast<std::size_t>(orders_[0] + 1), Complex{});
}

Jet Jet::constant(JetOrders orders, Complex value) {
  Jet jet(orders);
  jet.coeffs_[0] = value;
  return jet;
}

bool Jet::contains(const JetIndex& k) const {
  for (int v = 0; v < 4; ++v) {
    if (k[v] < 0 || k[v] > orders_[v]) return false;
  }
  return true;
}

Complex Jet::coeff(const JetIndex& k) const {
  return contains(k) ? coeffs_[offset(k)] : Complex{};
}

std::size_t Jet::offset(const JetIndex& k) const {
  std::size_t flat = 0;
  for (int v = 0; v < 4; ++v) flat += strides_[v] * static_cast<std::size_t>(k[v]);
  return flat;
}

JetIndex Jet::unravel(std::size_t flat) const {
  JetIndex k{};
  for (int v = 0; v < 4; ++v) {
    k[v] = static_cast<int>(flat / strides_[v]);
    flat %= strides_[v];
  }
  return k;
}

Jet& Jet::operator+=(const Jet& other) {
  if (other.orders_ != orders_) throw DomainError("Jet: order mismatch in sum");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Jet& Jet::operator*=(Complex scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.orders_ != b.orders_) throw DomainError("Jet: order mismatch in product");
  Jet result(a.orders_);
  // Iterate over nonzeros of both operands; the series built in jet_exp are sparse.
  std::vector<std::pair<JetIndex, Complex>> rhs;
  rhs.reserve(b.coeffs_.size());
  for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
    if (b.coeffs_[j] != Complex{}) rhs.emplace_back(b.unravel(j), b.coeffs_[j]);
  }
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const Complex ca = a.coeffs_[i];
    if (ca == Complex{}) continue;
    const JetIndex ka = a.unravel(i);
    for (const auto& [kb, cb] : rhs) {
      JetIndex k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]};
      if (!result.contains(k)) continue;
      result.coeffs_[result.offset(k)] += ca * cb;
    }
  }
  return result;
}

Jet jet_exp(const Matrix4c& quadratic, const Vector4c& linear, Complex constant,
            JetOrders orders) {
  // p(u) = u^T M u + L^T u has no constant term, so p^k starts at total degree k
  // and the exponential series terminates after sum(orders) terms.
  Jet poly(orders);
  for (int i = 0; i < 4; ++i) {
    JetIndex k{};
    k[i] = 1;
    if (poly.contains(k)) poly[k] += linear(i);
    for (int j = 0; j < 4; ++j) {
      JetIndex kk{};
      kk[i] += 1;
      kk[j] += 1;
      if (poly.contains(kk)) poly[kk] += quadratic(i, j);
    }
  }

  int total = 0;
  for (int o : orders) total += o;

  Jet sum = Jet::constant(orders, Complex{1.0, 0.0});
  Jet term = sum;
  for (int k = 1; k <= total; ++k) {
    term = term * poly;
    term *= Complex{1.0 / k, 0.0};
    sum += term;
  }
  sum *= std::exp(constant);
  return sum;
}

Complex apply_F1(const Jet& jet, int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw DomainError("apply_F1: negative photon number");
  const JetIndex k{n1, n1, n2, n2};
  if (!jet.contains(k)) {
    throw TruncationError("apply_F1: jet orders too small for (n1, n2) = (" +
                          std::to_string(n1) + ", " + std::to_string(n2) + ")");
  }
  // d^{n}_u d^{n}_v at 0 equals (n!)^2 times the Taylor coefficient.
  const double scale =
      std::ldexp(1.0, -(n1 + n2)) * factorial(n1) * factorial(n2);
  return scale * jet[k];
}

}  // namespace cvtele
