#pragma once

#include <initializer_list>

#include <Eigen/Dense>

#include "cvtele/types.hpp"

namespace cvtele {

// Conventions: hbar = 1, quadratures ordered (q1, p1, ..., qn, pn), vacuum
// covariance 1/2. The displacement D(a, b) = exp(i(b q - a p)) shifts q by a
// and p by b, i.e. it is the Glauber displacement with alpha = (a + i b)/sqrt(2).

/// Phase-space argument Lambda = (tau1, sigma1, ..., taun, sigman) of a
/// characteristic function.
class PhasePoint {
 public:
  PhasePoint() = default;
  explicit PhasePoint(Eigen::VectorXd values);
  PhasePoint(std::initializer_list<double> values);

  static PhasePoint zero(int modes);

  int modes() const { return static_cast<int>(values_.size() / 2); }
  const Eigen::VectorXd& values() const { return values_; }
  double operator[](int i) const { return values_(i); }
  double tau(int mode) const { return values_(2 * mode); }
  double sigma(int mode) const { return values_(2 * mode + 1); }

  PhasePoint operator-() const { return PhasePoint(Eigen::VectorXd(-values_)); }

 private:
  Eigen::VectorXd values_;
};

/// Symplectic form Omega = (+)_k [[0, 1], [-1, 0]] on n modes.
Eigen::MatrixXd symplectic_form(int modes);

/// Real 2n x 2n matrix with S Omega S^T = Omega.
class SymplecticMatrix {
 public:
  /// Wraps a matrix. Throws DomainError if it is not even-dimensional and
  /// symplectic to `tolerance`.
  explicit SymplecticMatrix(Eigen::MatrixXd matrix, double tolerance = 1e-10);

  static SymplecticMatrix identity(int modes);

  int modes() const { return static_cast<int>(matrix_.rows() / 2); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// S^{-1} = Omega S^T Omega^T.
  SymplecticMatrix inverse() const;

  /// Largest entry of |S Omega S^T - Omega|.
  double symplectic_defect() const;

  /// Acts on modes (first, second) of an n-mode system; `two_mode` is 4x4.
  static SymplecticMatrix embed(const SymplecticMatrix& two_mode, int first, int second,
                                int modes);
  /// Acts on a single mode of an n-mode system; `one_mode` is 2x2.
  static SymplecticMatrix embed(const SymplecticMatrix& one_mode, int mode, int modes);

  static SymplecticMatrix direct_sum(const SymplecticMatrix& a, const SymplecticMatrix& b);

  friend SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b);

 private:
  struct Unchecked {};
  SymplecticMatrix(Eigen::MatrixXd matrix, Unchecked) : matrix_(std::move(matrix)) {}

  Eigen::MatrixXd matrix_;
};

/// Beam splitter of transmissivity T acting on (q_i, p_i, q_j, p_j):
/// [[sqrt(T) 1, sqrt(1-T) 1], [-sqrt(1-T) 1, sqrt(T) 1]]. Requires 0 < T <= 1.
SymplecticMatrix beam_splitter(double transmissivity);

/// Two-mode squeezer [[cosh r 1, sinh r Z], [sinh r Z, cosh r 1]], Z = diag(1, -1).
SymplecticMatrix two_mode_squeeze(double r);

/// Single-mode squeezer diag(e^{-r}, e^{r}).
SymplecticMatrix single_mode_squeeze(double r);

/// First and second moments of a Gaussian state.
struct GaussianState {
  Eigen::MatrixXd covariance;
  Eigen::VectorXd displacement;

  int modes() const { return static_cast<int>(displacement.size() / 2); }

  /// Symmetric, consistent dimensions, and V + (i/2) Omega >= 0 to `tolerance`.
  bool is_physical(double tolerance = 1e-10) const;
};

GaussianState vacuum(int modes);
GaussianState coherent_state(double dx, double dp);
GaussianState squeezed_vacuum(double r);
/// Tensor product, modes of `a` first.
GaussianState tensor(const GaussianState& a, const GaussianState& b);
/// Two-mode squeezed coherent state: each mode displaced by D(d, d), then two_mode_squeeze(r).
GaussianState tmsc_state(double r, double d);

/// chi(Lambda) = exp[-1/2 Lambda^T (Omega V Omega^T) Lambda - i (Omega d)^T Lambda].
Complex gaussian_char(const GaussianState& state, const PhasePoint& lambda);

/// d -> S d, V -> S V S^T; equivalently chi(Lambda) -> chi(S^{-1} Lambda).
GaussianState transform_char(const GaussianState& state, const SymplecticMatrix& s);

/// Characteristic function of the Fock state |n>:
/// exp(-(tau^2 + sigma^2)/4) L_n((tau^2 + sigma^2)/2).
Complex char_fock(int n, const PhasePoint& lambda);

}  // namespace cvtele
