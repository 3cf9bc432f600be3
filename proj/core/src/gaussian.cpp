#include "cvtele/gaussian.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "cvtele/errors.hpp"

namespace cvtele {

namespace {

void require_dims(bool ok, const char* what) {
  if (!ok) throw DomainError(std::string(what) + ": dimension mismatch");
}

}  // namespace

PhasePoint::PhasePoint(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() % 2 != 0) throw DomainError("PhasePoint: odd number of components");
}

PhasePoint::PhasePoint(std::initializer_list<double> values)
    : PhasePoint(Eigen::Map<const Eigen::VectorXd>(values.begin(),
                                                   static_cast<Eigen::Index>(values.size()))) {}

PhasePoint PhasePoint::zero(int modes) { return PhasePoint(Eigen::VectorXd::Zero(2 * modes)); }

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

SymplecticMatrix::SymplecticMatrix(Eigen::MatrixXd matrix, double tolerance)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() % 2 != 0 || matrix_.rows() == 0) {
    throw DomainError("SymplecticMatrix: need a square even-dimensional matrix");
  }
  if (symplectic_defect() > tolerance) {
    throw DomainError("SymplecticMatrix: S Omega S^T != Omega");
  }
}

SymplecticMatrix SymplecticMatrix::identity(int modes) {
  return SymplecticMatrix(Eigen::MatrixXd::Identity(2 * modes, 2 * modes), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const Eigen::MatrixXd omega = symplectic_form(modes());
  return SymplecticMatrix(omega * matrix_.transpose() * omega.transpose(), Unchecked{});
}

double SymplecticMatrix::symplectic_defect() const {
  const Eigen::MatrixXd omega = symplectic_form(modes());
  return (matrix_ * omega * matrix_.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticMatrix SymplecticMatrix::embed(const SymplecticMatrix& two_mode, int first,
                                         int second, int modes) {
  require_dims(two_mode.modes() == 2 && first != second && first >= 0 && second >= 0 &&
                   first < modes && second < modes,
               "SymplecticMatrix::embed");
  Eigen::MatrixXd full = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  const int idx[4] = {2 * first, 2 * first + 1, 2 * second, 2 * second + 1};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) full(idx[i], idx[j]) = two_mode.matrix_(i, j);
  }
  return SymplecticMatrix(std::move(full), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::embed(const SymplecticMatrix& one_mode, int mode,
                                         int modes) {
  require_dims(one_mode.modes() == 1 && mode >= 0 && mode < modes, "SymplecticMatrix::embed");
  Eigen::MatrixXd full = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  full.block(2 * mode, 2 * mode, 2, 2) = one_mode.matrix_;
  return SymplecticMatrix(std::move(full), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::direct_sum(const SymplecticMatrix& a,
                                              const SymplecticMatrix& b) {
  const auto na = a.matrix_.rows();
  const auto nb = b.matrix_.rows();
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(na + nb, na + nb);
  full.topLeftCorner(na, na) = a.matrix_;
  full.bottomRightCorner(nb, nb) = b.matrix_;
  return SymplecticMatrix(std::move(full), Unchecked{});
}

SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
  require_dims(a.modes() == b.modes(), "SymplecticMatrix product");
  return SymplecticMatrix(a.matrix_ * b.matrix_, SymplecticMatrix::Unchecked{});
}

SymplecticMatrix beam_splitter(double transmissivity) {
  if (!(transmissivity > 0.0 && transmissivity <= 1.0)) {
    throw DomainError("beam_splitter: transmissivity must lie in (0, 1]");
  }
  const double t = std::sqrt(transmissivity);
  const double r = std::sqrt(1.0 - transmissivity);
  Eigen::Matrix4d b;
  b << t, 0, r, 0,
       0, t, 0, r,
       -r, 0, t, 0,
       0, -r, 0, t;
  return SymplecticMatrix(b);
}

SymplecticMatrix two_mode_squeeze(double r) {
  if (!std::isfinite(r)) throw DomainError("two_mode_squeeze: non-finite squeezing");
  const double c = std::cosh(r);
  const double s = std::sinh(r);
  Eigen::Matrix4d m;
  m << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  // Large r loses relative precision in S Omega S^T; scale the tolerance.
  return SymplecticMatrix(m, 1e-12 * std::max(1.0, c * c));
}

SymplecticMatrix single_mode_squeeze(double r) {
  if (!std::isfinite(r)) throw DomainError("single_mode_squeeze: non-finite squeezing");
  Eigen::Matrix2d m;
  m << std::exp(-r), 0, 0, std::exp(r);
  return SymplecticMatrix(m, 1e-12 * std::max(1.0, std::exp(2 * std::abs(r))));
}

bool GaussianState::is_physical(double tolerance) const {
  const auto n = displacement.size();
  if (n % 2 != 0 || covariance.rows() != n || covariance.cols() != n) return false;
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > tolerance) return false;
  const Eigen::MatrixXcd h =
      covariance.cast<Complex>() + Complex(0.0, 0.5) * symplectic_form(modes()).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tolerance;
}

GaussianState vacuum(int modes) {
  return {0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes),
          Eigen::VectorXd::Zero(2 * modes)};
}

GaussianState coherent_state(double dx, double dp) {
  GaussianState state = vacuum(1);
  state.displacement << dx, dp;
  return state;
}

GaussianState squeezed_vacuum(double r) {
  return transform_char(vacuum(1), single_mode_squeeze(r));
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const auto na = a.displacement.size();
  const auto nb = b.displacement.size();
  GaussianState out;
  out.covariance = Eigen::MatrixXd::Zero(na + nb, na + nb);
  out.covariance.topLeftCorner(na, na) = a.covariance;
  out.covariance.bottomRightCorner(nb, nb) = b.covariance;
  out.displacement.resize(na + nb);
  out.displacement << a.displacement, b.displacement;
  return out;
}

GaussianState tmsc_state(double r, double d) {
  return transform_char(tensor(coherent_state(d, d), coherent_state(d, d)), two_mode_squeeze(r));
}

Complex gaussian_char(const GaussianState& state, const PhasePoint& lambda) {
  require_dims(state.displacement.size() == lambda.values().size() &&
                   state.covariance.rows() == lambda.values().size(),
               "gaussian_char");
  const Eigen::MatrixXd omega = symplectic_form(state.modes());
  const Eigen::VectorXd& l = lambda.values();
  const double quad = l.dot(omega * state.covariance * omega.transpose() * l);
  const double lin = (omega * state.displacement).dot(l);
  return std::exp(Complex(-0.5 * quad, -lin));
}

GaussianState transform_char(const GaussianState& state, const SymplecticMatrix& s) {
  require_dims(state.modes() == s.modes(), "transform_char");
  const Eigen::MatrixXd& m = s.matrix();
  return {m * state.covariance * m.transpose(), m * state.displacement};
}

Complex char_fock(int n, const PhasePoint& lambda) {
  if (n < 0) throw DomainError("char_fock: negative photon number");
  require_dims(lambda.modes() == 1, "char_fock");
  const double rho2 = lambda.tau(0) * lambda.tau(0) + lambda.sigma(0) * lambda.sigma(0);
  return std::exp(-rho2 / 4.0) * std::laguerre(static_cast<unsigned>(n), rho2 / 2.0);
}

}  // namespace cvtele
