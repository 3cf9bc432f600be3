#include "cvtele/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "cvtele/errors.hpp"

namespace cvtele::oracle {

FockTensor::FockTensor(std::vector<int> dims) : dims_(std::move(dims)) {
  std::size_t total = 1;
  strides_.assign(dims_.size(), 1);
  for (int m = static_cast<int>(dims_.size()) - 1; m >= 0; --m) {
    if (dims_[m] < 1) throw DomainError("FockTensor: every mode needs at least one level");
    strides_[m] = total;
    total *= static_cast<std::size_t>(dims_[m]);
  }
  amps_.assign(total, Complex{});
}

std::size_t FockTensor::offset(const std::vector<int>& k) const {
  std::size_t flat = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) flat += strides_[m] * static_cast<std::size_t>(k[m]);
  return flat;
}

double FockTensor::norm2() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

namespace {

// Squared-norm mass of each level of one mode.
std::vector<double> marginal(const FockTensor& t, int mode) {
  std::vector<double> mass(t.dim(mode), 0.0);
  const auto& amps = t.amplitudes();
  std::size_t inner = 1;
  for (int m = mode + 1; m < t.modes(); ++m) inner *= t.dim(m);
  const std::size_t dim = t.dim(mode);
  for (std::size_t flat = 0; flat < amps.size(); ++flat) {
    mass[(flat / inner) % dim] += std::norm(amps[flat]);
  }
  return mass;
}

// Calls f(k) for every multi-index of `dims`, last index fastest.
template <class F>
void for_each_index(const std::vector<int>& dims, F&& f) {
  std::vector<int> k(dims.size(), 0);
  for (int d : dims) {
    if (d == 0) return;
  }
  for (;;) {
    f(k);
    int m = static_cast<int>(dims.size()) - 1;
    while (m >= 0 && ++k[m] == dims[m]) k[m--] = 0;
    if (m < 0) return;
  }
}

}  // namespace

double FockTensor::leakage(int mode) const {
  const auto mass = marginal(*this, mode);
  double top = 0.0;
  for (int lvl = std::max(0, dim(mode) - 2); lvl < dim(mode); ++lvl) top += mass[lvl];
  return top;
}

double FockTensor::leakage() const {
  double worst = 0.0;
  for (int m = 0; m < modes(); ++m) worst = std::max(worst, leakage(m));
  return worst;
}

FockTensor FockTensor::cropped(int mode, int dim) const {
  std::vector<int> out_dims = dims_;
  out_dims.at(mode) = std::min(dim, dims_.at(mode));
  FockTensor out(out_dims);
  for_each_index(out_dims, [&](const std::vector<int>& k) { out.at(k) = at(k); });
  return out;
}

FockTensor FockTensor::trimmed(double threshold) const {
  std::vector<int> out_dims = dims_;
  for (int m = 0; m < modes(); ++m) {
    const auto mass = marginal(*this, m);
    int keep = 1;
    for (int lvl = dims_[m] - 1; lvl >= 0; --lvl) {
      if (mass[lvl] > threshold) {
        keep = lvl + 1;
        break;
      }
    }
    out_dims[m] = keep;
  }
  if (out_dims == dims_) return *this;
  FockTensor out(out_dims);
  for_each_index(out_dims, [&](const std::vector<int>& k) { out.at(k) = at(k); });
  return out;
}

FockTensor fock_state(int n, int dim) {
  if (n < 0 || n >= dim) throw DomainError("fock_state: level outside the space");
  FockTensor t({dim});
  t.amplitudes()[n] = 1.0;
  return t;
}

FockTensor coherent_amplitudes(Complex alpha, int dim) {
  FockTensor t({dim});
  auto& a = t.amplitudes();
  a[0] = std::exp(-std::norm(alpha) / 2.0);
  for (int n = 1; n < dim; ++n) a[n] = a[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return t;
}

FockTensor tensor(const FockTensor& a, const FockTensor& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  FockTensor out(dims);
  auto& o = out.amplitudes();
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) o[i * y.size() + j] = x[i] * y[j];
  }
  return out;
}

void OracleConfig::validate() const {
  if (N < 8) throw DomainError("OracleConfig: N must be at least 8");
  if (M != 0 && M < 2) throw DomainError("OracleConfig: M must be 0 (automatic) or >= 2");
  if (!(tolerance > 0.0)) throw DomainError("OracleConfig: tolerance must be positive");
  if (quadrature_nodes < 1) throw DomainError("OracleConfig: quadrature_nodes must be positive");
}

FockTensor build_tmsc(double r, double d, int N, double tolerance) {
  if (N < 8) throw DomainError("build_tmsc: N must be at least 8");
  const int W = N + kSqueezeMargin;
  const Complex alpha = d * Complex(1.0, 1.0) / std::sqrt(2.0);
  const FockTensor coh = coherent_amplitudes(alpha, W);
  FockTensor psi = tensor(coh, coh);

  if (r != 0.0) {
    FockTensor out({W, W});
    // Blocks of fixed n1 - n2 = k hold |n + k, n> (or |n, n + |k|>).
    for (int k = -(W - 1); k <= W - 1; ++k) {
      const int ak = std::abs(k);
      const int size = W - ak;
      Eigen::MatrixXd g = Eigen::MatrixXd::Zero(size, size);
      for (int n = 0; n + 1 < size; ++n) {
        const double c = std::sqrt((n + ak + 1.0) * (n + 1.0));
        g(n + 1, n) = c;
        g(n, n + 1) = -c;
      }
      const Eigen::MatrixXd u = (r * g).exp();
      auto index = [&](int n) {
        return k >= 0 ? std::vector<int>{n + ak, n} : std::vector<int>{n, n + ak};
      };
      Eigen::VectorXcd v(size);
      for (int n = 0; n < size; ++n) v(n) = psi.at(index(n));
      const Eigen::VectorXcd w = u.cast<Complex>() * v;
      for (int n = 0; n < size; ++n) out.at(index(n)) = w(n);
    }
    psi = std::move(out);
  }
  psi = psi.cropped(0, N).cropped(1, N);
  const double leak = psi.leakage();
  if (leak > tolerance) {
    throw TruncationError("build_tmsc: leakage " + std::to_string(leak) + " at N = " +
                          std::to_string(N) + " exceeds " + std::to_string(tolerance));
  }
  return psi;
}

FockTensor apply_beamsplitter(const FockTensor& state, std::pair<int, int> modes, double T) {
  const auto [i, j] = modes;
  if (i == j || i < 0 || j < 0 || i >= state.modes() || j >= state.modes()) {
    throw DomainError("apply_beamsplitter: invalid mode pair");
  }
  if (!(T > 0.0 && T <= 1.0)) throw DomainError("apply_beamsplitter: T outside (0, 1]");
  const double theta = std::acos(std::sqrt(T));
  const int di = state.dim(i), dj = state.dim(j);
  const int grown = di + dj - 1;

  // Block of total photon number m on basis b = photons in mode j, m - b in mode i.
  std::vector<Eigen::MatrixXcd> blocks(grown);
  for (int m = 0; m < grown; ++m) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m + 1, m + 1);
    for (int b = 0; b <= m; ++b) {
      if (b >= 1) g(b - 1, b) += std::sqrt((m - b + 1.0) * b);
      if (b + 1 <= m) g(b + 1, b) -= std::sqrt((m - b) * (b + 1.0));
    }
    blocks[m] = (theta * g).exp().cast<Complex>();
  }

  std::vector<int> out_dims = state.dims();
  out_dims[i] = grown;
  out_dims[j] = grown;
  FockTensor out(out_dims);

  std::vector<int> rest_dims = state.dims();
  rest_dims[i] = 1;
  rest_dims[j] = 1;
  for_each_index(rest_dims, [&](const std::vector<int>& rest) {
    std::vector<int> k = rest;
    for (int m = 0; m < grown; ++m) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m + 1);
      bool any = false;
      for (int b = std::max(0, m - di + 1); b <= std::min(m, dj - 1); ++b) {
        k[i] = m - b;
        k[j] = b;
        v(b) = state.at(k);
        any = any || v(b) != Complex{};
      }
      if (!any) continue;
      const Eigen::VectorXcd w = blocks[m] * v;
      for (int b = 0; b <= m; ++b) {
        k[i] = m - b;
        k[j] = b;
        out.at(k) = w(b);
      }
    }
  });
  return out;
}

Conditioned condition_on_detection(const FockTensor& state, int mode, DetectorOutcome outcome) {
  if (mode < 0 || mode >= state.modes() || state.modes() < 2) {
    throw DomainError("condition_on_detection: invalid mode");
  }
  const int level = outcome.type == DetectorOutcome::Type::vacuum ? 0 : outcome.n;
  if (level < 0) throw DomainError("condition_on_detection: negative photon number");

  std::vector<int> out_dims = state.dims();
  out_dims.erase(out_dims.begin() + mode);
  Conditioned result{FockTensor(out_dims), 0.0};
  if (level >= state.dim(mode)) return result;

  for_each_index(out_dims, [&](const std::vector<int>& k) {
    std::vector<int> full = k;
    full.insert(full.begin() + mode, level);
    result.state.at(k) = state.at(full);
  });
  result.probability = result.state.norm2();
  return result;
}

Eigen::MatrixXcd displacement_matrix(int dim, double tau, double sigma) {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(dim, dim);
  const Complex xi = Complex(tau, sigma) / std::sqrt(2.0);
  const double x = std::norm(xi);
  const double mag = std::abs(xi);
  const double phi = std::arg(xi);
  for (int k = 0; k < dim; ++k) {
    // |xi|^k e^{-x/2} / sqrt(k!) and the Laguerre factor
    // f_n = sqrt(k! n! / (n + k)!) L_n^{(k)}(x) by its three-term recurrence.
    double pref;
    if (mag == 0.0) {
      pref = k == 0 ? 1.0 : 0.0;
    } else {
      pref = std::exp(k * std::log(mag) - 0.5 * std::lgamma(k + 1.0) - 0.5 * x);
    }
    const Complex below = pref * std::polar(1.0, k * phi);
    const Complex above = pref * std::polar(1.0, k * (kPi - phi));
    double f_prev = 0.0, f = 1.0;
    for (int n = 0; n + k < dim; ++n) {
      D(n + k, n) = below * f;
      if (k > 0) D(n, n + k) = above * f;
      const double next =
          ((2.0 * n + 1.0 + k - x) * f - std::sqrt(n * (n + static_cast<double>(k))) * f_prev) /
          std::sqrt((n + 1.0) * (n + k + 1.0));
      f_prev = f;
      f = next;
    }
  }
  return D;
}

Complex oracle_char(const FockTensor& state, const PhasePoint& lambda) {
  if (lambda.modes() != state.modes()) {
    throw DomainError("oracle_char: phase point and state have different mode counts");
  }
  const double norm = state.norm2();
  if (!(norm > 0.0)) throw UnpreparableError("oracle_char: zero state");
  const auto& amps = state.amplitudes();
  if (state.modes() == 1) {
    const Eigen::Map<const Eigen::VectorXcd> psi(amps.data(), state.dim(0));
    const Eigen::MatrixXcd D = displacement_matrix(state.dim(0), lambda.tau(0), lambda.sigma(0));
    return psi.dot(D * psi) / norm;
  }
  if (state.modes() != 2) throw DomainError("oracle_char: supports one or two modes");
  // Row-major storage of psi(a, b) is the column-major storage of its transpose.
  const Eigen::Map<const Eigen::MatrixXcd> psi_t(amps.data(), state.dim(1), state.dim(0));
  const Eigen::MatrixXcd D1 = displacement_matrix(state.dim(0), lambda.tau(0), lambda.sigma(0));
  const Eigen::MatrixXcd D2 = displacement_matrix(state.dim(1), lambda.tau(1), lambda.sigma(1));
  // (D1 psi D2^T)^T = D2 psi^T D1^T.
  const Eigen::MatrixXcd image = D2 * psi_t * D1.transpose();
  return (psi_t.conjugate().cwiseProduct(image)).sum() / norm;
}

namespace {

int ancilla_dim(const OracleConfig& cfg, int n) { return cfg.M > 0 ? std::max(cfg.M, n + 1) : n + 6; }

Conditioned mix_and_detect(const FockTensor& psi, bool front, double T, int ancilla_in,
                           DetectorOutcome outcome, int dim) {
  const FockTensor anc = fock_state(ancilla_in, dim);
  // front: (F1, A1, A2) with the beam splitter on (A1, F1); back: (A1, A2, F2) on (A2, F2).
  const FockTensor joint = front ? tensor(anc, psi) : tensor(psi, anc);
  const std::pair<int, int> pair = front ? std::pair{1, 0} : std::pair{1, 2};
  const FockTensor mixed = T < 1.0 ? apply_beamsplitter(joint, pair, T) : joint;
  Conditioned c = condition_on_detection(mixed, front ? 0 : 2, outcome);
  c.state = c.state.trimmed(0.0);
  return c;
}

}  // namespace

PreparedResource prepare_resource(const ResourceSpec& spec, int N, const OracleConfig& cfg) {
  spec.validate();
  cfg.validate();
  if (cfg.M != 0 && cfg.M < std::max(spec.n1, spec.n2) + 2) {
    throw DomainError("OracleConfig: M must be at least n + 2");
  }
  PreparedResource out;
  out.N = N;
  FockTensor psi = build_tmsc(spec.r, spec.d, N, cfg.tolerance);
  out.leakage = psi.leakage();
  if (spec.kind != ResourceKind::tmsc) {
    const bool ps = spec.kind == ResourceKind::ps;
    const auto detect = [&](int n) {
      return ps ? DetectorOutcome::fock(n) : DetectorOutcome::vacuum();
    };
    Conditioned first = mix_and_detect(psi, true, spec.T1, ps ? 0 : spec.n1, detect(spec.n1),
                                       ancilla_dim(cfg, spec.n1));
    Conditioned second = mix_and_detect(first.state, false, spec.T2, ps ? 0 : spec.n2,
                                        detect(spec.n2), ancilla_dim(cfg, spec.n2));
    psi = std::move(second.state);
  }
  out.probability = psi.norm2();
  out.state = std::move(psi);
  return out;
}

namespace {

std::vector<int> ladder(const OracleConfig& cfg) {
  std::vector<int> cutoffs{cfg.N};
  for (int n : cfg.escalation) {
    if (n > cutoffs.back()) cutoffs.push_back(n);
  }
  return cutoffs;
}

template <class Eval>
OracleValue converge(const OracleConfig& cfg, bool relative, Eval&& eval, const char* what) {
  cfg.validate();
  std::string last = "no cutoff attempted";
  for (int N : ladder(cfg)) {
    try {
      const double low = eval(N);
      const double high = eval(N + 8);
      double change = std::abs(high - low);
      if (relative) change /= std::max(std::abs(high), 1e-300);
      if (change <= cfg.tolerance) return {high, N + 8, change};
      last = "change " + std::to_string(change) + " between N = " + std::to_string(N) +
             " and N + 8";
    } catch (const TruncationError& e) {
      last = e.what();
    }
  }
  throw ConvergenceError(std::string(what) + " not converged in the cutoff: " + last);
}

}  // namespace

OracleValue oracle_success_probability(const ResourceSpec& spec, const OracleConfig& cfg) {
  return converge(
      cfg, true, [&](int N) { return prepare_resource(spec, N, cfg).probability; },
      "oracle success probability");
}

OracleValue oracle_teleport_fidelity(const ResourceSpec& spec, const InputState& input,
                                     const OracleConfig& cfg) {
  const GaussianState in = input_gaussian(input);
  QuadratureOptions q;
  q.nodes = cfg.quadrature_nodes;
  const CharFunction chi_in = [&](const PhasePoint& l) { return gaussian_char(in, l); };
  return converge(
      cfg, false,
      [&](int N) {
        const PreparedResource res = prepare_resource(spec, N, cfg);
        const CharFunction chi_res = [&](const PhasePoint& l) {
          return oracle_char(res.state, l);
        };
        const CharFunction chi_out = [&](const PhasePoint& l) {
          return output_char(chi_res, chi_in, l);
        };
        return fidelity_quadrature(chi_in, chi_out, q);
      },
      "oracle teleportation fidelity");
}

}  // namespace cvtele::oracle
