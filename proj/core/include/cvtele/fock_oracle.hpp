#pragma once

#include <utility>
#include <vector>

#include "cvtele/gaussian.hpp"
#include "cvtele/quadrature.hpp"
#include "cvtele/resource.hpp"
#include "cvtele/teleportation.hpp"
#include "cvtele/types.hpp"

// Brute-force Fock-space model of the preparation circuits. It knows nothing
// about the closed-form coefficients and exists to check them.

namespace cvtele::oracle {

/// Pure state amplitudes on a truncated Fock space; index (k1, ..., km) is
/// stored row-major with the last mode fastest.
class FockTensor {
 public:
  FockTensor() = default;
  explicit FockTensor(std::vector<int> dims);

  int modes() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int mode) const { return dims_.at(mode); }
  std::size_t size() const { return amps_.size(); }

  Complex& at(const std::vector<int>& k) { return amps_[offset(k)]; }
  Complex at(const std::vector<int>& k) const { return amps_[offset(k)]; }
  std::vector<Complex>& amplitudes() { return amps_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }

  double norm2() const;
  /// Largest over modes of the squared-norm mass in that mode's top two levels.
  double leakage() const;
  /// Mass in the top two levels of one mode.
  double leakage(int mode) const;

  /// Drops trailing levels of every mode whose total mass is <= threshold.
  FockTensor trimmed(double threshold = 0.0) const;
  /// Keeps the first `dim` levels of `mode`.
  FockTensor cropped(int mode, int dim) const;

  std::size_t offset(const std::vector<int>& k) const;

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::vector<Complex> amps_;
};

/// Fock state |n> in a space of `dim` levels.
FockTensor fock_state(int n, int dim);
/// Glauber coherent state with amplitude alpha, truncated to `dim` levels.
FockTensor coherent_amplitudes(Complex alpha, int dim);
/// a (x) b, modes of a first.
FockTensor tensor(const FockTensor& a, const FockTensor& b);

struct OracleConfig {
  int N = 40;
  /// Ancilla cutoff; 0 means n + 6 for an ancilla prepared in |n>.
  int M = 0;
  double tolerance = 1e-8;
  /// Gauss-Legendre nodes per axis for the fidelity integral.
  int quadrature_nodes = 64;
  /// Cutoffs tried in turn when the configured N is not converged.
  std::vector<int> escalation = {64, 96, 128};

  /// Throws DomainError unless N >= 8 and M is 0 or >= 2.
  void validate() const;
};

/// Extra levels used while squeezing before cropping to N.
inline constexpr int kSqueezeMargin = 16;

/// |Psi> = S(r) (D(d,d) (x) D(d,d)) |00>, squeezer exp[r(a1+ a2+ - a1 a2)]
/// exponentiated exactly on each block of fixed n1 - n2. Throws DomainError
/// for N < 8 and TruncationError when the leakage exceeds `tolerance`.
FockTensor build_tmsc(double r, double d, int N, double tolerance = 1e-8);

/// exp[theta (a_i+ a_j - a_i a_j+)] with theta = arccos sqrt(T), applied
/// blockwise in the total photon number of (i, j). Both modes grow to
/// dim(i) + dim(j) - 1 levels, so nothing is truncated.
FockTensor apply_beamsplitter(const FockTensor& state, std::pair<int, int> modes, double T);

/// Photon-number-resolving click of n photons, or the no-click outcome of an on-off detector.
struct DetectorOutcome {
  enum class Type { fock, vacuum } type = Type::fock;
  int n = 0;

  static DetectorOutcome fock(int n) { return {Type::fock, n}; }
  static DetectorOutcome vacuum() { return {Type::vacuum, 0}; }
};

struct Conditioned {
  FockTensor state;
  double probability = 0.0;
};

/// Projects `mode` on the outcome and removes it. The returned state is
/// unnormalized; its squared norm is `probability`.
Conditioned condition_on_detection(const FockTensor& state, int mode, DetectorOutcome outcome);

/// <m| D(xi) |n> for m, n < dim with xi = (tau + i sigma)/sqrt(2).
Eigen::MatrixXcd displacement_matrix(int dim, double tau, double sigma);

/// Tr[rho exp(-i Lambda^T Omega xi)] for rho = |psi><psi| / <psi|psi>, one or
/// two modes. Exact for the truncated state at every Lambda.
Complex oracle_char(const FockTensor& state, const PhasePoint& lambda);

struct PreparedResource {
  /// Unnormalized two-mode state on (A1', A2').
  FockTensor state;
  double probability = 0.0;
  double leakage = 0.0;
  int N = 0;
};

/// Runs the preparation circuit at signal cutoff N with ancillae in the order
/// (F1, A1, A2, F2): F1 is attached in front of A1, F2 behind A2.
PreparedResource prepare_resource(const ResourceSpec& spec, int N, const OracleConfig& cfg = {});

struct OracleValue {
  double value = 0.0;
  /// Cutoff whose result was reported.
  int N = 0;
  /// |value(N) - value(N - 8)|, relative for probabilities.
  double cutoff_change = 0.0;
};

/// Success probability converged in the cutoff: N and N + 8 agree to
/// cfg.tolerance (relative). Escalates through cfg.escalation; throws
/// ConvergenceError if no cutoff converges.
OracleValue oracle_success_probability(const ResourceSpec& spec, const OracleConfig& cfg = {});

/// Quadrature fidelity with the oracle resource, converged in the cutoff to
/// cfg.tolerance (absolute).
OracleValue oracle_teleport_fidelity(const ResourceSpec& spec, const InputState& input,
                                     const OracleConfig& cfg = {});

}  // namespace cvtele::oracle
