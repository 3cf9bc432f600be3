#pragma once

#include <array>
#include <string>
#include <string_view>

#include "cvtele/gaussian.hpp"
#include "cvtele/types.hpp"

namespace cvtele {

enum class ResourceKind { ps, pa, tmsc };

std::string_view to_string(ResourceKind kind);
/// Accepts "ps", "pa", "tmsc" (case-insensitive). Throws DomainError otherwise.
ResourceKind parse_resource_kind(std::string_view text);

/// Preparation of a photon-subtracted (ps) or photon-added (pa) two-mode
/// squeezed coherent state, or the bare TMSC resource.
///
/// Mode A1 is mixed with its ancilla on a beam splitter of transmissivity T1,
/// mode A2 with T2. For ps the ancillae start in vacuum and photon-number
/// resolving detectors post-select n1 and n2 photons. For pa the ancillae
/// start in |n1>, |n2> and on-off detectors post-select vacuum. Asymmetric
/// operation on A2 is n1 = 0 with T1 = 1. A tmsc spec ignores T1, T2 and
/// evaluates at unit transmissivity.
struct ResourceSpec {
  ResourceKind kind = ResourceKind::tmsc;
  int n1 = 0;
  int n2 = 0;
  double T1 = 1.0;
  double T2 = 1.0;
  double r = 0.0;
  double d = 0.0;

  static ResourceSpec tmsc(double r, double d);
  static ResourceSpec symmetric(ResourceKind kind, int n, double T, double r, double d);
  static ResourceSpec asymmetric(ResourceKind kind, int n, double T, double r, double d);

  /// Throws DomainError on: negative photon numbers, T outside (0, 1],
  /// negative or non-finite r, non-finite d, tmsc with nonzero photon numbers.
  void validate() const;

  double effective_T1() const { return kind == ResourceKind::tmsc ? 1.0 : T1; }
  double effective_T2() const { return kind == ResourceKind::tmsc ? 1.0 : T2; }

  /// Short label such as "Sym 1-PS", "Asym 3-PA", "TMSC", or "PS(1,2)".
  std::string label() const;
};

/// Coefficients k1..k7 of the generating exponential
///   G(u) = exp[-k1 u1 v1 + k2 u1 + k3 v1 - k4 u2 v2 + k5 u2 + k6 v2 + k7 (u1 u2 + v1 v2)]
/// in u = (u1, v1, u2, v2). Stored zero-based: k[0] is k1.
struct GeneratingCoefficients {
  std::array<Complex, 7> k{};

  Complex operator()(int one_based) const { return k.at(one_based - 1); }

  /// Symmetric M with u^T M u equal to the quadratic part of the exponent.
  Matrix4c quadratic() const;
  /// (k2, k3, k5, k6).
  Vector4c linear() const;
};

/// Closed-form ingredients of the unnormalized characteristic function
///   chi~(Lambda) = a0 exp(Lambda^T M1 Lambda + Lambda^T M2) F1 G(u)
/// at one phase-space point. `family` holds the Lambda-dependent
/// coefficients; `origin` holds (k2, k3, k5, k6) at Lambda = 0, which is what
/// the success probability consumes.
struct CoefficientSet {
  Complex a0;
  GeneratingCoefficients family;
  std::array<Complex, 4> origin{};
  Matrix4d M1 = Matrix4d::Zero();
  Vector4c M2 = Vector4c::Zero();
};

/// Coefficients for photon subtraction. Requires kind ps (or tmsc).
CoefficientSet ps_coefficients(const ResourceSpec& spec, const PhasePoint& lambda);
/// Coefficients for photon addition. Requires kind pa.
CoefficientSet pa_coefficients(const ResourceSpec& spec, const PhasePoint& lambda);
/// Dispatches on spec.kind.
CoefficientSet resource_coefficients(const ResourceSpec& spec, const PhasePoint& lambda);

enum class EvalPath { automatic, hermite, jet, quadrature };

std::string_view to_string(EvalPath path);

/// Threshold on |k1|, |k4| below which the Hermite form is abandoned for the jet.
inline constexpr double kDegenerateCoefficient = 1e-8;

struct Evaluation {
  Complex value;
  EvalPath path = EvalPath::automatic;
};

/// F1 G(u) for the given coefficients: the Hermite double sum when
/// `request` is hermite (or automatic and k1, k4 are not degenerate),
/// otherwise the jet expansion. `branch1` and `branch4` (+1 or -1) select
/// the sign of sqrt(k1) and sqrt(k4) in the Hermite form.
Evaluation generating_value(const GeneratingCoefficients& coeffs, int n1, int n2,
                            EvalPath request = EvalPath::automatic, int branch1 = +1,
                            int branch4 = +1);

/// Unnormalized characteristic function of the post-selected state, on the
/// two modes (A1', A2').
Complex unnormalized_char(const ResourceSpec& spec, const PhasePoint& lambda);
Evaluation evaluate_unnormalized_char(const ResourceSpec& spec, const PhasePoint& lambda,
                                      EvalPath request = EvalPath::automatic);

struct ProbabilityReport {
  double value = 0.0;
  /// |Im| / |Re| of the complex closed-form value.
  double imaginary_residue = 0.0;
  EvalPath path = EvalPath::automatic;
};

/// Tolerance on imaginary parts of quantities that must be real.
inline constexpr double kImaginaryTolerance = 1e-9;

/// Probability that both detectors fire as post-selected. Throws
/// ConsistencyError if the imaginary residue exceeds 1e-9 or the value
/// leaves [0, 1 + 1e-12].
double success_probability(const ResourceSpec& spec);
ProbabilityReport evaluate_success_probability(const ResourceSpec& spec,
                                               EvalPath request = EvalPath::automatic);

/// a0 exp(Lambda^T M1 Lambda + Lambda^T M2) F1 G(u) from a (possibly modified) set.
Complex unnormalized_from(const CoefficientSet& set, const PhasePoint& lambda, int n1, int n2,
                          EvalPath request = EvalPath::automatic);

/// Probability from a (possibly modified) coefficient set, without range checks.
Complex probability_from(const CoefficientSet& set, int n1, int n2,
                         EvalPath request = EvalPath::automatic);

/// Smallest success probability for which a state is considered preparable.
inline constexpr double kMinProbability = 1e-300;

/// unnormalized_char / success_probability. Throws UnpreparableError if the
/// probability is not above 1e-300.
Complex normalized_char(const ResourceSpec& spec, const PhasePoint& lambda);

/// Normalized characteristic function with the success probability computed once.
class NormalizedResource {
 public:
  explicit NormalizedResource(const ResourceSpec& spec);

  const ResourceSpec& spec() const { return spec_; }
  double success_probability() const { return probability_; }
  Complex operator()(const PhasePoint& lambda) const;

 private:
  ResourceSpec spec_;
  double probability_;
};

}  // namespace cvtele
