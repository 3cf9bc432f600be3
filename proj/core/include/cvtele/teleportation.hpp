#pragma once

#include <functional>
#include <string>
#include <variant>

#include "cvtele/gaussian.hpp"
#include "cvtele/quadrature.hpp"
#include "cvtele/resource.hpp"
#include "cvtele/types.hpp"

namespace cvtele {

struct CoherentInput {
  double dx = 0.0;
  double dp = 0.0;
};

struct SqueezedVacuumInput {
  double epsilon = 0.0;
};

using InputState = std::variant<CoherentInput, SqueezedVacuumInput>;

/// Throws DomainError for non-finite displacements or negative/non-finite epsilon.
void validate(const InputState& input);
GaussianState input_gaussian(const InputState& input);
Complex input_char(const InputState& input, const PhasePoint& lambda);
std::string describe(const InputState& input);

struct FidelityReport {
  double fidelity = 0.0;
  double success_probability = 0.0;
  double imaginary_residue = 0.0;
  EvalPath path = EvalPath::automatic;
  /// Amount removed when a value within 1e-9 of the unit interval was clamped into it.
  double clamp_excess = 0.0;
};

/// Largest excursion outside [0, 1] that is treated as roundoff.
inline constexpr double kFidelityClampTolerance = 1e-9;

/// (1 + lambda)/2 exp[d^2 (lambda - 1)], lambda = tanh r.
double fidelity_tmsc_coherent(double r, double d);
/// sqrt[(1 + tanh(r+eps))/2 (1 + tanh(r-eps))/2] exp[d^2 (tanh(r+eps) - 1)].
double fidelity_tmsc_sqv(double r, double d, double epsilon);

/// F P = e0 F1 G(u) for a coherent input; the e-family for ps/tmsc, the
/// f-family for pa.
struct CoherentFidelityCoefficients {
  Complex e0;
  GeneratingCoefficients family;
};
CoherentFidelityCoefficients coherent_fidelity_coefficients(const ResourceSpec& spec);

/// F P = F1 exp(u^T quadratic u + u^T linear + m0) / denominator for a
/// squeezed-vacuum input.
struct SqvFidelityForm {
  Matrix4c quadratic = Matrix4c::Zero();
  Vector4c linear = Vector4c::Zero();
  Complex m0;
  double denominator = 1.0;
};
SqvFidelityForm sqv_fidelity_form(const ResourceSpec& spec, double epsilon);

/// Closed-form fidelity for a coherent input of any displacement. Throws
/// UnpreparableError or ConsistencyError.
FidelityReport fidelity_coherent(const ResourceSpec& spec, EvalPath request = EvalPath::automatic);
/// Closed-form fidelity for a squeezed-vacuum input (always on the jet path).
FidelityReport fidelity_sqv(const ResourceSpec& spec, double epsilon);
/// Dispatches on the input type.
FidelityReport fidelity(const ResourceSpec& spec, const InputState& input);

using CharFunction = std::function<Complex(const PhasePoint&)>;

/// chi_out(tau, sigma) = chi_in(tau, sigma) chi_res(tau, -sigma, tau, sigma).
Complex output_char(const CharFunction& resource_char, const CharFunction& input_char,
                    const PhasePoint& lambda);

/// (1/2pi) Int d^2 Lambda chi_in(Lambda) chi_out(-Lambda), numerically.
/// `imaginary_part` receives the imaginary part of the integral if given.
double fidelity_quadrature(const CharFunction& input_char, const CharFunction& output_char,
                           const QuadratureOptions& options = {},
                           double* imaginary_part = nullptr);

/// Fidelity with the analytic normalized resource characteristic function
/// and numerical integration; an independent check on the closed forms.
FidelityReport fidelity_by_quadrature(const ResourceSpec& spec, const InputState& input,
                                      const QuadratureOptions& options = {});

/// Applies the clamp policy to a raw fidelity. Throws ConsistencyError
/// outside [-1e-9, 1 + 1e-9].
void settle_fidelity(FidelityReport& report, double raw, const std::string& what);

}  // namespace cvtele
