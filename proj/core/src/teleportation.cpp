#include "cvtele/teleportation.hpp"

#include <cmath>
#include <sstream>

#include "cvtele/errors.hpp"
#include "cvtele/jet.hpp"

namespace cvtele {

void validate(const InputState& input) {
  if (const auto* c = std::get_if<CoherentInput>(&input)) {
    if (!std::isfinite(c->dx) || !std::isfinite(c->dp)) {
      throw DomainError("coherent input displacement must be finite");
    }
  } else {
    const double eps = std::get<SqueezedVacuumInput>(input).epsilon;
    if (!std::isfinite(eps) || eps < 0.0) {
      throw DomainError("squeezed-vacuum input needs finite epsilon >= 0");
    }
  }
}

GaussianState input_gaussian(const InputState& input) {
  validate(input);
  if (const auto* c = std::get_if<CoherentInput>(&input)) return coherent_state(c->dx, c->dp);
  return squeezed_vacuum(std::get<SqueezedVacuumInput>(input).epsilon);
}

Complex input_char(const InputState& input, const PhasePoint& lambda) {
  return gaussian_char(input_gaussian(input), lambda);
}

std::string describe(const InputState& input) {
  std::ostringstream out;
  if (const auto* c = std::get_if<CoherentInput>(&input)) {
    out << "coherent(dx=" << c->dx << ", dp=" << c->dp << ")";
  } else {
    out << "squeezed vacuum(epsilon=" << std::get<SqueezedVacuumInput>(input).epsilon << ")";
  }
  return out.str();
}

double fidelity_tmsc_coherent(double r, double d) {
  if (!(r >= 0.0)) throw DomainError("fidelity_tmsc_coherent: r must be >= 0");
  const double lambda = std::tanh(r);
  return (1.0 + lambda) / 2.0 * std::exp(d * d * (lambda - 1.0));
}

double fidelity_tmsc_sqv(double r, double d, double epsilon) {
  if (!(r >= 0.0)) throw DomainError("fidelity_tmsc_sqv: r must be >= 0");
  const double plus = std::tanh(r + epsilon);
  const double minus = std::tanh(r - epsilon);
  return std::sqrt((1.0 + plus) / 2.0 * (1.0 + minus) / 2.0) * std::exp(d * d * (plus - 1.0));
}

namespace {

struct Symbols {
  double t1, t2, r1, r2, al, be, b0, c0, d0, d;
};

Symbols symbols(const ResourceSpec& spec) {
  const double T1 = spec.effective_T1();
  const double T2 = spec.effective_T2();
  Symbols s{};
  s.t1 = std::sqrt(T1);
  s.t2 = std::sqrt(T2);
  s.r1 = std::sqrt(1.0 - T1);
  s.r2 = std::sqrt(1.0 - T2);
  s.al = std::sinh(spec.r);
  s.be = std::cosh(spec.r);
  s.b0 = 1.0 + s.al * s.al * (1.0 - T1 * T2);
  s.c0 = 1.0 + s.al * s.al * (1.0 + T1 * T2);
  const double root = s.be - s.al * s.t1 * s.t2;
  s.d0 = root * root;
  s.d = spec.d;
  return s;
}

// Symmetric 4x4 with the block pattern [[x1,x2,x3,x4],[x2,x1,x4,x3],[x3,x4,x5,x6],[x4,x3,x6,x5]].
Matrix4c patterned(Complex x1, Complex x2, Complex x3, Complex x4, Complex x5, Complex x6) {
  Matrix4c m;
  m << x1, x2, x3, x4,
       x2, x1, x4, x3,
       x3, x4, x5, x6,
       x4, x3, x6, x5;
  return m;
}

double residue(Complex z) {
  return z.real() != 0.0 ? std::abs(z.imag()) / std::abs(z.real()) : std::abs(z.imag());
}

FidelityReport finish(const ResourceSpec& spec, Complex fp, EvalPath path) {
  FidelityReport report;
  report.path = path;
  report.success_probability = success_probability(spec);
  if (!(report.success_probability > kMinProbability)) {
    throw UnpreparableError(spec.label() + " has vanishing success probability");
  }
  report.imaginary_residue = residue(fp);
  if (report.imaginary_residue > kImaginaryTolerance) {
    throw ConsistencyError("fidelity of " + spec.label() + " has imaginary residue " +
                           std::to_string(report.imaginary_residue));
  }
  settle_fidelity(report, fp.real() / report.success_probability, spec.label());
  return report;
}

}  // namespace

void settle_fidelity(FidelityReport& report, double raw, const std::string& what) {
  if (!std::isfinite(raw) || raw < -kFidelityClampTolerance ||
      raw > 1.0 + kFidelityClampTolerance) {
    throw ConsistencyError("fidelity of " + what + " outside [0, 1]: " + std::to_string(raw));
  }
  if (raw > 1.0) {
    report.clamp_excess = raw - 1.0;
    raw = 1.0;
  } else if (raw < 0.0) {
    report.clamp_excess = raw;
    raw = 0.0;
  }
  report.fidelity = raw;
}

CoherentFidelityCoefficients coherent_fidelity_coefficients(const ResourceSpec& spec) {
  spec.validate();
  const Symbols s = symbols(spec);
  const Complex i = kI;
  const double D = s.b0 + s.d0;
  const double al = s.al, be = s.be, t1 = s.t1, t2 = s.t2, r1 = s.r1, r2 = s.r2, d = s.d;

  CoherentFidelityCoefficients out;
  out.e0 = std::exp(d * d * ((t1 * t1 + t2 * t2) / D - 2.0)) / D;
  auto& k = out.family.k;
  if (spec.kind == ResourceKind::pa) {
    k[0] = -2.0 * be * be * r1 * r1 / D;
    k[1] = r1 * d * be / D * (i + 1.0) * (t1 - i * t2);
    k[2] = r1 * d * be / D * (i + 1.0) * (t2 - i * t1);
    k[3] = -2.0 * be * be * r2 * r2 / D;
    k[4] = r2 * d * be / D * (i + 1.0) * (t2 - i * t1);
    k[5] = r2 * d * be / D * (i + 1.0) * (t1 - i * t2);
    k[6] = 2.0 * be * be * r1 * r2 / D;
  } else {
    k[0] = -2.0 * al * al * r1 * r1 * t2 * t2 / D;
    k[1] = r1 * d / D * (i + 1.0) * (al * t2 * (t1 + i * t2) - 2.0 * be);
    k[2] = r1 * d / D * (i + 1.0) * (2.0 * i * be - al * t2 * (i * t1 + t2));
    k[3] = -2.0 * al * al * r2 * r2 * t1 * t1 / D;
    k[4] = r2 * d / D * (i + 1.0) * (al * t1 * (i * t1 + t2) - 2.0 * be);
    k[5] = r2 * d / D * (i + 1.0) * (2.0 * i * be - al * t1 * (t1 + i * t2));
    k[6] = 2.0 * al * r1 * r2 * (2.0 * be - al * t1 * t2) / D;
  }
  return out;
}

SqvFidelityForm sqv_fidelity_form(const ResourceSpec& spec, double epsilon) {
  spec.validate();
  validate(InputState{SqueezedVacuumInput{epsilon}});
  const Symbols s = symbols(spec);
  const Complex i = kI;
  const double g = std::sinh(2.0 * epsilon);
  const double de = std::cosh(2.0 * epsilon);
  const double al = s.al, be = s.be, t1 = s.t1, t2 = s.t2, r1 = s.r1, r2 = s.r2, d = s.d;
  const double b0 = s.b0, c0 = s.c0, d0 = s.d0;
  const double sd0 = std::sqrt(d0);
  const double den = 2.0 * (c0 + b0 * de);
  const double ratio = b0 / d0 + de;

  SqvFidelityForm form;
  form.m0 = d * d * (((t1 * t1 + t2 * t2) * de + 2.0 * t1 * t2 * g + b0 * (t1 * t1 + t2 * t2) / d0) /
                         den -
                     2.0);
  form.denominator = std::sqrt(b0 * b0 + d0 * d0 + 2.0 * b0 * d0 * de);
  const Complex lead = d * (i + 1.0) / den;

  if (spec.kind == ResourceKind::pa) {
    form.quadratic =
        patterned(-be * be * r1 * r1 * g, be * be * r1 * r1 * ratio,
                  be * r1 * r2 * (c0 / sd0 - al * t1 * t2 + de * (b0 / sd0 + al * t1 * t2)),
                  be * be * r1 * r2 * g, -be * be * r2 * r2 * g, be * be * r2 * r2 * ratio) /
        den;
    const double h7 = be * ratio;
    const double h8 = al * t1 * t2 * ratio + b0 * (d0 / b0 + de) / sd0;
    form.linear << lead * r1 * (t1 * h7 - i * t2 * h8 + be * g * (t2 + i * t1)),
        lead * r1 * (t2 * h8 - i * t1 * h7 - be * g * (t1 + i * t2)),
        lead * r2 * (t2 * h7 - i * t1 * h8 + be * g * (t1 + i * t2)),
        lead * r2 * (t1 * h8 - i * t2 * h7 - be * g * (t2 + i * t1));
  } else {
    form.quadratic =
        patterned(-al * al * r1 * r1 * t2 * t2 * g, al * al * r1 * r1 * t2 * t2 * ratio,
                  al * r1 * r2 * (c0 / sd0 + be + de * (b0 / sd0 + be)),
                  al * al * r1 * r2 * t1 * t2 * g, -al * al * r2 * r2 * t1 * t1 * g,
                  al * al * r2 * r2 * t1 * t1 * ratio) /
        den;
    const Complex g7 = ratio - i * g;
    const Complex g9 = ratio + i * g;
    const double g8 = 2.0 * be * r1 * (1.0 + de);
    const double g10 = 2.0 * be * r2 * (1.0 + de);
    form.linear << lead * (al * r1 * t2 * (t1 - i * t2) * g7 + g8),
        lead * (al * r1 * t2 * (t2 - i * t1) * g9 - i * g8),
        lead * (al * r2 * t1 * (t2 - i * t1) * g7 + g10),
        lead * (al * r2 * t1 * (t1 - i * t2) * g9 - i * g10);
  }
  return form;
}

FidelityReport fidelity_coherent(const ResourceSpec& spec, EvalPath request) {
  const CoherentFidelityCoefficients c = coherent_fidelity_coefficients(spec);
  const Evaluation g = generating_value(c.family, spec.n1, spec.n2, request);
  return finish(spec, c.e0 * g.value, g.path);
}

FidelityReport fidelity_sqv(const ResourceSpec& spec, double epsilon) {
  const SqvFidelityForm form = sqv_fidelity_form(spec, epsilon);
  const Jet jet =
      jet_exp(form.quadratic, form.linear, form.m0, {spec.n1, spec.n1, spec.n2, spec.n2});
  return finish(spec, apply_F1(jet, spec.n1, spec.n2) / form.denominator, EvalPath::jet);
}

FidelityReport fidelity(const ResourceSpec& spec, const InputState& input) {
  validate(input);
  if (const auto* sq = std::get_if<SqueezedVacuumInput>(&input)) {
    return fidelity_sqv(spec, sq->epsilon);
  }
  return fidelity_coherent(spec);
}

Complex output_char(const CharFunction& resource_char, const CharFunction& input_char,
                    const PhasePoint& lambda) {
  if (lambda.modes() != 1) throw DomainError("output_char: expects a single-mode point");
  const double tau = lambda.tau(0), sigma = lambda.sigma(0);
  return input_char(lambda) * resource_char(PhasePoint{tau, -sigma, tau, sigma});
}

double fidelity_quadrature(const CharFunction& input_char, const CharFunction& output_char,
                           const QuadratureOptions& options, double* imaginary_part) {
  const auto integrand = [&](double tau, double sigma) {
    return input_char(PhasePoint{tau, sigma}) * output_char(PhasePoint{-tau, -sigma});
  };
  const Complex value = integrate_plane(integrand, options).value / (2.0 * kPi);
  if (imaginary_part != nullptr) *imaginary_part = value.imag();
  return value.real();
}

FidelityReport fidelity_by_quadrature(const ResourceSpec& spec, const InputState& input,
                                      const QuadratureOptions& options) {
  spec.validate();
  const GaussianState in = input_gaussian(input);
  const NormalizedResource resource(spec);
  const CharFunction chi_in = [&](const PhasePoint& l) { return gaussian_char(in, l); };
  const CharFunction chi_res = [&](const PhasePoint& l) { return resource(l); };
  const CharFunction chi_out = [&](const PhasePoint& l) {
    return output_char(chi_res, chi_in, l);
  };
  double imag = 0.0;
  const double raw = fidelity_quadrature(chi_in, chi_out, options, &imag);

  FidelityReport report;
  report.path = EvalPath::quadrature;
  report.success_probability = resource.success_probability();
  report.imaginary_residue = raw != 0.0 ? std::abs(imag) / std::abs(raw) : std::abs(imag);
  settle_fidelity(report, raw, spec.label());
  return report;
}

}  // namespace cvtele
