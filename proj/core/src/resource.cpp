#include "cvtele/resource.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "cvtele/errors.hpp"
#include "cvtele/jet.hpp"
#include "cvtele/special_functions.hpp"

namespace cvtele {

std::string_view to_string(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::ps: return "ps";
    case ResourceKind::pa: return "pa";
    case ResourceKind::tmsc: return "tmsc";
  }
  return "?";
}

ResourceKind parse_resource_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "ps") return ResourceKind::ps;
  if (lower == "pa") return ResourceKind::pa;
  if (lower == "tmsc") return ResourceKind::tmsc;
  throw DomainError("unknown resource kind '" + std::string(text) + "'");
}

std::string_view to_string(EvalPath path) {
  switch (path) {
    case EvalPath::automatic: return "automatic";
    case EvalPath::hermite: return "hermite";
    case EvalPath::jet: return "jet";
    case EvalPath::quadrature: return "quadrature";
  }
  return "?";
}

ResourceSpec ResourceSpec::tmsc(double r, double d) {
  return ResourceSpec{ResourceKind::tmsc, 0, 0, 1.0, 1.0, r, d};
}

ResourceSpec ResourceSpec::symmetric(ResourceKind kind, int n, double T, double r, double d) {
  return ResourceSpec{kind, n, n, T, T, r, d};
}

ResourceSpec ResourceSpec::asymmetric(ResourceKind kind, int n, double T, double r, double d) {
  return ResourceSpec{kind, 0, n, 1.0, T, r, d};
}

void ResourceSpec::validate() const {
  if (n1 < 0 || n2 < 0) throw DomainError("ResourceSpec: photon numbers must be non-negative");
  if (kind == ResourceKind::tmsc && (n1 != 0 || n2 != 0)) {
    throw DomainError("ResourceSpec: tmsc requires n1 = n2 = 0");
  }
  if (kind != ResourceKind::tmsc) {
    for (double T : {T1, T2}) {
      if (!(T > 0.0 && T <= 1.0)) {
        throw DomainError("ResourceSpec: transmissivity " + std::to_string(T) +
                          " outside (0, 1]");
      }
    }
  }
  if (!std::isfinite(r) || r < 0.0) throw DomainError("ResourceSpec: r must be finite and >= 0");
  if (!std::isfinite(d)) throw DomainError("ResourceSpec: d must be finite");
  // The jet fallback holds orders up to kMaxJetOrder.
  if (std::max(n1, n2) > kMaxJetOrder) {
    throw DomainError("ResourceSpec: photon numbers above " + std::to_string(kMaxJetOrder) +
                      " are not supported");
  }
}

std::string ResourceSpec::label() const {
  if (kind == ResourceKind::tmsc) return "TMSC";
  const std::string op = kind == ResourceKind::ps ? "PS" : "PA";
  if (n1 == n2 && T1 == T2) return "Sym " + std::to_string(n1) + "-" + op;
  if (n1 == 0 && T1 == 1.0) return "Asym " + std::to_string(n2) + "-" + op;
  return op + "(" + std::to_string(n1) + "," + std::to_string(n2) + ")";
}

Matrix4c GeneratingCoefficients::quadratic() const {
  Matrix4c m = Matrix4c::Zero();
  m(0, 1) = m(1, 0) = -k[0] / 2.0;
  m(2, 3) = m(3, 2) = -k[3] / 2.0;
  m(0, 2) = m(2, 0) = k[6] / 2.0;
  m(1, 3) = m(3, 1) = k[6] / 2.0;
  return m;
}

Vector4c GeneratingCoefficients::linear() const {
  Vector4c v;
  v << k[1], k[2], k[4], k[5];
  return v;
}

namespace {

// Shorthand shared by every coefficient family.
struct Symbols {
  double t1, t2, r1, r2, al, be, b0, c0, d;
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
  s.d = spec.d;
  return s;
}

void check_two_modes(const PhasePoint& lambda) {
  if (lambda.modes() != 2) throw DomainError("resource characteristic functions take 2 modes");
}

// a0, M1, M2 are common to both families.
void fill_common(const Symbols& s, CoefficientSet& set) {
  const double t1s = s.t1 * s.t1, t2s = s.t2 * s.t2;
  set.a0 = std::exp(s.d * s.d * ((t1s + t2s) / s.b0 - 2.0)) / s.b0;
  const double x = 2.0 * s.al * s.be * s.t1 * s.t2;
  Matrix4d m;
  m << s.c0, 0, -x, 0,
       0, s.c0, 0, x,
       -x, 0, s.c0, 0,
       0, x, 0, s.c0;
  set.M1 = -m / (4.0 * s.b0);
  const Complex pre = s.d / (kI * s.b0);
  set.M2 << pre * (s.t1 * (s.be - s.al * t2s)), pre * (-s.t1 * (s.be + s.al * t2s)),
      pre * (s.t2 * (s.be - s.al * t1s)), pre * (-s.t2 * (s.be + s.al * t1s));
}

// b2, b3, b5, b6.
std::array<Complex, 4> origin_b(const Symbols& s) {
  const Complex i = kI;
  const double t1s = s.t1 * s.t1, t2s = s.t2 * s.t2;
  const Complex f1 = s.r1 * s.d / s.b0 * (i + 1.0);
  const Complex f2 = s.r2 * s.d / s.b0 * (i + 1.0);
  return {f1 * (i * s.al * t2s - s.be), f1 * (i * s.be - s.al * t2s),
          f2 * (i * s.al * t1s - s.be), f2 * (i * s.be - s.al * t1s)};
}

}  // namespace

CoefficientSet ps_coefficients(const ResourceSpec& spec, const PhasePoint& lambda) {
  if (spec.kind == ResourceKind::pa) throw DomainError("ps_coefficients: kind is pa");
  check_two_modes(lambda);
  const Symbols s = symbols(spec);
  const Complex i = kI;
  const double ta1 = lambda.tau(0), s1 = lambda.sigma(0);
  const double ta2 = lambda.tau(1), s2 = lambda.sigma(1);

  CoefficientSet set;
  fill_common(s, set);
  set.origin = origin_b(s);
  const auto& b = set.origin;
  const double al = s.al, be = s.be, b0 = s.b0;
  const double tt = s.t1 * s.t2;
  auto& k = set.family.k;
  k[0] = -2.0 * al * al * s.r1 * s.r1 * s.t2 * s.t2 / b0;
  k[1] = b[0] - s.r1 * s.t2 * al / b0 * (al * tt * (ta1 + i * s1) + i * be * (i * ta2 + s2));
  k[2] = b[1] + s.r1 * s.t2 * al / b0 * (al * tt * (ta1 - i * s1) - be * (ta2 + i * s2));
  k[3] = -2.0 * al * al * s.r2 * s.r2 * s.t1 * s.t1 / b0;
  k[4] = b[2] - s.r2 * s.t1 * al / b0 * (al * tt * (ta2 + i * s2) + i * be * (i * ta1 + s1));
  k[5] = b[3] + s.r2 * s.t1 * al / b0 * (al * tt * (ta2 - i * s2) - be * (ta1 + i * s1));
  k[6] = 2.0 * al * be * s.r1 * s.r2 / b0;
  return set;
}

CoefficientSet pa_coefficients(const ResourceSpec& spec, const PhasePoint& lambda) {
  if (spec.kind != ResourceKind::pa) throw DomainError("pa_coefficients: kind is not pa");
  check_two_modes(lambda);
  const Symbols s = symbols(spec);
  const Complex i = kI;
  const double ta1 = lambda.tau(0), s1 = lambda.sigma(0);
  const double ta2 = lambda.tau(1), s2 = lambda.sigma(1);

  CoefficientSet set;
  fill_common(s, set);
  const auto b = origin_b(s);
  set.origin = {-s.t1 * b[0], -s.t1 * b[1], -s.t2 * b[2], -s.t2 * b[3]};
  const auto& o = set.origin;
  const double al = s.al, be = s.be, b0 = s.b0;
  const double tt = s.t1 * s.t2;
  auto& k = set.family.k;
  k[0] = -2.0 * be * be * s.r1 * s.r1 / b0;
  k[1] = o[0] - s.r1 * be / b0 * (al * tt * (ta2 - i * s2) - be * (ta1 + i * s1));
  k[2] = o[1] + s.r1 * be / b0 * (al * tt * (ta2 + i * s2) + i * be * (i * ta1 + s1));
  k[3] = -2.0 * be * be * s.r2 * s.r2 / b0;
  k[4] = o[2] - s.r2 * be / b0 * (al * tt * (ta1 - i * s1) - be * (ta2 + i * s2));
  k[5] = o[3] + s.r2 * be / b0 * (al * tt * (ta1 + i * s1) + i * be * (i * ta2 + s2));
  k[6] = 2.0 * al * be * s.r1 * s.r2 * tt / b0;
  return set;
}

CoefficientSet resource_coefficients(const ResourceSpec& spec, const PhasePoint& lambda) {
  return spec.kind == ResourceKind::pa ? pa_coefficients(spec, lambda)
                                       : ps_coefficients(spec, lambda);
}

namespace {

Complex hermite_sum(const GeneratingCoefficients& c, int n1, int n2, int branch1,
                    int branch4) {
  const Complex k1 = c(1), k2 = c(2), k3 = c(3), k4 = c(4), k5 = c(5), k6 = c(6), k7 = c(7);
  const Complex s1 = static_cast<double>(branch1) * std::sqrt(k1);
  const Complex s4 = static_cast<double>(branch4) * std::sqrt(k4);
  const Complex x1 = k2 / s1, y1 = k3 / s1, x2 = k5 / s4, y2 = k6 / s4;
  const Complex lead = std::pow(k1, n1) * std::pow(k4, n2);
  const int top = std::min(n1, n2);
  Complex total{};
  for (int i = 0; i <= top; ++i) {
    for (int j = 0; j <= top; ++j) {
      const double perms = static_cast<double>(permutation(n1, i)) *
                           static_cast<double>(permutation(n1, j)) *
                           static_cast<double>(permutation(n2, i)) *
                           static_cast<double>(permutation(n2, j));
      const Complex scale = std::pow(k7 / (s1 * s4), i + j) / (factorial(i) * factorial(j));
      total += scale * perms * hermite2({n1 - i, n1 - j}, x1, y1) *
               hermite2({n2 - i, n2 - j}, x2, y2);
    }
  }
  return lead * total * std::ldexp(1.0, -(n1 + n2)) / (factorial(n1) * factorial(n2));
}

Complex jet_value(const GeneratingCoefficients& c, int n1, int n2) {
  const Jet jet = jet_exp(c.quadratic(), c.linear(), Complex{}, {n1, n1, n2, n2});
  return apply_F1(jet, n1, n2);
}

}  // namespace

Evaluation generating_value(const GeneratingCoefficients& coeffs, int n1, int n2,
                            EvalPath request, int branch1, int branch4) {
  if (n1 < 0 || n2 < 0) throw DomainError("generating_value: negative photon number");
  if (request == EvalPath::quadrature) {
    throw DomainError("generating_value: quadrature is not a closed-form path");
  }
  EvalPath path = request;
  if (path == EvalPath::automatic) {
    const bool degenerate = std::abs(coeffs(1)) < kDegenerateCoefficient ||
                            std::abs(coeffs(4)) < kDegenerateCoefficient;
    path = degenerate ? EvalPath::jet : EvalPath::hermite;
  }
  if (path == EvalPath::hermite) {
    return {hermite_sum(coeffs, n1, n2, branch1, branch4), EvalPath::hermite};
  }
  return {jet_value(coeffs, n1, n2), EvalPath::jet};
}

namespace {

Complex gaussian_factor(const CoefficientSet& set, const PhasePoint& lambda) {
  const Vector4d l(lambda[0], lambda[1], lambda[2], lambda[3]);
  return std::exp(Complex(l.dot(set.M1 * l)) + l.cast<Complex>().dot(set.M2));
}

GeneratingCoefficients at_origin(const CoefficientSet& set) {
  GeneratingCoefficients g = set.family;
  g.k[1] = set.origin[0];
  g.k[2] = set.origin[1];
  g.k[4] = set.origin[2];
  g.k[5] = set.origin[3];
  return g;
}

}  // namespace

Complex unnormalized_from(const CoefficientSet& set, const PhasePoint& lambda, int n1, int n2,
                          EvalPath request) {
  check_two_modes(lambda);
  return set.a0 * gaussian_factor(set, lambda) *
         generating_value(set.family, n1, n2, request).value;
}

Evaluation evaluate_unnormalized_char(const ResourceSpec& spec, const PhasePoint& lambda,
                                      EvalPath request) {
  spec.validate();
  const CoefficientSet set = resource_coefficients(spec, lambda);
  const Evaluation g = generating_value(set.family, spec.n1, spec.n2, request);
  return {set.a0 * gaussian_factor(set, lambda) * g.value, g.path};
}

Complex unnormalized_char(const ResourceSpec& spec, const PhasePoint& lambda) {
  return evaluate_unnormalized_char(spec, lambda).value;
}

Complex probability_from(const CoefficientSet& set, int n1, int n2, EvalPath request) {
  return set.a0 * generating_value(at_origin(set), n1, n2, request).value;
}

ProbabilityReport evaluate_success_probability(const ResourceSpec& spec, EvalPath request) {
  spec.validate();
  const CoefficientSet set = resource_coefficients(spec, PhasePoint::zero(2));
  const Evaluation g = generating_value(at_origin(set), spec.n1, spec.n2, request);
  const Complex p = set.a0 * g.value;

  ProbabilityReport report;
  report.value = p.real();
  report.path = g.path;
  report.imaginary_residue =
      p.real() != 0.0 ? std::abs(p.imag()) / std::abs(p.real()) : std::abs(p.imag());
  if (report.imaginary_residue > kImaginaryTolerance) {
    throw ConsistencyError("success probability of " + spec.label() +
                           " has imaginary residue " + std::to_string(report.imaginary_residue));
  }
  if (!(report.value >= 0.0 && report.value <= 1.0 + 1e-12)) {
    throw ConsistencyError("success probability of " + spec.label() + " out of range: " +
                           std::to_string(report.value));
  }
  return report;
}

double success_probability(const ResourceSpec& spec) {
  return evaluate_success_probability(spec).value;
}

NormalizedResource::NormalizedResource(const ResourceSpec& spec)
    : spec_(spec), probability_(cvtele::success_probability(spec)) {
  if (!(probability_ > kMinProbability)) {
    throw UnpreparableError(spec.label() + " has vanishing success probability");
  }
}

Complex NormalizedResource::operator()(const PhasePoint& lambda) const {
  return unnormalized_char(spec_, lambda) / probability_;
}

Complex normalized_char(const ResourceSpec& spec, const PhasePoint& lambda) {
  return NormalizedResource(spec)(lambda);
}

}  // namespace cvtele
