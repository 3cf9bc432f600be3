#include <cmath>
#include <random>
#include <sstream>

#include "cvtele/errors.hpp"
#include "cvtele/harness.hpp"

namespace cvtele::harness {

Scope parse_scope(std::string_view text) {
  if (text == "fast") return Scope::fast;
  if (text == "full") return Scope::full;
  throw DomainError("unknown scope '" + std::string(text) + "'");
}

Perturbation Perturbation::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("perturbation must look like name:factor");
  }
  Perturbation p;
  p.coefficient = std::string(text.substr(0, colon));
  const std::string factor(text.substr(colon + 1));
  char* end = nullptr;
  p.factor = std::strtod(factor.c_str(), &end);
  if (factor.empty() || end != factor.c_str() + factor.size()) {
    throw DomainError("bad perturbation factor '" + factor + "'");
  }
  CoefficientSet probe;
  p.apply(probe);
  return p;
}

void Perturbation::apply(CoefficientSet& set) const {
  const std::string& c = coefficient;
  if (c == "a0") {
    set.a0 *= factor;
  } else if (c.size() == 2 && c[0] == 'k' && c[1] >= '1' && c[1] <= '7') {
    set.family.k[c[1] - '1'] *= factor;
  } else if (c == "o2" || c == "o3" || c == "o5" || c == "o6") {
    static constexpr int slot[] = {0, 0, 0, 1, 0, 2, 3};
    set.origin[slot[c[1] - '0']] *= factor;
  } else {
    throw DomainError("unknown coefficient '" + c + "' (a0, k1..k7, o2, o3, o5, o6)");
  }
}

namespace {

constexpr double kOracleTolerance = 1e-5;
constexpr double kCharTolerance = 1e-6;
constexpr double kDualPathTolerance = 1e-10;

std::string sci(double x) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << x;
  return out.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CoefficientSet coefficients(const ResourceSpec& spec, const PhasePoint& lambda,
                            const std::optional<Perturbation>& p) {
  CoefficientSet set = resource_coefficients(spec, lambda);
  if (p) p->apply(set);
  return set;
}

void oracle_grid(Report& rep, const VerifyOptions& opt) {
  oracle::OracleConfig cfg;
  if (opt.scope == Scope::fast) cfg.N = 24;
  std::vector<std::pair<int, int>> pairs{{0, 1}, {1, 1}};
  if (opt.scope == Scope::full) pairs.insert(pairs.end(), {{0, 3}, {3, 3}});
  const std::vector<PhasePoint> probes{{0.3, -0.2, 0.1, 0.4}, {-0.7, 0.5, 0.6, -0.3}};

  for (ResourceKind kind : {ResourceKind::ps, ResourceKind::pa}) {
    for (const auto& [n1, n2] : pairs) {
      for (double T : {0.7, 0.9}) {
        for (double r : {0.2, 0.6}) {
          const ResourceSpec spec{kind, n1, n2, n1 == 0 ? 1.0 : T, T, r, 0.5};
          const std::string tag = spec.label() + " T=" + std::to_string(T).substr(0, 3) + " r=" + std::to_string(r).substr(0, 3);
          try {
            const auto op = oracle::oracle_success_probability(spec, cfg);
            const double p =
                probability_from(coefficients(spec, PhasePoint::zero(2), opt.perturbation), n1, n2)
                    .real();
            const double e = rel(p, op.value);
            rep.add(tag + ": probability vs oracle", e <= kOracleTolerance, "rel " + sci(e),
                    "<= " + sci(kOracleTolerance));

            const auto prepared = oracle::prepare_resource(spec, op.N, cfg);
            double worst = 0.0;
            for (const auto& l : probes) {
              const Complex a =
                  unnormalized_from(coefficients(spec, l, opt.perturbation), l, n1, n2) / p;
              worst = std::max(worst, std::abs(a - oracle::oracle_char(prepared.state, l)));
            }
            rep.add(tag + ": characteristic function vs oracle", worst <= kCharTolerance,
                    "abs " + sci(worst), "<= " + sci(kCharTolerance));

            const double fc = fidelity_coherent(spec).fidelity;
            const double oc = oracle::oracle_teleport_fidelity(spec, CoherentInput{}, cfg).value;
            rep.add(tag + ": coherent fidelity vs oracle", rel(fc, oc) <= kOracleTolerance,
                    "rel " + sci(rel(fc, oc)), "<= " + sci(kOracleTolerance));
            const double fs = fidelity_sqv(spec, 0.3).fidelity;
            const double os =
                oracle::oracle_teleport_fidelity(spec, SqueezedVacuumInput{0.3}, cfg).value;
            rep.add(tag + ": squeezed-vacuum fidelity vs oracle", rel(fs, os) <= kOracleTolerance,
                    "rel " + sci(rel(fs, os)), "<= " + sci(kOracleTolerance));
          } catch (const std::exception& e) {
            rep.add(tag + ": oracle comparison", false, e.what(), "no error");
          }
        }
      }
    }
  }
}

void dual_path(Report& rep, const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> photons(0, 3);
  std::uniform_real_distribution<double> T(0.5, 0.99), r(0.1, 1.5), d(-1.0, 1.0);
  std::normal_distribution<double> lam(0.0, 0.8);
  const int count = opt.scope == Scope::fast ? 50 : 200;
  double worst_char = 0.0, worst_p = 0.0, worst_f = 0.0;
  for (int i = 0; i < count; ++i) {
    const ResourceSpec spec{i % 2 == 0 ? ResourceKind::ps : ResourceKind::pa,
                            photons(rng), photons(rng), T(rng), T(rng), r(rng), d(rng)};
    const PhasePoint l{lam(rng), lam(rng), lam(rng), lam(rng)};
    worst_char = std::max(worst_char,
                          rel(evaluate_unnormalized_char(spec, l, EvalPath::hermite).value,
                              evaluate_unnormalized_char(spec, l, EvalPath::jet).value));
    worst_p = std::max(worst_p, rel(evaluate_success_probability(spec, EvalPath::hermite).value,
                                    evaluate_success_probability(spec, EvalPath::jet).value));
    worst_f = std::max(worst_f, rel(fidelity_coherent(spec, EvalPath::hermite).fidelity,
                                    fidelity_coherent(spec, EvalPath::jet).fidelity));
  }
  const std::string n = std::to_string(count) + " random points";
  rep.add("Hermite = jet, characteristic function, " + n, worst_char <= kDualPathTolerance,
          "rel " + sci(worst_char), "<= " + sci(kDualPathTolerance));
  rep.add("Hermite = jet, success probability, " + n, worst_p <= kDualPathTolerance,
          "rel " + sci(worst_p), "<= " + sci(kDualPathTolerance));
  rep.add("Hermite = jet, coherent fidelity, " + n, worst_f <= kDualPathTolerance,
          "rel " + sci(worst_f), "<= " + sci(kDualPathTolerance));
}

void table_orders(Report& rep) {
  struct Row {
    const char* name;
    ResourceSpec spec;
    double order;
  };
  const Row rows[] = {
      {"Sym 1-PS", ResourceSpec::symmetric(ResourceKind::ps, 1, 0.9, 0.6, 0.5), 1e-2},
      {"Sym 3-PS", ResourceSpec::symmetric(ResourceKind::ps, 3, 0.9, 0.6, 0.5), 1e-5},
      {"Sym 3-PA", ResourceSpec::symmetric(ResourceKind::pa, 3, 0.99, 1.0, 0.5), 1e-8},
      {"Asym 1-PS", ResourceSpec::asymmetric(ResourceKind::ps, 1, 0.9, 0.2, 0.5), 1e-2},
  };
  for (const auto& row : rows) {
    const double p = success_probability(row.spec);
    const double gap = std::abs(std::log10(p) - std::log10(row.order));
    rep.add(std::string(row.name) + " probability order", gap <= 1.0, sci(p),
            "within one decade of " + sci(row.order));
  }
}

}  // namespace

Report verify(const VerifyOptions& options) {
  Report rep;
  rep.title = std::string("verify ") + (options.scope == Scope::fast ? "fast" : "full");
  if (options.perturbation) {
    rep.title += " (perturbed " + options.perturbation->coefficient + " by factor " +
                 std::to_string(options.perturbation->factor) + ")";
  }
  oracle_grid(rep, options);
  dual_path(rep, options);
  if (options.scope == Scope::full) table_orders(rep);
  return rep;
}

}  // namespace cvtele::harness
