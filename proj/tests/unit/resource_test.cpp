#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cvtele/errors.hpp"
#include "cvtele/fock_oracle.hpp"
#include "cvtele/resource.hpp"
#include "gaussian_integral.hpp"

namespace cvtele {
namespace {

PhasePoint random_point(std::mt19937_64& rng, double scale = 1.5) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return PhasePoint{u(rng), u(rng), u(rng), u(rng)};
}

ResourceSpec make(ResourceKind kind, int n1, int n2, double T1, double T2, double r, double d) {
  ResourceSpec s;
  s.kind = kind;
  s.n1 = n1;
  s.n2 = n2;
  s.T1 = T1;
  s.T2 = T2;
  s.r = r;
  s.d = d;
  return s;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

TEST(ResourceSpec, Validation) {
  EXPECT_NO_THROW(make(ResourceKind::ps, 1, 1, 1.0, 0.5, 0.0, -2.0).validate());
  EXPECT_THROW(make(ResourceKind::ps, -1, 1, 0.9, 0.9, 0.5, 0.5).validate(), DomainError);
  EXPECT_THROW(make(ResourceKind::ps, 1, 1, 0.0, 0.9, 0.5, 0.5).validate(), DomainError);
  EXPECT_THROW(make(ResourceKind::pa, 1, 1, 0.9, 1.1, 0.5, 0.5).validate(), DomainError);
  EXPECT_THROW(make(ResourceKind::ps, 1, 1, 0.9, 0.9, -0.1, 0.5).validate(), DomainError);
  EXPECT_THROW(make(ResourceKind::ps, 1, 1, 0.9, 0.9, 0.5, NAN).validate(), DomainError);
  EXPECT_THROW(make(ResourceKind::tmsc, 1, 0, 1.0, 1.0, 0.5, 0.5).validate(), DomainError);
}

TEST(ResourceSpec, FactoriesAndLabels) {
  const auto a = ResourceSpec::asymmetric(ResourceKind::ps, 3, 0.9, 0.4, 0.5);
  EXPECT_EQ(a.n1, 0);
  EXPECT_EQ(a.n2, 3);
  EXPECT_EQ(a.T1, 1.0);
  EXPECT_EQ(a.T2, 0.9);
  EXPECT_EQ(a.label(), "Asym 3-PS");
  EXPECT_EQ(ResourceSpec::symmetric(ResourceKind::pa, 1, 0.9, 0.4, 0.5).label(), "Sym 1-PA");
  EXPECT_EQ(ResourceSpec::tmsc(0.4, 0.5).label(), "TMSC");
  EXPECT_EQ(parse_resource_kind("PA"), ResourceKind::pa);
  EXPECT_THROW(parse_resource_kind("xx"), DomainError);
}

TEST(Coefficients, ZeroSqueezingCollapse) {
  for (auto kind : {ResourceKind::ps, ResourceKind::pa}) {
    const auto set = resource_coefficients(make(kind, 1, 1, 0.8, 0.7, 0.0, 0.5),
                                           PhasePoint{0.3, -0.2, 0.5, 0.1});
    EXPECT_EQ(set.family(7), Complex(0.0));
    EXPECT_TRUE(set.M1.isApprox(-0.25 * Matrix4d::Identity(), 1e-15));
    if (kind == ResourceKind::ps) {
      EXPECT_EQ(set.family(1), Complex(0.0));
      EXPECT_EQ(set.family(4), Complex(0.0));
    }
  }
}

TEST(Coefficients, OriginFamilyAtZero) {
  for (auto kind : {ResourceKind::ps, ResourceKind::pa}) {
    const auto set = resource_coefficients(make(kind, 1, 2, 0.8, 0.7, 0.6, 0.5), PhasePoint::zero(2));
    EXPECT_NEAR(std::abs(set.family(2) - set.origin[0]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(set.family(3) - set.origin[1]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(set.family(5) - set.origin[2]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(set.family(6) - set.origin[3]), 0.0, 1e-15);
  }
}

// Every piece of the closed form against the Gaussian-integral generator.
TEST(Coefficients, MatchGaussianIntegral) {
  std::mt19937_64 rng(37);
  for (auto kind : {ResourceKind::ps, ResourceKind::pa}) {
    for (const auto& [T1, T2] : {std::pair{0.9, 0.9}, std::pair{0.8, 0.65}, std::pair{1.0, 0.9}}) {
      const double r = 0.6, d = 0.5;
      const auto g = testing::preparation_generator(kind, T1, T2, r, d);
      const auto spec = make(kind, 1, 1, T1, T2, r, d);
      for (int trial = 0; trial < 4; ++trial) {
        const PhasePoint p = random_point(rng);
        const auto set = resource_coefficients(spec, p);
        const Eigen::Vector4cd lam = p.values().cast<Complex>();
        EXPECT_LE(std::abs(set.a0 - g.prefactor * std::exp(g.c)), 1e-12 * std::abs(set.a0));
        EXPECT_LE((set.M1.cast<Complex>() - g.Q.topLeftCorner(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LE((set.M2 - g.L.head(4)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LE((set.family.quadratic() - g.Q.bottomRightCorner(4, 4)).cwiseAbs().maxCoeff(),
                  1e-12);
        // The linear part may come with an overall sign, which no F1 value can see.
        const Eigen::Vector4cd lin = g.L.tail(4) + 2.0 * g.Q.topRightCorner(4, 4).transpose() * lam;
        const double same = (set.family.linear() - lin).cwiseAbs().maxCoeff();
        const double flipped = (set.family.linear() + lin).cwiseAbs().maxCoeff();
        EXPECT_LE(std::min(same, flipped), 1e-12);
      }
    }
  }
}

TEST(UnnormalizedChar, MatchesGaussianIntegral) {
  std::mt19937_64 rng(41);
  for (auto kind : {ResourceKind::ps, ResourceKind::pa}) {
    for (const auto& [n1, n2] : {std::pair{0, 1}, std::pair{1, 1}, std::pair{2, 1},
                                 std::pair{0, 3}, std::pair{3, 3}}) {
      const double T1 = n1 == 0 ? 1.0 : 0.85, T2 = 0.75, r = 0.7, d = 0.5;
      const auto g = testing::preparation_generator(kind, T1, T2, r, d);
      const auto spec = make(kind, n1, n2, T1, T2, r, d);
      for (int trial = 0; trial < 3; ++trial) {
        const PhasePoint p = random_point(rng);
        const Complex oracle = testing::evaluate(g, p.values(), n1, n2);
        EXPECT_LE(rel(unnormalized_char(spec, p), oracle), 1e-10)
            << spec.label() << " n1=" << n1 << " n2=" << n2;
      }
      EXPECT_LE(rel(success_probability(spec), testing::evaluate(g, Eigen::Vector4d::Zero(), n1, n2)),
                1e-10);
    }
  }
}

TEST(UnnormalizedChar, TmscReduction) {
  std::mt19937_64 rng(43);
  for (double r : {0.0, 0.4, 1.1}) {
    const auto spec = ResourceSpec::tmsc(r, 0.5);
    for (int k = 0; k < 5; ++k) {
      const PhasePoint p = random_point(rng);
      EXPECT_LE(rel(unnormalized_char(spec, p), gaussian_char(tmsc_state(r, 0.5), p)), 1e-12);
    }
    EXPECT_NEAR(success_probability(spec), 1.0, 1e-14);
  }
}

TEST(SuccessProbability, NoPhotonsAtUnitTransmissivity) {
  for (double r : {0.2, 0.9})
    for (double d : {0.0, 0.5})
      EXPECT_NEAR(success_probability(make(ResourceKind::ps, 0, 0, 1.0, 1.0, r, d)), 1.0, 1e-14);
}

TEST(SuccessProbability, TableOrdersOfMagnitude) {
  const double ps = success_probability(ResourceSpec::symmetric(ResourceKind::ps, 1, 0.9, 0.6, 0.5));
  EXPECT_GT(ps, 1e-3);
  EXPECT_LT(ps, 1e-1);
  const double pa = success_probability(ResourceSpec::symmetric(ResourceKind::pa, 3, 0.99, 1.0, 0.5));
  EXPECT_GT(pa, 1e-9);
  EXPECT_LT(pa, 1e-7);
}

// a1 a2 |TMSV> has norm^2 <n1 n2> = sinh^2 r cosh 2r; the weakly reflecting
// limit approaches it as (1 - T)^2 <n1 n2>.
TEST(SuccessProbability, WeakSubtractionLimit) {
  const double r = 0.6, eps = 1e-5;
  const double p = success_probability(make(ResourceKind::ps, 1, 1, 1 - eps, 1 - eps, r, 0.0));
  const double expected = std::pow(std::sinh(r), 2) * std::cosh(2 * r);
  EXPECT_NEAR(p / (eps * eps), expected, 1e-3 * expected);
}

TEST(SuccessProbability, UnitTransmissivityIsUnpreparable) {
  const auto spec = make(ResourceKind::ps, 1, 1, 1.0, 1.0, 0.6, 0.0);
  EXPECT_NEAR(success_probability(spec), 0.0, 1e-15);
  EXPECT_THROW(NormalizedResource{spec}, UnpreparableError);
}

TEST(NormalizedChar, IdealSubtractedVacuumLimit) {
  const double r = 0.5;
  const int dim = 60;
  const double lam = std::tanh(r);
  oracle::FockTensor ideal({dim, dim});
  for (int n = 1; n < dim; ++n) ideal.at({n - 1, n - 1}) = double(n) * std::pow(lam, n) / std::cosh(r);
  const NormalizedResource res(make(ResourceKind::ps, 1, 1, 1 - 1e-7, 1 - 1e-7, r, 0.0));
  std::mt19937_64 rng(47);
  for (int k = 0; k < 4; ++k) {
    const PhasePoint p = random_point(rng, 1.0);
    EXPECT_NEAR(std::abs(res(p) - oracle::oracle_char(ideal, p)), 0.0, 1e-5);
  }
}

TEST(NormalizedChar, UnitAtOriginAndHermitian) {
  std::mt19937_64 rng(53);
  for (auto kind : {ResourceKind::ps, ResourceKind::pa}) {
    for (const auto& [n1, n2] : {std::pair{0, 1}, std::pair{1, 1}, std::pair{2, 3}}) {
      const auto spec = make(kind, n1, n2, n1 == 0 ? 1.0 : 0.9, 0.8, 0.7, 0.5);
      EXPECT_NEAR(std::abs(normalized_char(spec, PhasePoint::zero(2)) - 1.0), 0.0, 1e-12);
      for (int k = 0; k < 5; ++k) {
        const PhasePoint p = random_point(rng);
        EXPECT_LE(std::abs(normalized_char(spec, -p) - std::conj(normalized_char(spec, p))), 1e-12);
      }
    }
  }
}

TEST(GeneratingValue, BranchIndependence) {
  std::mt19937_64 rng(59);
  for (auto kind : {ResourceKind::ps, ResourceKind::pa}) {
    const auto spec = make(kind, 2, 3, 0.85, 0.7, 0.8, 0.5);
    const auto set = resource_coefficients(spec, random_point(rng));
    const Complex base = generating_value(set.family, 2, 3, EvalPath::hermite, +1, +1).value;
    for (int b1 : {+1, -1})
      for (int b4 : {+1, -1})
        EXPECT_LE(rel(generating_value(set.family, 2, 3, EvalPath::hermite, b1, b4).value, base),
                  1e-12);
  }
}

TEST(GeneratingValue, DualPathAgreement) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> T(0.5, 0.99), r(0.05, 1.5), d(-1.0, 1.0);
  std::uniform_int_distribution<int> n(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto kind = trial % 2 ? ResourceKind::pa : ResourceKind::ps;
    const auto spec = make(kind, n(rng), n(rng), T(rng), T(rng), r(rng), d(rng));
    const PhasePoint p = random_point(rng);
    const auto h = evaluate_unnormalized_char(spec, p, EvalPath::hermite);
    const auto j = evaluate_unnormalized_char(spec, p, EvalPath::jet);
    EXPECT_EQ(h.path, EvalPath::hermite);
    EXPECT_EQ(j.path, EvalPath::jet);
    EXPECT_LE(rel(h.value, j.value), 1e-10) << spec.label();
    const auto ph = evaluate_success_probability(spec, EvalPath::hermite);
    const auto pj = evaluate_success_probability(spec, EvalPath::jet);
    EXPECT_LE(std::abs(ph.value - pj.value), 1e-10 * pj.value);
  }
}

TEST(GeneratingValue, DegenerateFallsBackToJet) {
  const auto spec = make(ResourceKind::ps, 1, 1, 0.9, 0.9, 0.0, 0.5);
  const auto e = evaluate_unnormalized_char(spec, PhasePoint{0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(e.path, EvalPath::jet);
  EXPECT_TRUE(std::isfinite(e.value.real()));
}

TEST(ProbabilityShape, DecreasesTowardUnitTransmissivity) {
  auto p = [](double T) {
    return success_probability(ResourceSpec::symmetric(ResourceKind::ps, 1, T, 0.6, 0.5));
  };
  EXPECT_LT(p(0.999), p(0.9));
  EXPECT_LT(p(0.9), p(0.5));
}

TEST(ProbabilityShape, InteriorMaximumInSqueezing) {
  for (auto kind : {ResourceKind::ps, ResourceKind::pa}) {
    double best = -1.0, best_r = 0.0;
    const int steps = 40;
    for (int k = 0; k < steps; ++k) {
      const double r = 0.05 + (2.0 - 0.05) * k / (steps - 1);
      const double p = success_probability(ResourceSpec::symmetric(kind, 1, 0.9, r, 0.5));
      if (p > best) best = p, best_r = r;
    }
    EXPECT_GT(best_r, 0.05);
    EXPECT_LT(best_r, 2.0);
  }
}

TEST(ProbabilityShape, SymmetricBelowAsymmetric) {
  for (auto kind : {ResourceKind::ps, ResourceKind::pa})
    for (int n : {1, 3})
      for (double r : {0.2, 0.6, 1.0})
        EXPECT_LT(success_probability(ResourceSpec::symmetric(kind, n, 0.9, r, 0.5)),
                  success_probability(ResourceSpec::asymmetric(kind, n, 0.9, r, 0.5)));
}

TEST(UnnormalizedChar, MatchesFockOracle) {
  const auto spec = ResourceSpec::symmetric(ResourceKind::ps, 1, 0.9, 0.4, 0.5);
  const auto prepared = oracle::prepare_resource(spec, 24);
  const PhasePoint p{0.3, -0.5, 0.2, 0.7};
  const Complex oracle = oracle::oracle_char(prepared.state, p) * prepared.probability;
  EXPECT_LE(rel(unnormalized_char(spec, p), oracle), 1e-8);
  EXPECT_LE(std::abs(prepared.probability - success_probability(spec)) / prepared.probability, 1e-8);
}

}  // namespace
}  // namespace cvtele
