#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "cvtele/errors.hpp"
#include "cvtele/harness.hpp"

namespace cvtele::harness {
namespace {

TEST(Grid, ParseAndPoints) {
  const Grid g = Grid::parse("0.5:1:6");
  EXPECT_EQ(g.min, 0.5);
  EXPECT_EQ(g.max, 1.0);
  EXPECT_EQ(g.steps, 6);
  const auto p = g.points();
  ASSERT_EQ(p.size(), 6u);
  EXPECT_EQ(p.front(), 0.5);
  EXPECT_EQ(p.back(), 1.0);
  EXPECT_NEAR(p[1], 0.6, 1e-15);
}

TEST(Grid, ParseErrors) {
  EXPECT_THROW(Grid::parse("1:0:5"), DomainError);
  EXPECT_THROW(Grid::parse("0:1:1"), DomainError);
  EXPECT_THROW(Grid::parse("0:1"), DomainError);
  EXPECT_THROW(Grid::parse("a:1:3"), DomainError);
  EXPECT_THROW(Grid::parse("0:1:3:4"), DomainError);
}

TEST(Names, ParseRoundTrip) {
  for (auto q : {Quantity::probability, Quantity::fidelity_coherent, Quantity::fidelity_sqv})
    EXPECT_EQ(parse_quantity(to_string(q)), q);
  for (auto a : {Axis::r, Axis::T, Axis::epsilon}) EXPECT_EQ(parse_axis(to_string(a)), a);
  for (auto f : all_figures()) EXPECT_EQ(parse_figure(to_string(f)), f);
  EXPECT_THROW(parse_quantity("speed"), DomainError);
  EXPECT_THROW(parse_axis("d"), DomainError);
  EXPECT_THROW(parse_figure("fig3"), DomainError);
  EXPECT_THROW(parse_scope("medium"), DomainError);
}

SweepRequest mixed_request() {
  SweepRequest req;
  req.quantity = Quantity::fidelity_sqv;
  req.kinds = {ResourceKind::ps, ResourceKind::pa};
  req.photons = {{0, 1}, {1, 1}};
  req.axis = Axis::T;
  req.grid = Grid{0.5, 1.0, 5};
  req.r = 0.8;
  return req;
}

TEST(RunSweep, OrderAndErrorRows) {
  const auto rows = run_sweep(mixed_request());
  ASSERT_EQ(rows.size(), 2u * 2u * 5u);
  EXPECT_EQ(rows[0].kind, ResourceKind::ps);
  EXPECT_EQ(rows[0].n1, 0);
  EXPECT_EQ(rows[0].T1, 1.0);
  EXPECT_EQ(rows[5].n1, 1);
  EXPECT_EQ(rows[10].kind, ResourceKind::pa);
  // Subtraction at unit transmissivity cannot succeed; the row records why.
  const SweepRow& last_ps = rows[9];
  EXPECT_EQ(last_ps.T2, 1.0);
  EXPECT_FALSE(last_ps.error.empty());
  EXPECT_TRUE(std::isnan(last_ps.value));
  EXPECT_TRUE(rows[8].error.empty());
}

TEST(RunSweep, DeterministicAcrossThreadCounts) {
  SweepRequest a = mixed_request();
  a.threads = 1;
  SweepRequest b = mixed_request();
  b.threads = 7;
  const auto ra = run_sweep(a), rb = run_sweep(b);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t k = 0; k < ra.size(); ++k) EXPECT_TRUE(same_row(ra[k], rb[k])) << k;
}

TEST(RunSweep, DegenerateGrid) {
  SweepRequest req;
  req.grid = Grid{0.6, 0.6 + 1e-12, 2};
  const auto rows = run_sweep(req);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].value, rows[1].value, 1e-10 * rows[0].value);
}

TEST(RunSweep, ProbabilityHasInteriorMaximum) {
  SweepRequest req;
  req.grid = Grid{0.05, 2.0, 60};
  const auto rows = run_sweep(req);
  std::size_t best = 0;
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (rows[k].value > rows[best].value) best = k;
  EXPECT_GT(best, 0u);
  EXPECT_LT(best, rows.size() - 1);
}

TEST(RunSweep, FidelityRisesWithTransmissivity) {
  SweepRequest req;
  req.quantity = Quantity::fidelity_coherent;
  req.axis = Axis::T;
  req.grid = Grid{0.5, 0.995, 30};
  const auto rows = run_sweep(req);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_GT(rows[k].value, rows[k - 1].value);
}

TEST(Csv, RoundTripIsExact) {
  const auto rows = run_sweep(mixed_request());
  std::stringstream ss;
  write_csv(ss, rows);
  const auto back = read_csv(ss);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) EXPECT_TRUE(same_row(rows[k], back[k])) << k;
}

TEST(Csv, HeaderAndMalformedInput) {
  std::stringstream ss;
  write_csv(ss, {});
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, kCsvHeader);
  std::stringstream bad("quantity,kind\nprobability,ps\n");
  EXPECT_THROW(read_csv(bad), DomainError);
}

TEST(Jsonl, OneLinePerRow) {
  const auto rows = run_sweep(mixed_request());
  std::stringstream ss;
  write_jsonl(ss, rows);
  std::string line;
  std::size_t n = 0;
  while (std::getline(ss, line)) {
    EXPECT_EQ(line.front(), '{');
    ++n;
  }
  EXPECT_EQ(n, rows.size());
}

TEST(FormatNumber, SeventeenDigits) {
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Perturbation, ParseAndApply) {
  const auto p = Perturbation::parse("k2:1.01");
  EXPECT_EQ(p.coefficient, "k2");
  EXPECT_EQ(p.factor, 1.01);
  auto set = resource_coefficients(ResourceSpec::symmetric(ResourceKind::ps, 1, 0.9, 0.6, 0.5),
                                   PhasePoint::zero(2));
  const Complex before = set.family(2);
  p.apply(set);
  EXPECT_NEAR(std::abs(set.family(2) - 1.01 * before), 0.0, 1e-15);
  EXPECT_THROW(Perturbation::parse("k9:1.01"), DomainError);
  EXPECT_THROW(Perturbation::parse("k2"), DomainError);
}

TEST(Report, CountsFailures) {
  Report r;
  r.add("a", true, "1", "1");
  r.add("b", false, "2", "3");
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.failures(), 1u);
  std::stringstream ss;
  print_report(ss, r);
  EXPECT_NE(ss.str().find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace cvtele::harness
