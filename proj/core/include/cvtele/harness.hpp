#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cvtele/fock_oracle.hpp"
#include "cvtele/resource.hpp"
#include "cvtele/teleportation.hpp"

namespace cvtele::harness {

enum class Quantity { probability, fidelity_coherent, fidelity_sqv };
enum class Axis { r, T, epsilon };

std::string_view to_string(Quantity q);
std::string_view to_string(Axis a);
/// Throw DomainError on unknown names.
Quantity parse_quantity(std::string_view text);
Axis parse_axis(std::string_view text);

/// Evenly spaced points min..max inclusive.
struct Grid {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  /// Parses "min:max:steps".
  static Grid parse(std::string_view text);
  /// Throws DomainError unless min < max and steps >= 2.
  void validate() const;
  std::vector<double> points() const;
};

struct SweepRequest {
  Quantity quantity = Quantity::probability;
  std::vector<ResourceKind> kinds{ResourceKind::ps};
  std::vector<std::pair<int, int>> photons{{1, 1}};
  Axis axis = Axis::r;
  Grid grid;
  double r = 0.8;
  double T1 = 0.9;
  double T2 = 0.9;
  double d = 0.5;
  double epsilon = 0.3;
  /// A pair with n1 = 0 is taken as asymmetric operation on A2, with T1 = 1.
  bool asymmetric_unit_T1 = true;
  /// 0 uses std::thread::hardware_concurrency().
  int threads = 0;

  void validate() const;
};

struct SweepRow {
  Quantity quantity = Quantity::probability;
  ResourceKind kind = ResourceKind::ps;
  int n1 = 0;
  int n2 = 0;
  double r = 0.0;
  double T1 = 1.0;
  double T2 = 1.0;
  double d = 0.0;
  double epsilon = 0.0;
  double value = 0.0;
  double success_probability = 0.0;
  double imag_residue = 0.0;
  std::string path;
  /// Empty on success; otherwise the message of the error the point raised.
  std::string error;

  ResourceSpec spec() const;
};

/// Exact equality, with NaN equal to NaN.
bool same_row(const SweepRow& a, const SweepRow& b);

/// Evaluates one quantity at one point, recording errors in the row.
SweepRow evaluate_point(Quantity quantity, const ResourceSpec& spec, double epsilon);

/// Rows in order kind, then photon pair, then grid point. Evaluation runs on
/// a pool of worker threads; the result does not depend on scheduling.
std::vector<SweepRow> run_sweep(const SweepRequest& request);

inline constexpr std::string_view kCsvHeader =
    "quantity,kind,n1,n2,r,T1,T2,d,epsilon,value,success_probability,imag_residue,path,error";

/// 17 significant digits.
std::string format_number(double x);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
/// Throws DomainError on a malformed header or row.
std::vector<SweepRow> read_csv(std::istream& in);
void write_jsonl(std::ostream& out, const std::vector<SweepRow>& rows);

struct Check {
  std::string name;
  bool passed = false;
  std::string measured;
  std::string expected;
};

struct Report {
  std::string title;
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string measured, std::string expected);
  bool passed() const;
  std::size_t failures() const;
};

/// One line per check, then a summary line.
void print_report(std::ostream& out, const Report& report);

enum class Figure { fig2, fig4, fig5, fig6, fig7, fig8, table1 };

std::string_view to_string(Figure f);
Figure parse_figure(std::string_view text);
const std::vector<Figure>& all_figures();

struct Reproduction {
  Report report;
  std::vector<std::filesystem::path> files;
};

/// Writes the figure's datasets (CSV, and JSON lines if `jsonl`) into
/// `out_dir` and checks the claims attached to it.
Reproduction reproduce(Figure figure, const std::filesystem::path& out_dir, bool jsonl = false);

enum class Scope { fast, full };

Scope parse_scope(std::string_view text);

/// Scales one named closed-form coefficient, to show that verification
/// notices. Names: a0, k1..k7, o2, o3, o5, o6.
struct Perturbation {
  std::string coefficient;
  double factor = 1.0;

  /// Parses "name:factor".
  static Perturbation parse(std::string_view text);
  void apply(CoefficientSet& set) const;
};

struct VerifyOptions {
  Scope scope = Scope::fast;
  std::optional<Perturbation> perturbation;
  /// Seed of the random points in the dual-path suite.
  unsigned seed = 20240611;
};

/// Analytic-versus-oracle grids and the dual-path suite. Fast: n <= 1 with
/// oracle cutoff 24. Full: n <= 3 with default cutoffs, plus the table1
/// interval and probability checks.
Report verify(const VerifyOptions& options);

}  // namespace cvtele::harness
