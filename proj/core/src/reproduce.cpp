#include <cmath>
#include <fstream>
#include <sstream>

#include "cvtele/errors.hpp"
#include "cvtele/harness.hpp"

namespace cvtele::harness {

std::string_view to_string(Figure f) {
  switch (f) {
    case Figure::fig2: return "fig2";
    case Figure::fig4: return "fig4";
    case Figure::fig5: return "fig5";
    case Figure::fig6: return "fig6";
    case Figure::fig7: return "fig7";
    case Figure::fig8: return "fig8";
    case Figure::table1: return "table1";
  }
  return "?";
}

const std::vector<Figure>& all_figures() {
  static const std::vector<Figure> figures{Figure::fig2, Figure::fig4, Figure::fig5,
                                           Figure::fig6, Figure::fig7, Figure::fig8,
                                           Figure::table1};
  return figures;
}

Figure parse_figure(std::string_view text) {
  for (Figure f : all_figures()) {
    if (to_string(f) == text) return f;
  }
  throw DomainError("unknown figure '" + std::string(text) + "'");
}

namespace {

constexpr double kD = 0.5;
constexpr int kSteps = 100;
const std::vector<std::pair<int, int>> kSeries{{0, 1}, {1, 1}, {0, 3}, {3, 3}};

std::string num(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

struct Panel {
  std::string name;
  SweepRequest request;
};

double axis_value(const SweepRow& row, Axis axis) {
  switch (axis) {
    case Axis::r: return row.r;
    case Axis::T: return row.T2;
    case Axis::epsilon: return row.epsilon;
  }
  return 0.0;
}

struct Curve {
  std::vector<double> x, y;
};

Curve curve(const std::vector<SweepRow>& rows, Axis axis, ResourceKind kind, int n1, int n2) {
  Curve c;
  for (const auto& row : rows) {
    if (row.kind == kind && row.n1 == n1 && row.n2 == n2 && row.error.empty()) {
      c.x.push_back(axis_value(row, axis));
      c.y.push_back(row.value);
    }
  }
  return c;
}

class Builder {
 public:
  Builder(std::filesystem::path dir, bool jsonl, Reproduction& out)
      : dir_(std::move(dir)), jsonl_(jsonl), out_(out) {
    std::filesystem::create_directories(dir_);
  }

  std::vector<SweepRow> emit(const Panel& panel) {
    std::vector<SweepRow> rows = run_sweep(panel.request);
    const auto csv = dir_ / (panel.name + ".csv");
    std::ofstream f(csv);
    write_csv(f, rows);
    if (!f) throw std::runtime_error("cannot write " + csv.string());
    out_.files.push_back(csv);
    if (jsonl_) {
      const auto js = dir_ / (panel.name + ".jsonl");
      std::ofstream g(js);
      write_jsonl(g, rows);
      out_.files.push_back(js);
    }
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
    out_.report.add(panel.name + ": every grid point evaluated", failed == 0,
                    std::to_string(failed) + " failed of " + std::to_string(rows.size()),
                    "0 failed");
    return rows;
  }

 private:
  std::filesystem::path dir_;
  bool jsonl_;
  Reproduction& out_;
};

SweepRequest base_request(Quantity q, ResourceKind kind, bool with_tmsc, Axis axis, Grid grid,
                          double r, double T, double eps) {
  SweepRequest req;
  req.quantity = q;
  req.kinds = {kind};
  if (with_tmsc) req.kinds.push_back(ResourceKind::tmsc);
  req.photons = kSeries;
  req.axis = axis;
  req.grid = grid;
  req.r = r;
  req.T1 = req.T2 = T;
  req.d = kD;
  req.epsilon = eps;
  return req;
}

const Grid kTGrid{0.5, 0.995, kSteps};
const Grid kRGrid{0.05, 2.0, kSteps};
const Grid kEpsGrid{0.0, 1.5, kSteps};

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

// Index of the maximum, reported with its abscissa.
std::pair<std::size_t, double> argmax(const Curve& c) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.y.size(); ++i) {
    if (c.y[i] > c.y[best]) best = i;
  }
  return {best, c.x.empty() ? 0.0 : c.x[best]};
}

std::string join(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "]";
}

void probability_checks(Report& report, ResourceKind kind, const std::vector<SweepRow>& by_r) {
  const std::string op = kind == ResourceKind::ps ? "PS" : "PA";
  std::vector<double> p;
  for (double T : {0.5, 0.7, 0.9, 0.999}) {
    p.push_back(success_probability(ResourceSpec::symmetric(kind, 1, T, 0.6, kD)));
  }
  report.add("Sym 1-" + op + " P strictly decreasing in T on {0.5, 0.7, 0.9, 0.999} (r=0.6)",
             strictly_decreasing(p), join(p), "strictly decreasing");

  const Curve sym = curve(by_r, Axis::r, kind, 1, 1);
  const auto [at, r_max] = argmax(sym);
  report.add("Sym 1-" + op + " P has an interior maximum in r on [0.05, 2] (T=0.9)",
             at > 0 && at + 1 < sym.y.size(), "maximum at r=" + num(r_max), "interior maximum");

  for (int n : {1, 3}) {
    const Curve s = curve(by_r, Axis::r, kind, n, n);
    const Curve a = curve(by_r, Axis::r, kind, 0, n);
    std::size_t violations = 0;
    for (std::size_t i = 0; i < std::min(s.y.size(), a.y.size()); ++i) {
      violations += s.y[i] < a.y[i] ? 0 : 1;
    }
    report.add("Sym " + std::to_string(n) + "-" + op + " P below Asym " + std::to_string(n) +
                   "-" + op + " over the r grid",
               violations == 0 && !s.y.empty(), std::to_string(violations) + " violations",
               "0 violations");
  }
}

// Advantage of a resource over TMSC on a fine r grid, as [first, last] plus contiguity.
struct Interval {
  bool empty = true;
  bool contiguous = true;
  double first = 0.0;
  double last = 0.0;
};

Interval advantage_interval(const ResourceSpec& base, bool sqv, double eps) {
  Interval iv;
  bool previous = false;
  for (int i = 1; i <= 220; ++i) {
    const double r = 0.01 * i;
    ResourceSpec s = base;
    s.r = r;
    const double f = sqv ? fidelity_sqv(s, eps).fidelity : fidelity_coherent(s).fidelity;
    const double t = sqv ? fidelity_tmsc_sqv(r, s.d, eps) : fidelity_tmsc_coherent(r, s.d);
    const bool better = f > t;
    if (better) {
      if (iv.empty) iv.first = r;
      else if (!previous) iv.contiguous = false;
      iv.empty = false;
      iv.last = r;
    }
    previous = better;
  }
  return iv;
}

std::string describe(const Interval& iv) {
  if (iv.empty) return "empty";
  return "[" + num(iv.first) + ", " + num(iv.last) + "]" + (iv.contiguous ? "" : " with gaps");
}

constexpr double kEdgeTolerance = 0.1;

void interval_check(Report& report, const std::string& name, const ResourceSpec& base, bool sqv,
                    std::optional<std::pair<double, double>> expected) {
  const Interval iv = advantage_interval(base, sqv, 0.3);
  bool ok;
  std::string want;
  if (!expected) {
    ok = iv.empty;
    want = "empty on r in (0, 2.2]";
  } else {
    ok = !iv.empty && iv.contiguous && std::abs(iv.first - expected->first) <= kEdgeTolerance &&
         std::abs(iv.last - expected->second) <= kEdgeTolerance;
    want = "[" + num(expected->first) + ", " + num(expected->second) + "] +/- 0.1";
  }
  report.add(name, ok, describe(iv), want);
}

void decade_check(Report& report, const std::string& name, const ResourceSpec& spec, double order) {
  const double p = success_probability(spec);
  const double gap = std::abs(std::log10(p) - std::log10(order));
  report.add(name, gap <= 1.0, num(p), "within one decade of " + num(order));
}

}  // namespace

Reproduction reproduce(Figure figure, const std::filesystem::path& out_dir, bool jsonl) {
  Reproduction out;
  out.report.title = std::string(to_string(figure));
  Builder b(out_dir, jsonl, out);
  Report& rep = out.report;
  const std::string fig(to_string(figure));

  switch (figure) {
    case Figure::fig2:
    case Figure::fig4: {
      const ResourceKind kind = figure == Figure::fig2 ? ResourceKind::ps : ResourceKind::pa;
      b.emit({fig + "a", base_request(Quantity::probability, kind, false, Axis::T, kTGrid, 0.8,
                                      0.9, 0.0)});
      const auto by_r = b.emit({fig + "b", base_request(Quantity::probability, kind, false,
                                                        Axis::r, kRGrid, 0.8, 0.9, 0.0)});
      probability_checks(rep, kind, by_r);
      break;
    }
    case Figure::fig5: {
      const auto by_T = b.emit({fig + "a", base_request(Quantity::fidelity_coherent,
                                                        ResourceKind::ps, true, Axis::T, kTGrid,
                                                        0.8, 0.9, 0.0)});
      const auto by_r = b.emit({fig + "b", base_request(Quantity::fidelity_coherent,
                                                        ResourceKind::ps, true, Axis::r, kRGrid,
                                                        0.8, 0.9, 0.0)});
      const Curve sym = curve(by_r, Axis::r, ResourceKind::ps, 1, 1);
      const Curve tm = curve(by_r, Axis::r, ResourceKind::tmsc, 0, 0);
      std::size_t losses = 0;
      double last_win = 0.0;
      for (std::size_t i = 0; i < std::min(sym.y.size(), tm.y.size()); ++i) {
        if (sym.x[i] <= 0.7 + 1e-12 && !(sym.y[i] > tm.y[i])) ++losses;
        if (sym.y[i] > tm.y[i]) last_win = sym.x[i];
      }
      rep.add("Sym 1-PS above TMSC on r in [0.05, 0.7]", losses == 0 && !sym.y.empty(),
              std::to_string(losses) + " grid points at or below TMSC", "none");
      rep.add("Sym 1-PS advantage ends within [0.7, 0.9]", last_win >= 0.7 && last_win <= 0.9,
              "last advantageous grid r = " + num(last_win), "0.8 +/- 0.1");
      const auto f = [](ResourceSpec s) { return fidelity_coherent(s).fidelity; };
      const double s12 = f(ResourceSpec::symmetric(ResourceKind::ps, 1, 0.9, 1.2, kD));
      rep.add("Sym 1-PS below TMSC at r=1.2", s12 < fidelity_tmsc_coherent(1.2, kD), num(s12),
              "< " + num(fidelity_tmsc_coherent(1.2, kD)));
      const double a02 = f(ResourceSpec::asymmetric(ResourceKind::ps, 1, 0.9, 0.2, kD));
      rep.add("Asym 1-PS above TMSC at r=0.2", a02 > fidelity_tmsc_coherent(0.2, kD), num(a02),
              "> " + num(fidelity_tmsc_coherent(0.2, kD)));
      const double a08 = f(ResourceSpec::asymmetric(ResourceKind::ps, 1, 0.9, 0.8, kD));
      rep.add("Asym 1-PS below TMSC at r=0.8", a08 < fidelity_tmsc_coherent(0.8, kD), num(a08),
              "< " + num(fidelity_tmsc_coherent(0.8, kD)));
      const Curve symT = curve(by_T, Axis::T, ResourceKind::ps, 1, 1);
      rep.add("Sym 1-PS fidelity increases with T (r=0.8)", strictly_increasing(symT.y),
              num(symT.y.front()) + " .. " + num(symT.y.back()), "strictly increasing");
      break;
    }
    case Figure::fig6:
    case Figure::fig8: {
      const bool ps = figure == Figure::fig6;
      const ResourceKind kind = ps ? ResourceKind::ps : ResourceKind::pa;
      const double T = ps ? 0.9 : 0.99;
      const auto by_eps = b.emit({fig + "a", base_request(Quantity::fidelity_sqv, kind, true,
                                                          Axis::epsilon, kEpsGrid, 0.8, T, 0.3)});
      b.emit({fig + "b",
              base_request(Quantity::fidelity_sqv, kind, true, Axis::T, kTGrid, 0.8, 0.9, 0.3)});
      b.emit({fig + "c",
              base_request(Quantity::fidelity_sqv, kind, true, Axis::r, kRGrid, 0.8, T, 0.3)});
      const Curve tm = curve(by_eps, Axis::epsilon, ResourceKind::tmsc, 0, 0);
      const auto [at, eps_max] = argmax(tm);
      rep.add("TMSC fidelity has an interior maximum in epsilon, then decreases (r=0.8)",
              at > 0 && at + 1 < tm.y.size() && tm.y.back() < tm.y[at],
              "maximum at epsilon=" + num(eps_max), "interior maximum");
      if (ps) {
        const double s = fidelity_sqv(ResourceSpec::symmetric(kind, 1, 0.9, 0.6, kD), 0.3).fidelity;
        rep.add("Sym 1-PS above TMSC at r=0.6, epsilon=0.3", s > fidelity_tmsc_sqv(0.6, kD, 0.3),
                num(s), "> " + num(fidelity_tmsc_sqv(0.6, kD, 0.3)));
      } else {
        const double s =
            fidelity_sqv(ResourceSpec::symmetric(kind, 3, 0.99, 1.2, kD), 0.3).fidelity;
        rep.add("Sym 3-PA above TMSC at r=1.2, epsilon=0.3 (T=0.99)",
                s > fidelity_tmsc_sqv(1.2, kD, 0.3), num(s),
                "> " + num(fidelity_tmsc_sqv(1.2, kD, 0.3)));
      }
      break;
    }
    case Figure::fig7: {
      b.emit({fig + "a", base_request(Quantity::fidelity_coherent, ResourceKind::pa, true,
                                      Axis::T, kTGrid, 0.8, 0.9, 0.0)});
      b.emit({fig + "b", base_request(Quantity::fidelity_coherent, ResourceKind::pa, true,
                                      Axis::r, kRGrid, 0.8, 0.9, 0.0)});
      for (const bool sym : {true, false}) {
        for (double r : {0.4, 0.8}) {
          const ResourceSpec s = sym ? ResourceSpec::symmetric(ResourceKind::pa, 1, 0.9, r, kD)
                                     : ResourceSpec::asymmetric(ResourceKind::pa, 1, 0.9, r, kD);
          const double f = fidelity_coherent(s).fidelity;
          const double t = fidelity_tmsc_coherent(r, kD);
          rep.add(s.label() + " below TMSC at r=" + num(r), f < t, num(f), "< " + num(t));
          rep.add(s.label() + " above 1/2 at r=" + num(r), f > 0.5, num(f), "> 0.5");
        }
      }
      break;
    }
    case Figure::table1: {
      b.emit({"table1_probability", base_request(Quantity::probability, ResourceKind::ps, false,
                                                 Axis::r, kRGrid, 0.6, 0.9, 0.0)});
      b.emit({"table1_coherent", base_request(Quantity::fidelity_coherent, ResourceKind::ps,
                                              true, Axis::r, kRGrid, 0.6, 0.9, 0.0)});
      SweepRequest pa = base_request(Quantity::fidelity_sqv, ResourceKind::pa, true, Axis::r,
                                     kRGrid, 1.0, 0.99, 0.3);
      pa.photons = {{3, 3}};
      b.emit({"table1_sqv_pa", pa});

      const ResourceSpec asym1 = ResourceSpec::asymmetric(ResourceKind::ps, 1, 0.9, 0.2, kD);
      const ResourceSpec sym1 = ResourceSpec::symmetric(ResourceKind::ps, 1, 0.9, 0.6, kD);
      const ResourceSpec sym3 = ResourceSpec::symmetric(ResourceKind::ps, 3, 0.9, 0.6, kD);
      const ResourceSpec sym3pa = ResourceSpec::symmetric(ResourceKind::pa, 3, 0.99, 1.0, kD);
      using R = std::pair<double, double>;
      interval_check(rep, "Asym 1-PS coherent advantage (T=0.9)", asym1, false, R{0.0, 0.4});
      interval_check(rep, "Asym 1-PS squeezed-vacuum advantage (T=0.9)", asym1, true, R{0.0, 0.2});
      decade_check(rep, "Asym 1-PS probability at r=0.2", asym1, 1e-2);
      interval_check(rep, "Sym 1-PS coherent advantage (T=0.9)", sym1, false, R{0.0, 0.8});
      interval_check(rep, "Sym 1-PS squeezed-vacuum advantage (T=0.9)", sym1, true, R{0.0, 1.0});
      decade_check(rep, "Sym 1-PS probability at r=0.6", sym1, 1e-2);
      interval_check(rep, "Sym 3-PS coherent advantage (T=0.9)", sym3, false, R{0.0, 0.8});
      interval_check(rep, "Sym 3-PS squeezed-vacuum advantage (T=0.9)", sym3, true, R{0.0, 1.1});
      decade_check(rep, "Sym 3-PS probability at r=0.6", sym3, 1e-5);
      for (double T : {0.5, 0.7, 0.9, 0.99}) {
        ResourceSpec s = sym3pa;
        s.T1 = s.T2 = T;
        interval_check(rep, "Sym 3-PA coherent advantage (T=" + num(T) + ")", s, false,
                       std::nullopt);
      }
      interval_check(rep, "Sym 3-PA squeezed-vacuum advantage (T=0.99)", sym3pa, true,
                     R{0.6, 2.0});
      decade_check(rep, "Sym 3-PA probability at r=1", sym3pa, 1e-8);
      break;
    }
  }
  return out;
}

}  // namespace cvtele::harness
