#include "cvtele/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "cvtele/errors.hpp"

namespace cvtele::harness {

namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_double(std::string_view text, const char* what) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw DomainError(std::string("cannot parse ") + what + " from '" + s + "'");
  }
  return v;
}

int parse_int(std::string_view text, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DomainError(std::string("cannot parse ") + what + " from '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::probability: return "probability";
    case Quantity::fidelity_coherent: return "fidelity_coherent";
    case Quantity::fidelity_sqv: return "fidelity_sqv";
  }
  return "?";
}

std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::r: return "r";
    case Axis::T: return "T";
    case Axis::epsilon: return "epsilon";
  }
  return "?";
}

Quantity parse_quantity(std::string_view text) {
  const std::string s = lowercase(text);
  if (s == "probability") return Quantity::probability;
  if (s == "fidelity_coherent") return Quantity::fidelity_coherent;
  if (s == "fidelity_sqv") return Quantity::fidelity_sqv;
  throw DomainError("unknown quantity '" + std::string(text) + "'");
}

Axis parse_axis(std::string_view text) {
  const std::string s = lowercase(text);
  if (s == "r") return Axis::r;
  if (s == "t") return Axis::T;
  if (s == "epsilon" || s == "eps") return Axis::epsilon;
  throw DomainError("unknown axis '" + std::string(text) + "'");
}

Grid Grid::parse(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
    throw DomainError("grid must look like min:max:steps, got '" + std::string(text) + "'");
  }
  Grid g{parse_double(text.substr(0, a), "grid min"),
         parse_double(text.substr(a + 1, b - a - 1), "grid max"),
         parse_int(text.substr(b + 1), "grid steps")};
  g.validate();
  return g;
}

void Grid::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw DomainError("grid needs finite min < max");
  }
  if (steps < 2) throw DomainError("grid needs at least 2 steps");
}

std::vector<double> Grid::points() const {
  validate();
  std::vector<double> pts(steps);
  for (int i = 0; i < steps; ++i) pts[i] = min + (max - min) * i / (steps - 1);
  pts.back() = max;
  return pts;
}

void SweepRequest::validate() const {
  grid.validate();
  if (kinds.empty()) throw DomainError("sweep needs at least one resource kind");
  if (photons.empty() && std::any_of(kinds.begin(), kinds.end(), [](ResourceKind k) {
        return k != ResourceKind::tmsc;
      })) {
    throw DomainError("sweep needs at least one photon pair");
  }
  if (quantity != Quantity::fidelity_sqv && axis == Axis::epsilon) {
    throw DomainError("the epsilon axis only applies to fidelity_sqv");
  }
  if (axis == Axis::T && !(grid.min > 0.0 && grid.max <= 1.0)) {
    throw DomainError("T grid must lie in (0, 1]");
  }
  if (axis == Axis::r && grid.min < 0.0) throw DomainError("r grid must be >= 0");
  if (axis == Axis::epsilon && grid.min < 0.0) throw DomainError("epsilon grid must be >= 0");
  if (threads < 0) throw DomainError("threads must be >= 0");
}

ResourceSpec SweepRow::spec() const { return ResourceSpec{kind, n1, n2, T1, T2, r, d}; }

bool same_row(const SweepRow& a, const SweepRow& b) {
  const auto eq = [](double x, double y) {
    return (std::isnan(x) && std::isnan(y)) || std::memcmp(&x, &y, sizeof x) == 0;
  };
  return a.quantity == b.quantity && a.kind == b.kind && a.n1 == b.n1 && a.n2 == b.n2 &&
         eq(a.r, b.r) && eq(a.T1, b.T1) && eq(a.T2, b.T2) && eq(a.d, b.d) &&
         eq(a.epsilon, b.epsilon) && eq(a.value, b.value) &&
         eq(a.success_probability, b.success_probability) &&
         eq(a.imag_residue, b.imag_residue) && a.path == b.path && a.error == b.error;
}

SweepRow evaluate_point(Quantity quantity, const ResourceSpec& spec, double epsilon) {
  SweepRow row;
  row.quantity = quantity;
  row.kind = spec.kind;
  row.n1 = spec.n1;
  row.n2 = spec.n2;
  row.r = spec.r;
  row.T1 = spec.T1;
  row.T2 = spec.T2;
  row.d = spec.d;
  row.epsilon = quantity == Quantity::fidelity_sqv ? epsilon : 0.0;
  try {
    if (quantity == Quantity::probability) {
      const ProbabilityReport p = evaluate_success_probability(spec);
      row.value = p.value;
      row.success_probability = p.value;
      row.imag_residue = p.imaginary_residue;
      row.path = std::string(to_string(p.path));
    } else {
      const FidelityReport f = quantity == Quantity::fidelity_coherent
                                   ? fidelity_coherent(spec)
                                   : fidelity_sqv(spec, epsilon);
      row.value = f.fidelity;
      row.success_probability = f.success_probability;
      row.imag_residue = f.imaginary_residue;
      row.path = std::string(to_string(f.path));
    }
  } catch (const std::exception& e) {
    row.value = std::nan("");
    row.success_probability = std::nan("");
    row.imag_residue = std::nan("");
    row.path = "none";
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepRequest& request) {
  request.validate();
  struct Task {
    ResourceSpec spec;
    double epsilon;
  };
  std::vector<Task> tasks;
  const std::vector<double> pts = request.grid.points();
  for (ResourceKind kind : request.kinds) {
    const std::vector<std::pair<int, int>> pairs =
        kind == ResourceKind::tmsc ? std::vector<std::pair<int, int>>{{0, 0}} : request.photons;
    for (const auto& [n1, n2] : pairs) {
      for (double x : pts) {
        Task t{ResourceSpec{kind, n1, n2, request.T1, request.T2, request.r, request.d},
               request.epsilon};
        if (request.axis == Axis::r) t.spec.r = x;
        if (request.axis == Axis::T) t.spec.T1 = t.spec.T2 = x;
        if (request.axis == Axis::epsilon) t.epsilon = x;
        if (request.asymmetric_unit_T1 && kind != ResourceKind::tmsc && n1 == 0) t.spec.T1 = 1.0;
        tasks.push_back(t);
      }
    }
  }

  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      rows[i] = evaluate_point(request.quantity, tasks[i].spec, tasks[i].epsilon);
    }
  };
  unsigned count = request.threads > 0 ? static_cast<unsigned>(request.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
  count = static_cast<unsigned>(std::min<std::size_t>(count, std::max<std::size_t>(1, tasks.size())));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  return rows;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Splits one record; quoted fields may contain commas, doubled quotes and newlines.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool quoted = false, any = false;
  for (int ch; (ch = in.get()) != EOF;) {
    any = true;
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.quantity) << ',' << to_string(r.kind) << ',' << r.n1 << ',' << r.n2 << ','
        << format_number(r.r) << ',' << format_number(r.T1) << ',' << format_number(r.T2) << ','
        << format_number(r.d) << ',' << format_number(r.epsilon) << ','
        << format_number(r.value) << ',' << format_number(r.success_probability) << ','
        << format_number(r.imag_residue) << ',' << csv_field(r.path) << ','
        << csv_field(r.error) << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::vector<std::string> f;
  if (!read_record(in, f)) throw DomainError("read_csv: empty input");
  std::string header;
  for (std::size_t i = 0; i < f.size(); ++i) header += (i ? "," : "") + f[i];
  if (header != kCsvHeader) throw DomainError("read_csv: unexpected header '" + header + "'");
  std::vector<SweepRow> rows;
  while (read_record(in, f)) {
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != 14) {
      throw DomainError("read_csv: row " + std::to_string(rows.size() + 1) + " has " +
                        std::to_string(f.size()) + " fields");
    }
    SweepRow r;
    r.quantity = parse_quantity(f[0]);
    r.kind = parse_resource_kind(f[1]);
    r.n1 = parse_int(f[2], "n1");
    r.n2 = parse_int(f[3], "n2");
    r.r = parse_double(f[4], "r");
    r.T1 = parse_double(f[5], "T1");
    r.T2 = parse_double(f[6], "T2");
    r.d = parse_double(f[7], "d");
    r.epsilon = parse_double(f[8], "epsilon");
    r.value = parse_double(f[9], "value");
    r.success_probability = parse_double(f[10], "success_probability");
    r.imag_residue = parse_double(f[11], "imag_residue");
    r.path = f[12];
    r.error = f[13];
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_jsonl(std::ostream& out, const std::vector<SweepRow>& rows) {
  const auto num = [](double x) -> nlohmann::json {
    if (std::isfinite(x)) return x;
    return nullptr;
  };
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["quantity"] = to_string(r.quantity);
    j["kind"] = to_string(r.kind);
    j["n1"] = r.n1;
    j["n2"] = r.n2;
    j["r"] = r.r;
    j["T1"] = r.T1;
    j["T2"] = r.T2;
    j["d"] = r.d;
    j["epsilon"] = r.epsilon;
    j["value"] = num(r.value);
    j["success_probability"] = num(r.success_probability);
    j["imag_residue"] = num(r.imag_residue);
    j["path"] = r.path;
    j["error"] = r.error;
    out << j.dump() << '\n';
  }
}

void Report::add(std::string name, bool ok, std::string measured, std::string expected) {
  checks.push_back({std::move(name), ok, std::move(measured), std::move(expected)});
}

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

void print_report(std::ostream& out, const Report& report) {
  if (!report.title.empty()) out << "== " << report.title << '\n';
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  measured: " << c.measured
        << "  expected: " << c.expected << '\n';
  }
  out << report.checks.size() - report.failures() << "/" << report.checks.size()
      << " checks passed\n";
}

}  // namespace cvtele::harness
