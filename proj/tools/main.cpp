#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvtele/errors.hpp"
#include "cvtele/harness.hpp"

using namespace cvtele;
using namespace cvtele::harness;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct PointOptions {
  std::vector<std::string> kinds{"ps"};
  int n1 = 1;
  int n2 = 1;
  std::string pairs;
  double r = 0.8;
  double T1 = 0.9;
  double T2 = 0.9;
  double T = 0.9;
  double d = 0.5;
  std::string input = "coherent";
  double epsilon = 0.3;
  std::string quantity = "probability";
  std::string axis = "r";
  std::string grid = "0.05:2:40";
  std::string out;
  std::string format = "csv";
  std::string config;
  int threads = 0;
};

void add_point_flags(CLI::App& cmd, PointOptions& o, bool sweep) {
  cmd.add_option("--kind", o.kinds, sweep ? "Resource kinds: ps, pa, tmsc (repeat or comma-separate)"
                                          : "Resource kind: ps, pa or tmsc")
      ->delimiter(',');
  cmd.add_option("--n1", o.n1, "Photons subtracted/added on mode A1");
  cmd.add_option("--n2", o.n2, "Photons subtracted/added on mode A2");
  cmd.add_option("--r", o.r, "Two-mode squeezing r");
  cmd.add_option("--T1", o.T1, "Beam splitter transmissivity on A1");
  cmd.add_option("--T2", o.T2, "Beam splitter transmissivity on A2");
  cmd.add_option("--T", o.T, "Sets T1 and T2 together");
  cmd.add_option("--d", o.d, "Displacement d of both modes");
  cmd.add_option("--input", o.input, "Input state: coherent or sqv")
      ->check(CLI::IsMember({"coherent", "sqv"}));
  cmd.add_option("--epsilon", o.epsilon, "Squeezing of the squeezed-vacuum input");
  cmd.add_option("--quantity", o.quantity,
                 "probability, fidelity (input chosen by --input), fidelity_coherent, fidelity_sqv");
  cmd.add_option("--out", o.out, sweep ? "Output file (default: stdout)" : "Output file");
  cmd.add_option("--format", o.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  cmd.add_option("--config", o.config, "JSON file of defaults; flags override it");
  if (sweep) {
    cmd.add_option("--pairs", o.pairs, "Photon pairs as n1,n2;n1,n2 (overrides --n1/--n2)");
    cmd.add_option("--axis", o.axis, "Swept parameter: r, T or epsilon");
    cmd.add_option("--grid", o.grid, "Grid as min:max:steps");
    cmd.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  }
}

// Fills options not given on the command line from the JSON config, then
// lets --T stand in for whichever of T1/T2 was given nowhere.
void apply_config(CLI::App& cmd, PointOptions& o) {
  std::set<std::string> configured;
  const auto on_command_line = [&](const std::string& key) {
    const CLI::Option* opt = cmd.get_option_no_throw("--" + key);
    return opt != nullptr && opt->count() > 0;
  };
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw DomainError("cannot open config file " + o.config);
    const nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw DomainError("config file must hold a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
      if (key == "config" || cmd.get_option_no_throw("--" + key) == nullptr) {
        throw DomainError("unknown config key '" + key + "'");
      }
      configured.insert(key);
      if (on_command_line(key)) continue;
      try {
        if (key == "kind") {
          o.kinds = value.is_array() ? value.get<std::vector<std::string>>()
                                     : std::vector<std::string>{value.get<std::string>()};
        } else if (key == "n1") o.n1 = value.get<int>();
        else if (key == "n2") o.n2 = value.get<int>();
        else if (key == "pairs") o.pairs = value.get<std::string>();
        else if (key == "r") o.r = value.get<double>();
        else if (key == "T1") o.T1 = value.get<double>();
        else if (key == "T2") o.T2 = value.get<double>();
        else if (key == "T") o.T = value.get<double>();
        else if (key == "d") o.d = value.get<double>();
        else if (key == "input") o.input = value.get<std::string>();
        else if (key == "epsilon") o.epsilon = value.get<double>();
        else if (key == "quantity") o.quantity = value.get<std::string>();
        else if (key == "axis") o.axis = value.get<std::string>();
        else if (key == "grid") o.grid = value.get<std::string>();
        else if (key == "out") o.out = value.get<std::string>();
        else if (key == "format") o.format = value.get<std::string>();
        else if (key == "threads") o.threads = value.get<int>();
      } catch (const nlohmann::json::exception&) {
        throw DomainError("config key '" + key + "' has the wrong type");
      }
    }
  }
  const auto given = [&](const std::string& key) {
    return on_command_line(key) || configured.count(key) > 0;
  };
  if (given("T")) {
    if (!given("T1")) o.T1 = o.T;
    if (!given("T2")) o.T2 = o.T;
  }
  if (o.input != "coherent" && o.input != "sqv") throw DomainError("input must be coherent or sqv");
  if (o.format != "csv" && o.format != "jsonl") throw DomainError("format must be csv or jsonl");
}

Quantity resolve_quantity(const PointOptions& o) {
  if (o.quantity == "fidelity") {
    return o.input == "sqv" ? Quantity::fidelity_sqv : Quantity::fidelity_coherent;
  }
  return parse_quantity(o.quantity);
}

std::vector<std::pair<int, int>> resolve_pairs(const PointOptions& o) {
  if (o.pairs.empty()) return {{o.n1, o.n2}};
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(o.pairs);
  for (std::string item; std::getline(ss, item, ';');) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw DomainError("pair '" + item + "' needs n1,n2");
    try {
      out.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
    } catch (const std::exception&) {
      throw DomainError("pair '" + item + "' is not two integers");
    }
  }
  if (out.empty()) throw DomainError("--pairs is empty");
  return out;
}

void emit(const std::vector<SweepRow>& rows, const PointOptions& o) {
  const auto write = [&](std::ostream& out) {
    if (o.format == "jsonl") write_jsonl(out, rows);
    else write_csv(out, rows);
  };
  if (o.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  write(f);
}

int run_sweep_cmd(CLI::App& cmd, PointOptions& o) {
  apply_config(cmd, o);
  SweepRequest req;
  req.quantity = resolve_quantity(o);
  req.kinds.clear();
  for (const auto& k : o.kinds) req.kinds.push_back(parse_resource_kind(k));
  req.photons = resolve_pairs(o);
  req.axis = parse_axis(o.axis);
  req.grid = Grid::parse(o.grid);
  req.r = o.r;
  req.T1 = o.T1;
  req.T2 = o.T2;
  req.d = o.d;
  req.epsilon = o.epsilon;
  req.threads = o.threads;
  const auto rows = run_sweep(req);
  emit(rows, o);
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
  if (failed > 0) std::cerr << failed << " of " << rows.size() << " points failed\n";
  return failed == 0 ? kExitPass : kExitFail;
}

int run_eval_cmd(CLI::App& cmd, PointOptions& o) {
  apply_config(cmd, o);
  if (o.kinds.size() != 1) throw DomainError("eval takes exactly one --kind");
  const ResourceSpec spec{parse_resource_kind(o.kinds.front()), o.n1, o.n2, o.T1, o.T2, o.r, o.d};
  spec.validate();
  const SweepRow row = evaluate_point(resolve_quantity(o), spec, o.epsilon);
  emit({row}, o);
  if (!row.error.empty()) std::cerr << "error: " << row.error << '\n';
  return row.error.empty() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation fidelity and success probability of photon-subtracted and "
               "photon-added two-mode squeezed coherent resources"};
  app.require_subcommand(1);

  PointOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a quantity over a one-parameter grid");
  add_point_flags(*sweep, sweep_opts, true);

  PointOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "Evaluate a quantity at one parameter point");
  add_point_flags(*eval, eval_opts, false);

  std::vector<std::string> figures;
  std::string repro_dir = "data";
  std::string repro_format = "csv";
  auto* repro = app.add_subcommand("reproduce", "Regenerate figure/table datasets and check them");
  repro->add_option("figure", figures, "fig2 fig4 fig5 fig6 fig7 fig8 table1, or all")
      ->required();
  repro->add_option("--out", repro_dir, "Output directory");
  repro->add_option("--format", repro_format, "csv, or jsonl to also write JSON lines")
      ->check(CLI::IsMember({"csv", "jsonl"}));

  std::string scope = "fast";
  std::string perturb;
  unsigned seed = VerifyOptions{}.seed;
  auto* ver = app.add_subcommand("verify", "Cross-check the closed forms against the Fock oracle");
  ver->add_option("--scope", scope, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  ver->add_option("--perturb", perturb, "Scale one coefficient, e.g. k2:1.01");
  ver->add_option("--seed", seed, "Seed for the random dual-path points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (sweep->parsed()) return run_sweep_cmd(*sweep, sweep_opts);
    if (eval->parsed()) return run_eval_cmd(*eval, eval_opts);
    if (repro->parsed()) {
      std::vector<Figure> todo;
      for (const auto& f : figures) {
        if (f == "all") todo = all_figures();
        else todo.push_back(parse_figure(f));
      }
      bool ok = true;
      for (Figure f : todo) {
        const Reproduction r = reproduce(f, repro_dir, repro_format == "jsonl");
        print_report(std::cout, r.report);
        for (const auto& file : r.files) std::cout << "wrote " << file.string() << '\n';
        ok = ok && r.report.passed();
      }
      return ok ? kExitPass : kExitFail;
    }
    if (ver->parsed()) {
      VerifyOptions opt;
      opt.scope = parse_scope(scope);
      opt.seed = seed;
      if (!perturb.empty()) opt.perturbation = Perturbation::parse(perturb);
      const Report r = verify(opt);
      print_report(std::cout, r);
      return r.passed() ? kExitPass : kExitFail;
    }
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
