// transurf command-line front end: verify, mesh, probe, families, crosscheck.
// Exit codes: 0 pass, 2 fail, 1 error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "transurf/catalog.hpp"
#include "transurf/errors.hpp"
#include "transurf/spec_doc.hpp"
#include "transurf/verify.hpp"

namespace {

using namespace transurf;

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitFail = 2;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string shortest(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct VerifyArgs {
  std::string spec_path;
  std::string quantity = "K";
  std::optional<double> expected;
  double tol = kTolK;
  std::string grid = "21x21";
  std::string json_out;
  std::string csv_out;
  unsigned threads = 1;
};

int run_verify(const VerifyArgs& a) {
  const ParsedSpec spec = parse_surface_spec(read_file(a.spec_path));
  const auto [ns, nt] = parse_grid_counts(a.grid);
  const GridSpec grid = grid_over(spec.surface.domain(), ns, nt);
  const SampleSet set = sample_curvature(spec.surface, spec.metric, grid, a.threads);
  const Quantity q = a.quantity == "H" ? Quantity::H : Quantity::K;
  const ConstancyReport r = check_constancy(set, q, a.expected, a.tol);

  std::optional<std::string> samples_path;
  if (!a.csv_out.empty()) {
    write_text_file(a.csv_out, samples_csv(set));
    samples_path = a.csv_out;
  }
  if (!a.json_out.empty()) {
    write_text_file(a.json_out, verify_report_json(spec_digest(spec.canonical), {r}, samples_path));
  }
  std::cout << to_string(r.quantity) << ": " << to_string(r.verdict) << " (max_abs_dev "
            << shortest(r.max_abs_dev) << ", tol " << shortest(r.tol) << ", samples "
            << r.n_samples << ", skipped " << r.skipped_degenerate << ")\n";
  return r.verdict == Verdict::Pass ? kExitPass : kExitFail;
}

int run_mesh(const std::string& spec_path, const std::string& grid_text, const std::string& out,
             unsigned threads) {
  const ParsedSpec spec = parse_surface_spec(read_file(spec_path));
  const auto [ns, nt] = parse_grid_counts(grid_text);
  export_obj(spec.surface, spec.metric, grid_over(spec.surface.domain(), ns, nt), out, threads);
  std::cout << "wrote " << out << " (" << ns * nt << " vertices, " << 2 * (ns - 1) * (nt - 1)
            << " faces)\n";
  return kExitPass;
}

int run_probe(const std::string& id, double K0, std::uint64_t seed, int budget,
              const std::string& json_out, unsigned threads) {
  const auto kind = probe_from_id(id);
  if (!kind) throw SpecError("unknown probe problem '" + id + "'");
  const ProbeResult r = nonexistence_probe({*kind, K0}, seed, budget, threads);
  const std::string doc = probe_report_json(r);
  if (!json_out.empty()) {
    write_text_file(json_out, doc);
  } else {
    std::cout << doc;
  }
  std::cerr << "best_residual " << shortest(r.best_residual) << "\n";
  return kExitPass;
}

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

int run_crosscheck(const std::string& id, int steps, const std::vector<std::string>& raw_params,
                   std::optional<std::pair<double, double>> range, double tol) {
  std::map<std::string, double> p;
  for (const auto& kv : raw_params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw SpecError("--param expects key=value, got '" + kv + "'");
    p[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  OdeProblem ode;
  Interval I;
  if (id == "tan") {
    ode = TanOde{param(p, "a", 1.0), param(p, "k", 1.0), param(p, "d", 0.0)};
    I = {0.0, 1.2};
  } else if (id == "exp") {
    ode = ExpBranchOde{param(p, "b", 1.0), param(p, "c", 1.0), param(p, "p", 1.0),
                       param(p, "q", 1.0)};
    I = {0.0, 1.0};
  } else if (id == "power") {
    ode = PowerBranchOde{param(p, "a", 2.0), param(p, "b", 1.0), param(p, "c", 1.0),
                         param(p, "p", 1.0), param(p, "q", 1.0)};
    I = {0.0, 0.5};
  } else {
    throw SpecError("unknown ode '" + id + "' (expected tan, exp or power)");
  }
  if (range) I = {range->first, range->second};
  const double err = ode_crosscheck(ode, I, steps);
  std::cout << "{\"ode\": \"" << id << "\", \"steps\": " << steps
            << ", \"max_error\": " << shortest(err) << "}\n";
  return err < tol ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature verification for translation and homothetical surfaces"};
  app.require_subcommand(1);

  VerifyArgs va;
  double expected = 0.0;
  auto* verify = app.add_subcommand("verify", "Certify constancy of K or H over a grid");
  verify->add_option("spec", va.spec_path, "Surface spec JSON")->required();
  verify->add_option("--quantity", va.quantity)->check(CLI::IsMember({"K", "H"}));
  auto* expected_opt = verify->add_option("--expected", expected);
  verify->add_option("--tol", va.tol);
  verify->add_option("--grid", va.grid, "NSxNT");
  verify->add_option("--json", va.json_out);
  verify->add_option("--csv", va.csv_out);
  verify->add_option("--threads", va.threads)->check(CLI::PositiveNumber);

  std::string mesh_spec, mesh_grid = "21x21", mesh_out;
  auto* mesh = app.add_subcommand("mesh", "Export a Wavefront OBJ mesh");
  mesh->add_option("spec", mesh_spec)->required();
  mesh->add_option("--grid", mesh_grid);
  mesh->add_option("-o,--output", mesh_out)->required();
  unsigned mesh_threads = 1;
  mesh->add_option("--threads", mesh_threads)->check(CLI::PositiveNumber);

  std::string probe_problem = "homothetical_nonzero_k", probe_json;
  double probe_k0 = 1.0;
  std::uint64_t probe_seed = 42;
  int probe_budget = 20;
  unsigned probe_threads = 1;
  auto* probe = app.add_subcommand("probe", "Search for constant-K counterexamples");
  probe->add_option("--problem", probe_problem)
      ->check(CLI::IsMember({"homothetical_nonzero_k", "translation_planar_generator"}));
  probe->add_option("--K0", probe_k0);
  probe->add_option("--seed", probe_seed);
  probe->add_option("--budget", probe_budget)->check(CLI::PositiveNumber);
  probe->add_option("--json", probe_json);
  probe->add_option("--threads", probe_threads)->check(CLI::PositiveNumber);

  auto* families = app.add_subcommand("families", "List the surface catalog");

  std::string ode_id = "tan";
  int ode_steps = 10000;
  std::vector<std::string> ode_params;
  std::vector<double> ode_range;
  double ode_tol = 1e-8;
  auto* crosscheck = app.add_subcommand("crosscheck", "Integrate a reduced ODE against its closed form");
  crosscheck->add_option("--ode", ode_id)->check(CLI::IsMember({"tan", "exp", "power"}));
  crosscheck->add_option("--steps", ode_steps)->check(CLI::PositiveNumber);
  crosscheck->add_option("--param", ode_params, "key=value");
  crosscheck->add_option("--interval", ode_range)->expected(2);
  crosscheck->add_option("--tol", ode_tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*verify) {
      if (*expected_opt) va.expected = expected;
      return run_verify(va);
    }
    if (*mesh) return run_mesh(mesh_spec, mesh_grid, mesh_out, mesh_threads);
    if (*probe) return run_probe(probe_problem, probe_k0, probe_seed, probe_budget, probe_json,
                                 probe_threads);
    if (*families) {
      std::cout << families_json(list_families());
      return kExitPass;
    }
    if (*crosscheck) {
      std::optional<std::pair<double, double>> range;
      if (ode_range.size() == 2) range = std::make_pair(ode_range[0], ode_range[1]);
      return run_crosscheck(ode_id, ode_steps, ode_params, range, ode_tol);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
