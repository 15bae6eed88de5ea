// uccvqe: H4 potential-energy scans, NPE, MP2 screening, gradient-cost and
// control-noise experiments. CSV goes to --out (stdout when omitted); a JSON
// manifest with the resolved configuration is written next to it.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uccvqe/bench/csv.hpp"
#include "uccvqe/bench/experiments.hpp"
#include "uccvqe/chem/fcidump.hpp"
#include "uccvqe/errors.hpp"
#include "uccvqe/sim/fci.hpp"
#include "uccvqe/vqe/problem.hpp"

namespace {

using namespace uccvqe;
using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

// Raised while turning option strings into library configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string path = "trap";
  std::vector<double> grid;
  bool extend = false;
  std::string geometry_file;
  std::string basis = "sto-6g";
  std::string trotter = "1";
  std::string guess = "mp2";
  std::string optimizer = "lbfgs";
  std::string gradient = "analytical";
  double screen = -1.0;
  double noise_sigma = 0.0;
  std::string shots = "exact";
  std::uint64_t seed = 0;
  int repeats = 1;
  int jobs = 1;
  std::string out;
};

void add_vqe_flags(CLI::App* app, Options& o) {
  app->add_option("--path", o.path, "H4 path: rect, trap or linear")->capture_default_str();
  app->add_option("--grid", o.grid, "explicit grid values (degrees or angstrom)");
  app->add_flag("--extend", o.extend, "allow grid values outside the path range");
  app->add_option("--geometry-file", o.geometry_file, "single geometry instead of an H4 path");
  app->add_option("--basis", o.basis, "sto-3g or sto-6g")->capture_default_str();
  app->add_option("--trotter", o.trotter, "Trotter steps N, or 'exact'")->capture_default_str();
  app->add_option("--guess", o.guess, "random, zeros or mp2")->capture_default_str();
  app->add_option("--optimizer", o.optimizer, "nelder-mead or lbfgs")->capture_default_str();
  app->add_option("--gradient", o.gradient, "analytical or central:<step>")->capture_default_str();
  app->add_option("--screen", o.screen, "MP2 screening threshold d (negative: off)")
      ->capture_default_str();
  app->add_option("--noise-sigma", o.noise_sigma, "control noise std on amplitudes")
      ->capture_default_str();
  app->add_option("--shots", o.shots, "'exact' or eps:<target precision>")->capture_default_str();
  app->add_option("--seed", o.seed, "base seed")->capture_default_str();
  app->add_option("--repeats", o.repeats, "runs per grid point")->capture_default_str();
  app->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
  app->add_option("--out", o.out, "output CSV (stdout when omitted)");
}

template <class F>
auto convert(F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

bench::ScanSpec scan_spec(const Options& o) {
  return convert([&] {
    bench::ScanSpec s;
    s.path = chem::parse_h4_path(o.path);
    s.grid = o.grid;
    s.extend = o.extend;
    if (!o.geometry_file.empty()) s.geometry_file = o.geometry_file;
    s.basis = chem::parse_basis_name(o.basis);
    s.screen_threshold = o.screen;
    auto& v = s.vqe;
    if (o.trotter == "exact") {
      v.mode = ansatz::UccMode::exact;
    } else {
      std::size_t used = 0;
      v.trotter_number = std::stoi(o.trotter, &used);
      if (used != o.trotter.size() || v.trotter_number < 1)
        throw ConfigError("--trotter expects a positive integer or 'exact'");
    }
    v.guess = vqe::parse_guess(o.guess);
    v.optimizer.method = vqe::parse_optimizer(o.optimizer);
    v.gradient = vqe::GradientConfig::parse(o.gradient);
    if (v.mode == ansatz::UccMode::exact && v.gradient.mode == vqe::GradientMode::analytical &&
        v.optimizer.method == vqe::OptimizerMethod::lbfgs)
      throw ConfigError("the exact ansatz needs --gradient central:<step>");
    v.noise.control_sigma = o.noise_sigma;
    if (o.shots != "exact") {
      if (o.shots.rfind("eps:", 0) != 0) throw ConfigError("--shots expects 'exact' or eps:<value>");
      v.noise.sampling = true;
      v.noise.epsilon = std::stod(o.shots.substr(4));
    }
    s.seed = o.seed;
    s.repeats = o.repeats;
    s.jobs = o.jobs;
    s.validate();
    return s;
  });
}

void emit(const bench::CsvTable& t, const std::string& out) {
  if (out.empty()) {
    bench::write_csv(std::cout, t);
  } else {
    bench::write_csv(out, t);
  }
}

void write_manifest(const CLI::App& app, const CLI::App& sub, const std::string& out,
                    const json& extra = json::object()) {
  if (out.empty()) return;
  json m;
  m["tool"] = "uccvqe";
  m["version"] = kVersion;
  m["command"] = sub.get_name();
  m["config"] = app.config_to_str(true, false);
  m["output"] = out;
  m["results"] = extra;
  std::ofstream f(out + ".json");
  f << m.dump(2) << '\n';
}

double kcal(double hartree) { return hartree * bench::kKcalPerHartree; }

bench::NoiseSystem parse_system(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("system '" + text + "' is not path:parameter");
  return {chem::parse_h4_path(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
}

int run(int argc, char** argv) {
  CLI::App app{"UCCSD-VQE experiments on H4 model systems"};
  app.set_config("--config", "", "INI/TOML file; [scan] etc. sections map to subcommands");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Options scan_o;
  auto* scan = app.add_subcommand("scan", "VQE over a potential-energy path");
  add_vqe_flags(scan, scan_o);

  std::string npe_method, npe_reference;
  auto* npe = app.add_subcommand("npe", "non-parallelism error of a scan CSV");
  npe->add_option("method", npe_method, "scan CSV")->required()->check(CLI::ExistingFile);
  npe->add_option("--reference", npe_reference, "scan CSV providing reference energies")
      ->check(CLI::ExistingFile);

  Options scr_o;
  std::vector<double> thresholds{1e-2, 1e-3};
  auto* screening = app.add_subcommand("screening", "MP2 screening study along a path");
  add_vqe_flags(screening, scr_o);
  screening->add_option("--thresholds", thresholds, "screening thresholds d")->capture_default_str();

  bench::GradientCostSpec gc;
  std::string gc_path = "linear", gc_out;
  std::vector<double> gc_budgets{1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12, 1e13, 1e14};
  std::string gc_basis = "sto-6g";
  auto* gcost = app.add_subcommand("gradient-cost", "sampled gradient error against shot budget");
  gcost->add_option("--path", gc_path)->capture_default_str();
  gcost->add_option("--parameter", gc.parameter)->capture_default_str();
  gcost->add_option("--basis", gc_basis)->capture_default_str();
  gcost->add_option("--steps", gc.steps, "central-difference steps")->capture_default_str();
  gcost->add_option("--budgets", gc_budgets, "shots per gradient vector; 0 means exact")
      ->capture_default_str();
  gcost->add_option("--samples", gc.samples)->capture_default_str();
  gcost->add_option("--seed", gc.seed)->capture_default_str();
  gcost->add_option("--jobs", gc.jobs)->capture_default_str();
  gcost->add_option("--out", gc_out);

  bench::ControlNoiseSpec cn;
  std::vector<std::string> cn_systems{"trap:135", "rect:1.2", "linear:1.2"};
  std::vector<std::string> cn_gradients{"analytical", "central:0.05", "central:0.1"};
  std::string cn_out, cn_sweep_out, cn_basis = "sto-6g";
  auto* cnoise = app.add_subcommand("control-noise", "optimization under amplitude control noise");
  cnoise->add_option("--system", cn_systems, "path:parameter")->capture_default_str();
  cnoise->add_option("--basis", cn_basis)->capture_default_str();
  cnoise->add_option("--gradient", cn_gradients)->capture_default_str();
  cnoise->add_option("--noise-sigma", cn.sigma)->capture_default_str();
  cnoise->add_option("--runs", cn.runs)->capture_default_str();
  cnoise->add_option("--sweep", cn.sweep_sigmas, "sigmas for the gradient-error sweep")
      ->capture_default_str();
  cnoise->add_option("--sweep-samples", cn.sweep_samples)->capture_default_str();
  cnoise->add_option("--seed", cn.seed)->capture_default_str();
  cnoise->add_option("--jobs", cn.jobs)->capture_default_str();
  cnoise->add_option("--out", cn_out, "per-method table");
  cnoise->add_option("--sweep-out", cn_sweep_out, "gradient-error sweep table");

  std::string fd_path;
  bool fd_fci = false;
  auto* fdinfo = app.add_subcommand("fcidump-info", "summary of an FCIDUMP file");
  fdinfo->add_option("file", fd_path)->required()->check(CLI::ExistingFile);
  fdinfo->add_flag("--fci", fd_fci, "also diagonalize the Hamiltonian");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (scan->parsed()) {
    const auto spec = scan_spec(scan_o);
    const auto records = bench::run_scan(spec);
    emit(bench::scan_table(records), scan_o.out);
    std::size_t failed = 0;
    for (const auto& r : records) failed += r.ok() ? 0 : 1;
    write_manifest(app, *scan, scan_o.out, {{"rows", records.size()}, {"failed", failed}});
    if (failed) std::cerr << failed << " of " << records.size() << " points failed\n";
    return failed == records.size() ? 2 : 0;
  }

  if (npe->parsed()) {
    const auto method = bench::scan_records(bench::read_csv(npe_method));
    std::optional<std::vector<bench::ScanRecord>> ref;
    if (!npe_reference.empty()) ref = bench::scan_records(bench::read_csv(npe_reference));
    bench::NpeReport r;
    try {
      r = bench::npe_report(method, ref ? &*ref : nullptr);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    std::cout << "points " << r.n_points << "\n"
              << "npe_kcal " << bench::format_double(kcal(r.npe)) << "\n"
              << "max_error_kcal " << bench::format_double(kcal(r.max_error)) << "\n"
              << "mean_error_kcal " << bench::format_double(kcal(r.mean_error)) << "\n"
              << "mean_overlap " << bench::format_double(r.mean_overlap) << "\n"
              << "mean_infidelity " << bench::format_double(r.mean_infidelity) << "\n";
    return 0;
  }

  if (screening->parsed()) {
    const auto spec = scan_spec(scr_o);
    const auto rows = bench::run_screening(spec, thresholds);
    emit(bench::screening_table(rows), scr_o.out);
    write_manifest(app, *screening, scr_o.out);
    return 0;
  }

  if (gcost->parsed()) {
    convert([&] {
      gc.path = chem::parse_h4_path(gc_path);
      gc.basis = chem::parse_basis_name(gc_basis);
      gc.budgets = gc_budgets;
      return 0;
    });
    const auto rows = bench::run_gradient_cost(gc);
    emit(bench::gradient_cost_table(rows), gc_out);
    write_manifest(app, *gcost, gc_out);
    return 0;
  }

  if (cnoise->parsed()) {
    convert([&] {
      cn.systems.clear();
      for (const auto& s : cn_systems) cn.systems.push_back(parse_system(s));
      cn.gradients.clear();
      for (const auto& g : cn_gradients) cn.gradients.push_back(vqe::GradientConfig::parse(g));
      cn.basis = chem::parse_basis_name(cn_basis);
      if (cn.runs < 2) throw ConfigError("--runs must be >= 2");
      return 0;
    });
    const auto rep = bench::run_control_noise(cn);
    emit(bench::control_noise_table(rep.runs), cn_out);
    if (!cn_sweep_out.empty()) bench::write_csv(cn_sweep_out, bench::noise_sweep_table(rep.sweep));
    json slopes = json::object();
    for (const auto& [sys, slope] : rep.slopes) {
      slopes[sys] = slope;
      std::cerr << "loglog slope " << sys << " " << bench::format_double(slope) << "\n";
    }
    write_manifest(app, *cnoise, cn_out, {{"slopes", slopes}});
    return 0;
  }

  if (fdinfo->parsed()) {
    chem::MoIntegrals mo;
    try {
      mo = chem::read_fcidump(fd_path);
    } catch (const ParseError& e) {
      throw ConfigError(fd_path + ": " + e.what());
    }
    vqe::ProblemOptions opts;
    opts.solve_fci = fd_fci;
    const auto p = vqe::build_problem(mo, opts, fd_path);
    std::cout << "orbitals " << mo.n_orbitals << "\n"
              << "electrons " << mo.n_electrons << "\n"
              << "qubits " << p.system().n_spin_orbitals << "\n"
              << "core_energy " << bench::format_double(mo.nuclear_repulsion) << "\n"
              << "reference_energy " << bench::format_double(p.hf_energy) << "\n"
              << "pauli_terms " << p.qubit_hamiltonian.size() << "\n"
              << "uccsd_parameters " << p.excitations.size() << "\n";
    if (p.fci) std::cout << "fci_energy " << bench::format_double(p.fci->energy) << "\n";
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
