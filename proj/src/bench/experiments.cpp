#include "uccvqe/bench/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "uccvqe/vqe/cost.hpp"
#include "uccvqe/vqe/objective.hpp"

namespace uccvqe::bench {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Stats {
  double mean = 0.0;
  double std = 0.0;
};

// Sample standard deviation (n - 1); 0 for fewer than two values.
Stats stats(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return {kNaN, kNaN};
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

std::string fmt(double x) { return format_double(x); }
std::string fmt(std::int64_t x) { return std::to_string(x); }
std::string fmt(int x) { return std::to_string(x); }
std::string fmt(std::uint64_t x) { return std::to_string(x); }

std::string system_label(chem::H4Path path, double parameter) {
  return std::string(chem::to_string(path)) + "-" + format_double(parameter);
}

vqe::ProblemBundle h4_problem(chem::H4Path path, double parameter, chem::BasisName basis,
                              double screen, bool fci) {
  vqe::ProblemOptions o;
  o.basis = basis;
  o.screen_threshold = screen;
  o.solve_fci = fci;
  return vqe::build_problem(chem::h4_geometry(path, parameter), o);
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
  g.back() = hi;
  return g;
}

std::vector<double> path_grid(chem::H4Path path) {
  if (path == chem::H4Path::trapezoidal) return uniform_grid(90.0, 180.0, 19);
  return uniform_grid(0.6, 5.0, 24);
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first;
  std::mutex m;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; !stop && (i = next++) < n;) {
          try {
            f(i);
          } catch (...) {
            std::lock_guard lock(m);
            if (!first) first = std::current_exception();
            stop = true;
          }
        }
      });
    }
  }
  if (first) std::rethrow_exception(first);
}

// ---------------------------------------------------------------------------
// scan

std::vector<double> ScanSpec::points() const {
  if (geometry_file) return {0.0};
  return grid.empty() ? path_grid(path) : grid;
}

void ScanSpec::validate() const {
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  vqe.gradient.validate();
  vqe.optimizer.validate();
  vqe.noise.validate();
  if (geometry_file || extend) return;
  const bool trap = path == chem::H4Path::trapezoidal;
  const double lo = trap ? 90.0 : 0.6, hi = trap ? 180.0 : 5.0;
  for (double p : points())
    if (!(p >= lo - 1e-12 && p <= hi + 1e-12))
      throw std::invalid_argument("grid value " + format_double(p) + " outside [" +
                                  format_double(lo) + ", " + format_double(hi) + "]");
}

vqe::ProblemBundle scan_problem(const ScanSpec& spec, double parameter) {
  vqe::ProblemOptions o;
  o.basis = spec.basis;
  o.screen_threshold = spec.screen_threshold;
  if (spec.geometry_file) {
    auto g = chem::read_geometry_file(*spec.geometry_file);
    if (g.label.empty()) g.label = spec.geometry_file->stem().string();
    return vqe::build_problem(g, o);
  }
  return vqe::build_problem(chem::h4_geometry(spec.path, parameter), o);
}

std::vector<ScanRecord> run_scan(const ScanSpec& spec) {
  spec.validate();
  const auto pts = spec.points();
  const std::size_t n = pts.size();
  std::vector<ScanRecord> out(n * static_cast<std::size_t>(spec.repeats));
  parallel_for(out.size(), spec.jobs, [&](std::size_t idx) {
    const std::size_t i = idx % n;
    ScanRecord& r = out[idx];
    r.parameter = pts[i];
    r.seed = spec.seed + idx;
    r.system = spec.geometry_file ? spec.geometry_file->stem().string()
                                  : std::string(chem::to_string(spec.path));
    r.e_hf = r.e_vqe = r.e_vqe_exact = r.e_fci = r.infidelity = r.overlap = kNaN;
    try {
      const auto problem = scan_problem(spec, pts[i]);
      r.e_hf = problem.hf_energy;
      r.n_parameters = static_cast<int>(problem.excitations.size());
      auto cfg = spec.vqe;
      cfg.seed = r.seed;
      const auto v = vqe::run_vqe(problem, cfg);
      r.e_vqe = v.energy;
      r.e_vqe_exact = v.exact_energy;
      r.e_fci = v.fci_energy.value_or(kNaN);
      r.infidelity = v.infidelity.value_or(kNaN);
      r.overlap = v.overlap.value_or(kNaN);
      r.energy_evals = v.energy_evaluations;
      r.gradient_calls = v.gradient_calls;
      r.shots = v.shots;
      r.iterations = v.iterations;
      r.converged = v.converged;
      r.reason = v.reason;
    } catch (const std::exception& e) {
      r.error = e.what();
      if (r.error.empty()) r.error = "unknown error";
    }
  });
  return out;
}

namespace {

const std::vector<std::string> kScanHeader{
    "system",      "parameter", "seed",         "n_parameters",   "e_hf",
    "e_vqe",       "e_vqe_exact", "e_fci",      "infidelity",     "overlap",
    "energy_evals", "gradient_calls", "shots",  "iterations",     "converged",
    "reason",      "error"};

}  // namespace

CsvTable scan_table(const std::vector<ScanRecord>& records) {
  CsvTable t;
  t.header = kScanHeader;
  for (const auto& r : records) {
    t.rows.push_back({r.system, fmt(r.parameter), fmt(r.seed), fmt(r.n_parameters), fmt(r.e_hf),
                      fmt(r.e_vqe), fmt(r.e_vqe_exact), fmt(r.e_fci), fmt(r.infidelity),
                      fmt(r.overlap), fmt(r.energy_evals), fmt(r.gradient_calls), fmt(r.shots),
                      fmt(r.iterations), r.converged ? "1" : "0", r.reason, r.error});
  }
  return t;
}

std::vector<ScanRecord> scan_records(const CsvTable& table) {
  std::vector<ScanRecord> out;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    auto get = [&](const char* name) -> const std::string& { return table.at(k, name); };
    ScanRecord r;
    r.system = get("system");
    r.parameter = parse_double(get("parameter"));
    r.seed = std::stoull(get("seed"));
    r.n_parameters = std::stoi(get("n_parameters"));
    r.e_hf = parse_double(get("e_hf"));
    r.e_vqe = parse_double(get("e_vqe"));
    r.e_vqe_exact = parse_double(get("e_vqe_exact"));
    r.e_fci = parse_double(get("e_fci"));
    r.infidelity = parse_double(get("infidelity"));
    r.overlap = parse_double(get("overlap"));
    r.energy_evals = std::stoll(get("energy_evals"));
    r.gradient_calls = std::stoll(get("gradient_calls"));
    r.shots = std::stoll(get("shots"));
    r.iterations = std::stoi(get("iterations"));
    r.converged = get("converged") == "1";
    r.reason = get("reason");
    r.error = get("error");
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// npe

double non_parallelism_error(const std::vector<double>& energies,
                             const std::vector<double>& reference) {
  if (energies.size() != reference.size() || energies.empty())
    throw std::invalid_argument("NPE needs two non-empty series of equal length");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    const double d = energies[k] - reference[k];
    if (!std::isfinite(d)) throw std::invalid_argument("NPE series contains a non-finite value");
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi - lo;
}

NpeReport npe_report(const std::vector<ScanRecord>& method, const std::vector<ScanRecord>* reference) {
  if (reference && reference->size() != method.size())
    throw std::invalid_argument("grids differ in length");
  std::vector<double> e, ref, ov, inf;
  for (std::size_t k = 0; k < method.size(); ++k) {
    const auto& r = method[k];
    if (!r.ok()) throw std::invalid_argument("failed row at parameter " + fmt(r.parameter));
    double eref = r.e_fci;
    if (reference) {
      const auto& q = (*reference)[k];
      if (std::abs(q.parameter - r.parameter) > 1e-9)
        throw std::invalid_argument("grids differ at row " + std::to_string(k + 1));
      eref = q.ok() && std::isfinite(q.e_fci) ? q.e_fci : q.e_vqe_exact;
    }
    e.push_back(r.e_vqe_exact);
    ref.push_back(eref);
    ov.push_back(r.overlap);
    inf.push_back(r.infidelity);
  }
  NpeReport n;
  n.n_points = e.size();
  n.npe = non_parallelism_error(e, ref);
  for (std::size_t k = 0; k < e.size(); ++k) {
    n.max_error = std::max(n.max_error, e[k] - ref[k]);
    n.mean_error += (e[k] - ref[k]) / static_cast<double>(e.size());
  }
  n.mean_overlap = stats(ov).mean;
  n.mean_infidelity = stats(inf).mean;
  return n;
}

// ---------------------------------------------------------------------------
// screening

std::vector<ScreeningRow> run_screening(const ScanSpec& base, const std::vector<double>& thresholds) {
  std::vector<double> ds{-1.0};
  ds.insert(ds.end(), thresholds.begin(), thresholds.end());
  std::vector<std::vector<ScanRecord>> scans;
  for (double d : ds) {
    ScanSpec s = base;
    s.screen_threshold = d;
    scans.push_back(run_scan(s));
  }
  std::vector<ScreeningRow> rows;
  const auto& full = scans.front();
  for (std::size_t k = 0; k < ds.size(); ++k) {
    ScreeningRow row;
    row.threshold = ds[k];
    row.n_parameters_min = std::numeric_limits<int>::max();
    std::vector<double> evals;
    for (std::size_t i = 0; i < scans[k].size(); ++i) {
      const auto& r = scans[k][i];
      if (!r.ok() || !full[i].ok()) {
        ++row.failures;
        continue;
      }
      row.n_parameters_min = std::min(row.n_parameters_min, r.n_parameters);
      row.n_parameters_max = std::max(row.n_parameters_max, r.n_parameters);
      row.max_deviation =
          std::max(row.max_deviation, std::abs(r.e_vqe_exact - full[i].e_vqe_exact));
      evals.push_back(static_cast<double>(r.energy_evals));
    }
    if (evals.empty()) row.n_parameters_min = 0;
    const auto s = stats(evals);
    row.evals_mean = s.mean;
    row.evals_std = s.std;
    rows.push_back(row);
  }
  return rows;
}

CsvTable screening_table(const std::vector<ScreeningRow>& rows) {
  CsvTable t;
  t.header = {"threshold", "n_parameters_min", "n_parameters_max", "max_deviation_kcal",
              "evals_mean", "evals_std", "failures"};
  for (const auto& r : rows) {
    t.rows.push_back({r.threshold < 0 ? "all" : fmt(r.threshold), fmt(r.n_parameters_min),
                      fmt(r.n_parameters_max), fmt(r.max_deviation * kKcalPerHartree),
                      fmt(r.evals_mean), fmt(r.evals_std), fmt(r.failures)});
  }
  return t;
}

// ---------------------------------------------------------------------------
// gradient cost

std::vector<GradientCostRow> run_gradient_cost(const GradientCostSpec& spec) {
  if (spec.samples < 1) throw std::invalid_argument("samples must be >= 1");
  for (double b : spec.budgets)
    if (std::isnan(b)) throw std::invalid_argument("budget is NaN");
  for (double s : spec.steps)
    if (!(s > 0.0)) throw std::invalid_argument("finite-difference steps must be positive");

  const auto problem = h4_problem(spec.path, spec.parameter, spec.basis, -1.0, false);
  vqe::VqeConfig cfg;
  const vqe::Objective obj(problem.qubit_hamiltonian, vqe::make_ansatz(problem, cfg));
  const auto np = static_cast<int>(obj.n_parameters());

  struct Method {
    vqe::GradientMode mode;
    double step;
  };
  std::vector<Method> methods{{vqe::GradientMode::analytical, 0.0}};
  for (double s : spec.steps) methods.push_back({vqe::GradientMode::central_difference, s});

  const std::size_t nb = spec.budgets.size(), nm = methods.size();
  const auto ns = static_cast<std::size_t>(spec.samples);
  // dg[(m * nb + b) * ns + s], shots likewise
  std::vector<double> dg(nm * nb * ns), shots(nm * nb * ns);

  parallel_for(ns, spec.jobs, [&](std::size_t s) {
    sim::Rng rng(spec.seed + s);
    std::uniform_real_distribution<double> u(0.0, spec.amplitude_range);
    Eigen::VectorXd t(np);
    for (int j = 0; j < np; ++j) t(j) = u(rng);
    const Eigen::VectorXd g = obj.adjoint_gradient(t);
    const auto circuits = obj.gradient_circuits(t);
    for (std::size_t m = 0; m < nm; ++m) {
      const auto& meth = methods[m];
      std::optional<vqe::DifferenceCircuits> diff;
      if (meth.mode == vqe::GradientMode::central_difference)
        diff = obj.difference_circuits(t, meth.step);
      for (std::size_t b = 0; b < nb; ++b) {
        const double budget = spec.budgets[b];
        Eigen::VectorXd est;
        std::int64_t used = 0;
        if (budget <= 0.0) {
          est = diff ? vqe::gradient_from_differences(*diff) : vqe::gradient_from_circuits(circuits);
        } else {
          const double eps = vqe::component_precision_for_budget(obj.one_norm(), budget, np,
                                                                 meth.mode, meth.step);
          const auto sg = diff ? vqe::sample_numerical_gradient(*diff, eps, rng)
                               : vqe::sample_analytical_gradient(circuits, eps, rng);
          est = sg.gradient;
          used = sg.shots;
        }
        const std::size_t at = (m * nb + b) * ns + s;
        dg[at] = (est - g).norm();
        shots[at] = static_cast<double>(used);
      }
    }
  });

  std::vector<GradientCostRow> rows;
  for (std::size_t m = 0; m < nm; ++m) {
    for (std::size_t b = 0; b < nb; ++b) {
      const auto first = dg.begin() + static_cast<std::ptrdiff_t>((m * nb + b) * ns);
      const auto sfirst = shots.begin() + static_cast<std::ptrdiff_t>((m * nb + b) * ns);
      const auto st = stats(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(ns)));
      GradientCostRow r;
      r.method = methods[m].mode == vqe::GradientMode::analytical ? "analytical" : "central";
      r.step = methods[m].step;
      r.budget = spec.budgets[b];
      r.shots_mean =
          stats(std::vector<double>(sfirst, sfirst + static_cast<std::ptrdiff_t>(ns))).mean;
      r.dg_mean = st.mean;
      r.dg_std = st.std;
      rows.push_back(r);
    }
  }
  return rows;
}

CsvTable gradient_cost_table(const std::vector<GradientCostRow>& rows) {
  CsvTable t;
  t.header = {"method", "step", "budget", "shots_mean", "dg_mean", "dg_std"};
  for (const auto& r : rows)
    t.rows.push_back({r.method, fmt(r.step), r.budget <= 0 ? "exact" : fmt(r.budget),
                      fmt(r.shots_mean), fmt(r.dg_mean), fmt(r.dg_std)});
  return t;
}

// ---------------------------------------------------------------------------
// control noise

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need >= 2 points");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), 2);
  Eigen::VectorXd b(a.rows());
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::invalid_argument("log-log fit needs positive data");
    a(k, 0) = std::log(x[i]);
    a(k, 1) = 1.0;
    b(k) = std::log(y[i]);
  }
  return a.colPivHouseholderQr().solve(b)(0);
}

ControlNoiseReport run_control_noise(const ControlNoiseSpec& spec) {
  if (spec.runs < 2) throw std::invalid_argument("runs must be >= 2");
  if (!(spec.sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  for (const auto& g : spec.gradients) g.validate();

  ControlNoiseReport rep;
  for (const auto& sys : spec.systems) {
    const auto label = system_label(sys.path, sys.parameter);
    const auto problem = h4_problem(sys.path, sys.parameter, spec.basis, -1.0, false);

    vqe::VqeConfig base;
    base.guess = vqe::GuessMode::mp2;
    base.gradient = {vqe::GradientMode::analytical, 1e-4};
    const double optimum = vqe::run_vqe(problem, base).exact_energy;

    for (const auto& gc : spec.gradients) {
      const auto n = static_cast<std::size_t>(spec.runs);
      std::vector<double> calls(n), errs(n), evals(n);
      std::vector<char> failed(n, 0);
      parallel_for(n, spec.jobs, [&](std::size_t k) {
        auto cfg = base;
        cfg.gradient = gc;
        cfg.noise.control_sigma = spec.sigma;
        cfg.seed = spec.seed + k;
        try {
          const auto r = vqe::run_vqe(problem, cfg);
          calls[k] = static_cast<double>(r.gradient_calls);
          errs[k] = r.exact_energy - optimum;
          evals[k] = static_cast<double>(r.energy_evaluations);
        } catch (const std::exception&) {
          failed[k] = 1;
        }
      });
      std::vector<double> c, e, v;
      for (std::size_t k = 0; k < n; ++k) {
        if (failed[k]) continue;
        c.push_back(calls[k]);
        e.push_back(errs[k]);
        v.push_back(evals[k]);
      }
      ControlNoiseRow row;
      row.system = label;
      row.gradient = gc.to_string();
      row.sigma = spec.sigma;
      row.runs = spec.runs;
      row.failures = n - c.size();
      const auto sc = stats(c), se = stats(e);
      row.grad_calls_mean = sc.mean;
      row.grad_calls_std = sc.std;
      row.energy_error_mean = se.mean;
      row.energy_error_std = se.std;
      row.evals_mean = stats(v).mean;
      rep.runs.push_back(row);
    }

    if (spec.sweep_sigmas.empty()) continue;
    const Eigen::VectorXd t0 = *problem.mp2;
    std::vector<double> xs, ys;
    for (std::size_t q = 0; q < spec.sweep_sigmas.size(); ++q) {
      const double sigma = spec.sweep_sigmas[q];
      sim::NoiseModel noise;
      noise.control_sigma = sigma;
      noise.seed = spec.seed + 7919 * (q + 1);
      vqe::Objective obj(problem.qubit_hamiltonian, vqe::make_ansatz(problem, base), noise);
      const Eigen::VectorXd g = obj.adjoint_gradient(t0);
      std::vector<double> d;
      for (int s = 0; s < spec.sweep_samples; ++s) d.push_back((obj.analytical_gradient(t0) - g).norm());
      const auto st = stats(d);
      rep.sweep.push_back({label, sigma, st.mean, st.std});
      if (sigma > 0.0) {
        xs.push_back(sigma);
        ys.push_back(st.mean);
      }
    }
    if (xs.size() >= 2) rep.slopes.emplace_back(label, loglog_slope(xs, ys));
  }
  return rep;
}

CsvTable control_noise_table(const std::vector<ControlNoiseRow>& rows) {
  CsvTable t;
  t.header = {"system",           "gradient",          "sigma",      "runs",
              "grad_calls_mean",  "grad_calls_std",    "energy_error_mean",
              "energy_error_std", "evals_mean",        "failures"};
  for (const auto& r : rows)
    t.rows.push_back({r.system, r.gradient, fmt(r.sigma), fmt(r.runs), fmt(r.grad_calls_mean),
                      fmt(r.grad_calls_std), fmt(r.energy_error_mean), fmt(r.energy_error_std),
                      fmt(r.evals_mean), fmt(r.failures)});
  return t;
}

CsvTable noise_sweep_table(const std::vector<NoiseSweepRow>& rows) {
  CsvTable t;
  t.header = {"system", "sigma", "dg_mean", "dg_std"};
  for (const auto& r : rows)
    t.rows.push_back({r.system, fmt(r.sigma), fmt(r.dg_mean), fmt(r.dg_std)});
  return t;
}

}  // namespace uccvqe::bench
