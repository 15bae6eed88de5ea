#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uccvqe/bench/csv.hpp"
#include "uccvqe/chem/basis.hpp"
#include "uccvqe/chem/geometry.hpp"
#include "uccvqe/vqe/problem.hpp"
#include "uccvqe/vqe/run.hpp"

namespace uccvqe::bench {

/// n points from lo to hi inclusive, uniformly spaced.
std::vector<double> uniform_grid(double lo, double hi, int n);

/// 19 angles over [90, 180] degrees (trapezoidal) or 24 distances over
/// [0.6, 5.0] angstrom (rectangular, linear).
std::vector<double> path_grid(chem::H4Path path);

/// Runs f(i) for i in [0, n) on `jobs` threads. The first exception thrown
/// by any f is rethrown after all workers stop.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f);

struct ScanSpec {
  chem::H4Path path = chem::H4Path::trapezoidal;
  std::vector<double> grid;  // empty: path_grid(path)
  bool extend = false;       // allow grid values outside the path range
  std::optional<std::filesystem::path> geometry_file;  // replaces the H4 path
  chem::BasisName basis = chem::BasisName::sto6g;
  double screen_threshold = -1.0;
  vqe::VqeConfig vqe;
  std::uint64_t seed = 0;
  int repeats = 1;
  int jobs = 1;

  std::vector<double> points() const;
  void validate() const;
};

struct ScanRecord {
  std::string system;
  double parameter = 0.0;
  std::uint64_t seed = 0;
  int n_parameters = 0;
  double e_hf = 0.0;
  double e_vqe = 0.0;        // best objective value seen (noisy when noise is on)
  double e_vqe_exact = 0.0;  // noiseless energy at the returned amplitudes
  double e_fci = 0.0;
  double infidelity = 0.0;   // 1 - |<VQE|FCI>|^2
  double overlap = 0.0;      // |<VQE|FCI>|
  std::int64_t energy_evals = 0;
  std::int64_t gradient_calls = 0;
  std::int64_t shots = 0;
  int iterations = 0;
  bool converged = false;
  std::string reason;
  std::string error;  // non-empty when the point failed

  bool ok() const { return error.empty(); }
};

vqe::ProblemBundle scan_problem(const ScanSpec& spec, double parameter);

/// One record per grid point per repeat, in grid order. Point i of repeat k
/// uses seed + k * n_points + i. Failures are stored in ScanRecord::error.
std::vector<ScanRecord> run_scan(const ScanSpec& spec);

CsvTable scan_table(const std::vector<ScanRecord>& records);
std::vector<ScanRecord> scan_records(const CsvTable& table);

/// max(E - E_ref) - min(E - E_ref) over aligned points, in hartree.
double non_parallelism_error(const std::vector<double>& energies,
                             const std::vector<double>& reference);

struct NpeReport {
  std::size_t n_points = 0;
  double npe = 0.0;         // hartree
  double max_error = 0.0;   // hartree
  double mean_error = 0.0;  // hartree
  double mean_overlap = 0.0;
  double mean_infidelity = 0.0;
};

/// Uses each record's e_fci unless a reference scan is given, in which
/// case grids must agree point by point (std::invalid_argument otherwise).
/// Failed rows are rejected.
NpeReport npe_report(const std::vector<ScanRecord>& method,
                     const std::vector<ScanRecord>* reference = nullptr);

struct ScreeningRow {
  double threshold = -1.0;  // negative: full pool
  int n_parameters_min = 0;
  int n_parameters_max = 0;
  double max_deviation = 0.0;  // hartree, against the full-pool scan
  double evals_mean = 0.0;
  double evals_std = 0.0;
  std::size_t failures = 0;
};

/// Scans the path with the full pool and with each threshold.
std::vector<ScreeningRow> run_screening(const ScanSpec& base, const std::vector<double>& thresholds);
CsvTable screening_table(const std::vector<ScreeningRow>& rows);

struct GradientCostSpec {
  chem::H4Path path = chem::H4Path::linear;
  double parameter = 1.2;
  chem::BasisName basis = chem::BasisName::sto6g;
  std::vector<double> steps{0.1, 0.5};
  std::vector<double> budgets;  // total shots per gradient vector; <= 0 means exact
  int samples = 100;
  double amplitude_range = 6.283185307179586;  // t ~ U[0, range]
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct GradientCostRow {
  std::string method;  // "analytical" or "central"
  double step = 0.0;
  double budget = 0.0;
  double shots_mean = 0.0;
  double dg_mean = 0.0;  // ||g_est - g||_2
  double dg_std = 0.0;
};

/// Sampled gradients at random amplitudes against the exact gradient.
/// Each component gets the precision that spreads the budget evenly.
std::vector<GradientCostRow> run_gradient_cost(const GradientCostSpec& spec);
CsvTable gradient_cost_table(const std::vector<GradientCostRow>& rows);

struct NoiseSystem {
  chem::H4Path path;
  double parameter;
};

struct ControlNoiseSpec {
  std::vector<NoiseSystem> systems{{chem::H4Path::trapezoidal, 135.0},
                                   {chem::H4Path::rectangular, 1.2},
                                   {chem::H4Path::linear, 1.2}};
  chem::BasisName basis = chem::BasisName::sto6g;
  std::vector<vqe::GradientConfig> gradients{
      {vqe::GradientMode::analytical, 1e-4},
      {vqe::GradientMode::central_difference, 0.05},
      {vqe::GradientMode::central_difference, 0.10}};
  double sigma = 0.01;
  int runs = 150;
  std::vector<double> sweep_sigmas{1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2};
  int sweep_samples = 100;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct ControlNoiseRow {
  std::string system;
  std::string gradient;
  double sigma = 0.0;
  int runs = 0;
  double grad_calls_mean = 0.0;
  double grad_calls_std = 0.0;
  double energy_error_mean = 0.0;  // hartree, exact energy at the result minus noiseless optimum
  double energy_error_std = 0.0;
  double evals_mean = 0.0;
  std::size_t failures = 0;
};

struct NoiseSweepRow {
  std::string system;
  double sigma = 0.0;
  double dg_mean = 0.0;  // ||g(t + noise) - g(t)||_2 at the MP2 amplitudes
  double dg_std = 0.0;
};

struct ControlNoiseReport {
  std::vector<ControlNoiseRow> runs;
  std::vector<NoiseSweepRow> sweep;
  std::vector<std::pair<std::string, double>> slopes;  // log-log slope per system
};

ControlNoiseReport run_control_noise(const ControlNoiseSpec& spec);
CsvTable control_noise_table(const std::vector<ControlNoiseRow>& rows);
CsvTable noise_sweep_table(const std::vector<NoiseSweepRow>& rows);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace uccvqe::bench
