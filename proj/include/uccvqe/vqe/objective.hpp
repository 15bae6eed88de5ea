#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uccvqe/ansatz/ucc.hpp"
#include "uccvqe/ops/pauli.hpp"
#include "uccvqe/sim/circuit.hpp"
#include "uccvqe/sim/sampling.hpp"
#include "uccvqe/sim/statevector.hpp"
#include "uccvqe/vqe/cost.hpp"

namespace uccvqe::vqe {

struct GradientConfig {
  GradientMode mode = GradientMode::analytical;
  double step = 1e-4;  // central differences only

  void validate() const;
  /// "analytical" or "central:<step>". Throws std::invalid_argument.
  static GradientConfig parse(std::string_view text);
  std::string to_string() const;
};

/// Precision of sampled gradients when NoiseModel::sampling is on. Each
/// component gets epsilon / sqrt(N_P). In adaptive mode the target for a
/// call is max(floor, factor * |g_prev|).
struct GradientPrecision {
  double epsilon = 1e-2;
  bool adaptive = false;
  double floor = 1e-4;
  double factor = 0.1;
};

/// Per-circuit data behind the term-resolved analytical gradient:
///   dE/dt_j = 2 sum_i h_i sum_{g in j} sum_k (c_k / rho) x_igk,
///   x_igk = Im <P_k phi_g | L_g+ O_i psi>,
/// where phi_g is the state after gate g and L_g the gates that follow it.
struct GradientCircuits {
  struct Entry {
    int parameter;
    double weight;  // h_i c_k / rho
    double value;   // x_igk in [-1, 1]
  };
  std::vector<Entry> entries;
  Eigen::Index n_parameters = 0;
  double one_norm = 0.0;
};

/// Term expectations at t +- step e_j for sampled central differences.
struct DifferenceCircuits {
  double step = 0.0;
  Eigen::VectorXd coefficients;  // non-identity h_i
  Eigen::MatrixXd plus, minus;   // (term, component) expectation values
};

struct SampledGradient {
  Eigen::VectorXd gradient;
  std::int64_t shots = 0;
};

/// Variational energy E(t) = <ref| U+(t) H U(t) |ref> with evaluation
/// counters and optional control noise and shot sampling.
class Objective {
 public:
  Objective(ops::QubitOperator hamiltonian, ansatz::UccAnsatz ansatz, sim::NoiseModel noise = {});
  Objective(ops::QubitOperator hamiltonian, ansatz::UccAnsatz ansatz, sim::Statevector reference,
            sim::NoiseModel noise);

  const ops::QubitOperator& hamiltonian() const noexcept { return hamiltonian_; }
  const sim::UccCircuit& circuit() const noexcept { return circuit_; }
  const sim::Statevector& reference() const noexcept { return reference_; }
  const sim::NoiseModel& noise() const noexcept { return noise_; }
  Eigen::Index n_parameters() const noexcept { return circuit_.n_parameters(); }
  double one_norm() const noexcept { return one_norm_; }

  void set_gradient_precision(const GradientPrecision& p) { precision_ = p; }
  const GradientPrecision& gradient_precision() const noexcept { return precision_; }

  /// Counted evaluation: perturbs t by the control noise, then evaluates
  /// exactly or from shots according to the noise model.
  double energy(const Eigen::VectorXd& t);

  /// Gradient by the configured route; counts one gradient call.
  Eigen::VectorXd gradient(const Eigen::VectorXd& t, const GradientConfig& config);

  /// Counted analytical gradient. One control-noise draw per call. Exact
  /// values use the adjoint sweep; with sampling, the term-resolved
  /// circuits are sampled. Throws UnsupportedError for exact-mode ansatze.
  Eigen::VectorXd analytical_gradient(const Eigen::VectorXd& t);

  /// Central differences through energy(): 2 N_P counted energies and one
  /// gradient call.
  Eigen::VectorXd numerical_gradient(const Eigen::VectorXd& t, double step);

  // Uncounted, noiseless evaluations.
  sim::Statevector state(const Eigen::VectorXd& t) const;
  double exact_energy(const Eigen::VectorXd& t) const;
  Eigen::VectorXd adjoint_gradient(const Eigen::VectorXd& t) const;
  GradientCircuits gradient_circuits(const Eigen::VectorXd& t) const;
  DifferenceCircuits difference_circuits(const Eigen::VectorXd& t, double step) const;

  std::int64_t energy_evaluations() const noexcept { return energy_evals_; }
  std::int64_t gradient_calls() const noexcept { return gradient_calls_; }
  std::int64_t shots() const noexcept { return shots_; }
  void reset_counters();

  sim::Rng& rng() noexcept { return rng_; }
  void reseed(std::uint64_t seed) { rng_.seed(seed); }

 private:
  double energy_of(const sim::Statevector& s) const;
  void require_trotterized() const;

  ops::QubitOperator hamiltonian_;
  sim::UccCircuit circuit_;
  sim::Statevector reference_;
  sim::NoiseModel noise_;
  GradientPrecision precision_;
  Eigen::SparseMatrix<std::complex<double>> h_sparse_;
  std::optional<sim::MeasurementPlan> plan_;
  double one_norm_ = 0.0;
  std::int64_t energy_evals_ = 0;
  std::int64_t gradient_calls_ = 0;
  std::int64_t shots_ = 0;
  double last_gradient_norm_ = -1.0;
  sim::Rng rng_;
};

/// Term-resolved gradient from exact circuit values.
Eigen::VectorXd gradient_from_circuits(const GradientCircuits& c);

/// Each circuit sampled with m = ceil(4 sum|h| |weight| / eps_j^2) shots.
SampledGradient sample_analytical_gradient(const GradientCircuits& c, double epsilon_component,
                                           sim::Rng& rng);

/// Each energy sampled at precision 2 step eps_j / sqrt(2).
SampledGradient sample_numerical_gradient(const DifferenceCircuits& c, double epsilon_component,
                                          sim::Rng& rng);

/// Exact central differences from the stored term values.
Eigen::VectorXd gradient_from_differences(const DifferenceCircuits& c);

}  // namespace uccvqe::vqe
