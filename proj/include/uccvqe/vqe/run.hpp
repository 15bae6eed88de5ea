#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "uccvqe/ansatz/ucc.hpp"
#include "uccvqe/sim/sampling.hpp"
#include "uccvqe/vqe/objective.hpp"
#include "uccvqe/vqe/optimizers.hpp"
#include "uccvqe/vqe/problem.hpp"

namespace uccvqe::vqe {

enum class GuessMode { random, zeros, mp2 };

GuessMode parse_guess(std::string_view name);
std::string_view to_string(GuessMode g);

struct VqeConfig {
  GuessMode guess = GuessMode::mp2;
  OptimizerConfig optimizer;
  GradientConfig gradient;
  int trotter_number = 1;
  ansatz::UccMode mode = ansatz::UccMode::trotterized;
  sim::NoiseModel noise;  // its seed is replaced by one derived from `seed`
  GradientPrecision precision;
  std::uint64_t seed = 0;
  double random_range = 0.25;  // random guesses are U[-range, range]
};

struct VqeResult {
  double energy = 0.0;        // best objective value seen by the optimizer
  double exact_energy = 0.0;  // noiseless energy at the returned amplitudes
  Eigen::VectorXd t;
  Eigen::VectorXd initial;
  std::int64_t energy_evaluations = 0;
  std::int64_t gradient_calls = 0;
  std::int64_t shots = 0;
  int iterations = 0;
  bool converged = false;
  std::string reason;
  std::optional<double> fci_energy;
  std::optional<double> infidelity;  // 1 - |<VQE|FCI>|^2
  std::optional<double> overlap;     // |<VQE|FCI>|
};

Eigen::VectorXd initial_guess(const ProblemBundle& problem, GuessMode mode, sim::Rng& rng,
                              double random_range = 0.25);

ansatz::UccAnsatz make_ansatz(const ProblemBundle& problem, const VqeConfig& config);

VqeResult run_vqe(const ProblemBundle& problem, const VqeConfig& config, const TraceFn& trace = {});

}  // namespace uccvqe::vqe
