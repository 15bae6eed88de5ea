#include "uccvqe/vqe/run.hpp"

#include <random>
#include <stdexcept>

namespace uccvqe::vqe {

GuessMode parse_guess(std::string_view name) {
  if (name == "random") return GuessMode::random;
  if (name == "zeros" || name == "zero") return GuessMode::zeros;
  if (name == "mp2") return GuessMode::mp2;
  throw std::invalid_argument("unknown guess '" + std::string(name) + "'");
}

std::string_view to_string(GuessMode g) {
  switch (g) {
    case GuessMode::random: return "random";
    case GuessMode::zeros: return "zeros";
    default: return "mp2";
  }
}

Eigen::VectorXd initial_guess(const ProblemBundle& problem, GuessMode mode, sim::Rng& rng,
                              double random_range) {
  const auto n = static_cast<Eigen::Index>(problem.excitations.size());
  switch (mode) {
    case GuessMode::zeros:
      return Eigen::VectorXd::Zero(n);
    case GuessMode::random: {
      std::uniform_real_distribution<double> u(-random_range, random_range);
      Eigen::VectorXd t(n);
      for (Eigen::Index k = 0; k < n; ++k) t(k) = u(rng);
      return t;
    }
    default:
      if (!problem.mp2) throw std::runtime_error("MP2 amplitudes unavailable for " + problem.label);
      return *problem.mp2;
  }
}

ansatz::UccAnsatz make_ansatz(const ProblemBundle& problem, const VqeConfig& config) {
  ansatz::UccAnsatz a;
  a.system = problem.system();
  a.excitations = problem.excitations;
  a.amplitudes = Eigen::VectorXd::Zero(a.n_parameters());
  a.trotter_number = config.trotter_number;
  a.mode = config.mode;
  a.validate();
  return a;
}

VqeResult run_vqe(const ProblemBundle& problem, const VqeConfig& config, const TraceFn& trace) {
  config.gradient.validate();
  config.optimizer.validate();
  if (problem.excitations.empty()) throw std::invalid_argument("empty excitation pool");

  sim::Rng guess_rng(config.seed);
  sim::NoiseModel noise = config.noise;
  noise.seed = config.seed * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL;
  Objective obj(problem.qubit_hamiltonian, make_ansatz(problem, config), noise);
  obj.set_gradient_precision(config.precision);

  VqeResult r;
  r.initial = initial_guess(problem, config.guess, guess_rng, config.random_range);

  const ScalarFn f = [&](const Eigen::VectorXd& t) { return obj.energy(t); };
  const CounterFn count = [&] { return obj.energy_evaluations(); };
  OptimizerResult o;
  if (config.optimizer.method == OptimizerMethod::nelder_mead) {
    o = nelder_mead(f, r.initial, config.optimizer, trace, count);
  } else {
    const GradientFn g = [&](const Eigen::VectorXd& t) { return obj.gradient(t, config.gradient); };
    o = lbfgs(f, g, r.initial, config.optimizer, trace, count);
  }
  r.energy = o.value;
  r.t = o.x;
  r.energy_evaluations = obj.energy_evaluations();
  r.gradient_calls = obj.gradient_calls();
  r.shots = obj.shots();
  r.iterations = o.iterations;
  r.converged = o.converged;
  r.reason = o.reason;
  const auto psi = obj.state(r.t);
  r.exact_energy = obj.exact_energy(r.t);
  if (problem.fci) {
    r.fci_energy = problem.fci->energy;
    r.infidelity = sim::infidelity(psi, problem.fci->state);
    r.overlap = sim::overlap(psi, problem.fci->state);
  }
  return r;
}

}  // namespace uccvqe::vqe
