#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace uccvqe::vqe {

enum class OptimizerMethod { nelder_mead, lbfgs };

OptimizerMethod parse_optimizer(std::string_view name);
std::string_view to_string(OptimizerMethod m);

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::lbfgs;
  double energy_tolerance = 1e-5;
  double parameter_tolerance = 1e-4;
  double gradient_tolerance = 1e-4;  // max-norm, L-BFGS
  std::int64_t max_evaluations = 20000;
  int max_iterations = 100000;
  // L-BFGS
  int history = 10;
  double armijo = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 30;
  // Nelder-Mead
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrinkage = 0.5;
  double simplex_step = 0.05;        // relative displacement
  double simplex_zero_step = 0.00025;  // used where x0_j == 0

  void validate() const;
};

struct TraceRecord {
  int iteration = 0;
  double value = 0.0;
  double gradient_norm = 0.0;  // 0 for derivative-free methods
  std::int64_t evaluations = 0;
  std::int64_t gradient_calls = 0;
};

using TraceFn = std::function<void(const TraceRecord&)>;
using ScalarFn = std::function<double(const Eigen::VectorXd&)>;
using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
/// Optional external evaluation counter (e.g. energies spent inside a
/// numerical gradient); when set it replaces the internal count for the
/// evaluation cap and the reported total.
using CounterFn = std::function<std::int64_t()>;

struct OptimizerResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::int64_t evaluations = 0;
  std::int64_t gradient_calls = 0;
  int iterations = 0;
  bool converged = false;
  std::string reason;
};

/// Simplex search. Stops when max_i |f_i - f_best| <= energy_tolerance and
/// max_i |x_i - x_best|_inf <= parameter_tolerance.
OptimizerResult nelder_mead(const ScalarFn& f, const Eigen::VectorXd& x0,
                            const OptimizerConfig& config, const TraceFn& trace = {},
                            const CounterFn& evaluations = {});

/// Limited-memory BFGS with backtracking Armijo line search. Stops when
/// |g|_inf < gradient_tolerance, or when an accepted step changes f by less
/// than energy_tolerance and every parameter by less than
/// parameter_tolerance.
OptimizerResult lbfgs(const ScalarFn& f, const GradientFn& grad, const Eigen::VectorXd& x0,
                      const OptimizerConfig& config, const TraceFn& trace = {},
                      const CounterFn& evaluations = {});

}  // namespace uccvqe::vqe
