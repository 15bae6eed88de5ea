#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "uccvqe/ops/pauli.hpp"
#include "uccvqe/sim/statevector.hpp"

namespace uccvqe::sim {

using Rng = std::mt19937_64;

/// Stochastic error sources applied on top of exact simulation.
struct NoiseModel {
  double control_sigma = 0.0;  // std of Gaussian noise on each amplitude
  bool sampling = false;       // estimate expectations from finite shots
  double epsilon = 1.6e-3;     // target energy precision when sampling
  std::uint64_t seed = 0;

  void validate() const;
};

/// t + N(0, sigma^2) per component. sigma = 0 returns t unchanged.
Eigen::VectorXd perturb(const Eigen::VectorXd& t, double sigma, Rng& rng);

/// Shots for sum_i h_i <P_i> at precision epsilon with the allocation
/// m_i = ceil(|h_i| sum_j |h_j| / epsilon^2), which bounds the variance by
/// epsilon^2 when each Var<P_i> <= 1. The identity term gets no shots.
struct MeasurementPlan {
  double epsilon = 0.0;
  double identity = 0.0;
  std::vector<ops::PauliString> strings;
  std::vector<double> coefficients;
  std::vector<std::int64_t> shots;
  std::int64_t total_shots = 0;
};

/// Throws std::invalid_argument for epsilon <= 0 or a non-Hermitian operator.
MeasurementPlan make_measurement_plan(const ops::QubitOperator& op, double epsilon);

/// ceil(x) that ignores relative rounding noise below 1e-12.
std::int64_t shot_ceil(double x);

/// Mean of m outcomes of +-1 with P(+1) = (1 + mean)/2.
double sample_mean(double mean, std::int64_t m, Rng& rng);

struct SampledValue {
  double estimate = 0.0;
  std::int64_t shots = 0;
};

SampledValue sampled_expectation(const Statevector& state, const MeasurementPlan& plan, Rng& rng);
SampledValue sampled_expectation(const Statevector& state, const ops::QubitOperator& op,
                                 double epsilon, Rng& rng);

}  // namespace uccvqe::sim
