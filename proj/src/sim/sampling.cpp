#include "uccvqe/sim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uccvqe::sim {

void NoiseModel::validate() const {
  if (!(control_sigma >= 0)) throw std::invalid_argument("control noise sigma must be non-negative");
  if (sampling && !(epsilon > 0)) throw std::invalid_argument("sampling precision must be positive");
}

Eigen::VectorXd perturb(const Eigen::VectorXd& t, double sigma, Rng& rng) {
  if (!(sigma >= 0)) throw std::invalid_argument("sigma must be non-negative");
  if (sigma == 0) return t;
  std::normal_distribution<double> d(0.0, sigma);
  Eigen::VectorXd out = t;
  for (Eigen::Index k = 0; k < out.size(); ++k) out(k) += d(rng);
  return out;
}

std::int64_t shot_ceil(double x) {
  return static_cast<std::int64_t>(std::ceil(x * (1.0 - 1e-12)));
}

MeasurementPlan make_measurement_plan(const ops::QubitOperator& op, double epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("precision must be positive");
  if (!op.is_hermitian()) throw std::invalid_argument("measurement plan needs a Hermitian operator");
  MeasurementPlan plan;
  plan.epsilon = epsilon;
  const double norm1 = ops::one_norm(op);
  for (const auto& [p, c] : op.terms()) {
    if (p.is_identity()) {
      plan.identity = c.real();
      continue;
    }
    if (c.real() == 0.0) continue;
    const auto m = std::max<std::int64_t>(1, shot_ceil(std::abs(c.real()) * norm1 / (epsilon * epsilon)));
    plan.strings.push_back(p);
    plan.coefficients.push_back(c.real());
    plan.shots.push_back(m);
    plan.total_shots += m;
  }
  return plan;
}

double sample_mean(double mean, std::int64_t m, Rng& rng) {
  if (m <= 0) throw std::invalid_argument("shot count must be positive");
  const double p = std::clamp(0.5 * (1.0 + mean), 0.0, 1.0);
  std::binomial_distribution<std::int64_t> d(m, p);
  const auto plus = d(rng);
  return static_cast<double>(2 * plus - m) / static_cast<double>(m);
}

SampledValue sampled_expectation(const Statevector& state, const MeasurementPlan& plan, Rng& rng) {
  SampledValue out{plan.identity, 0};
  for (std::size_t i = 0; i < plan.strings.size(); ++i) {
    const double exact = pauli_expectation(state, plan.strings[i]);
    out.estimate += plan.coefficients[i] * sample_mean(exact, plan.shots[i], rng);
    out.shots += plan.shots[i];
  }
  return out;
}

SampledValue sampled_expectation(const Statevector& state, const ops::QubitOperator& op,
                                 double epsilon, Rng& rng) {
  return sampled_expectation(state, make_measurement_plan(op, epsilon), rng);
}

}  // namespace uccvqe::sim
