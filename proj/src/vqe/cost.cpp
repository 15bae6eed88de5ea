#include "uccvqe/vqe/cost.hpp"

#include <cmath>
#include <stdexcept>

namespace uccvqe::vqe {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

double measurement_cost_energy(double one_norm, double epsilon) {
  require_positive(epsilon, "precision");
  return one_norm * one_norm / (epsilon * epsilon);
}

double measurement_cost_energy(const Eigen::VectorXd& coefficients,
                               const Eigen::VectorXd& variances, double epsilon) {
  require_positive(epsilon, "precision");
  if (coefficients.size() != variances.size())
    throw std::invalid_argument("one variance per coefficient required");
  const Eigen::VectorXd a = coefficients.cwiseAbs();
  return a.sum() * a.dot(variances) / (epsilon * epsilon);
}

double gradient_cost_constant(GradientMode mode, double step) {
  if (mode == GradientMode::analytical) return 4.0;
  require_positive(step, "finite-difference step");
  return 4.0 / ((2.0 * step) * (2.0 * step));
}

double measurement_cost_gradient(double one_norm, double epsilon_component, GradientMode mode,
                                 double step) {
  require_positive(epsilon_component, "precision");
  return gradient_cost_constant(mode, step) * one_norm * one_norm /
         (epsilon_component * epsilon_component);
}

double measurement_cost_gradient_vector(double one_norm, double epsilon, int n_parameters,
                                        GradientMode mode, double step) {
  if (n_parameters < 1) throw std::invalid_argument("parameter count must be positive");
  const double eps_j = epsilon / std::sqrt(static_cast<double>(n_parameters));
  return n_parameters * measurement_cost_gradient(one_norm, eps_j, mode, step);
}

double component_precision_for_budget(double one_norm, double shots, int n_parameters,
                                      GradientMode mode, double step) {
  require_positive(shots, "shot budget");
  if (n_parameters < 1) throw std::invalid_argument("parameter count must be positive");
  return std::sqrt(n_parameters * gradient_cost_constant(mode, step) * one_norm * one_norm / shots);
}

}  // namespace uccvqe::vqe
