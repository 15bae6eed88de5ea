#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace uccvqe::vqe {

enum class GradientMode { analytical, central_difference };

/// Shot bound for an energy at precision epsilon: (sum|h|)^2 / epsilon^2.
double measurement_cost_energy(double one_norm, double epsilon);

/// Same allocation with known term variances:
/// sum|h| * sum_i |h_i| Var_i / epsilon^2.
double measurement_cost_energy(const Eigen::VectorXd& coefficients,
                               const Eigen::VectorXd& variances, double epsilon);

/// C in the gradient bounds: 4 for the analytical gradient, 4/(2 delta)^2
/// for central differences.
double gradient_cost_constant(GradientMode mode, double step = 0.0);

/// Per-component bound C (sum|h|)^2 / eps_j^2.
double measurement_cost_gradient(double one_norm, double epsilon_component, GradientMode mode,
                                 double step = 0.0);

/// Whole-vector bound when eps_j^2 = eps^2 / n_parameters for every
/// component: n_parameters * C (sum|h|)^2 n_parameters / eps^2.
double measurement_cost_gradient_vector(double one_norm, double epsilon, int n_parameters,
                                        GradientMode mode, double step = 0.0);

/// Per-component precision that spends `shots` on a full gradient vector,
/// inverting measurement_cost_gradient summed over n_parameters components.
double component_precision_for_budget(double one_norm, double shots, int n_parameters,
                                      GradientMode mode, double step = 0.0);

}  // namespace uccvqe::vqe
