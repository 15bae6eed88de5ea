#pragma once

#include <Eigen/Dense>
#include <vector>

#include "uccvqe/chem/integrals.hpp"

namespace uccvqe::chem {

struct ScfOptions {
  int max_iterations = 200;
  double energy_tolerance = 1e-10;
  double density_tolerance = 1e-8;
  int diis_size = 8;     // Fock matrices kept for extrapolation; 0 disables
  double damping = 0.3;  // weight of the previous density when diis_size == 0
  int stability_rounds = 4;  // restarts along negative orbital-Hessian modes
  double stability_tolerance = 1e-6;
  double stability_step = 0.5;  // rotation angle (rad) along the unit mode
};

struct ScfResult {
  Eigen::MatrixXd mo_coefficients;  // columns are MOs
  Eigen::VectorXd orbital_energies;  // ascending
  double hf_energy = 0.0;
  bool converged = false;
  int iterations = 0;
  int n_electrons = 0;
  std::vector<double> energy_history;
  bool monotone = true;  // energy never rose by more than 1e-10 between iterations
  bool stable = true;    // no negative real closed-shell orbital-Hessian mode left
};

/// Closed-shell restricted Hartree-Fock with symmetric orthogonalization,
/// a core-Hamiltonian guess and Pulay (DIIS) extrapolation. Converged
/// solutions are checked for real closed-shell instabilities and re-optimized
/// along the offending mode. Non-convergence is reported through
/// `converged = false`. Throws std::invalid_argument for odd or negative
/// electron counts or when n_electrons / 2 exceeds the basis size.
ScfResult run_rhf(const IntegralTables& tables, int n_electrons, const ScfOptions& options = {});

}  // namespace uccvqe::chem
