#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "uccvqe/ansatz/cas.hpp"
#include "uccvqe/ansatz/excitation.hpp"
#include "uccvqe/chem/basis.hpp"
#include "uccvqe/chem/geometry.hpp"
#include "uccvqe/chem/mo.hpp"
#include "uccvqe/ops/hamiltonian.hpp"
#include "uccvqe/ops/pauli.hpp"
#include "uccvqe/sim/fci.hpp"

namespace uccvqe::vqe {

struct ProblemOptions {
  chem::BasisName basis = chem::BasisName::sto6g;
  std::optional<ansatz::ActiveSpaceSpec> active_space;
  double screen_threshold = -1.0;  // negative keeps the full pool
  bool solve_fci = true;
};

/// Everything a VQE run needs for one molecule and geometry.
struct ProblemBundle {
  std::string label;
  ops::MolecularHamiltonian hamiltonian;  // active space when reduced
  ops::QubitOperator qubit_hamiltonian;
  Eigen::VectorXd orbital_energies;       // per spin orbital
  double hf_energy = 0.0;                 // reference determinant energy
  bool scf_converged = true;
  std::vector<ansatz::Excitation> excitations;  // after screening
  std::optional<Eigen::VectorXd> mp2;           // aligned with excitations
  std::size_t full_pool_size = 0;
  std::optional<sim::FciResult> fci;

  const ops::SystemInfo& system() const { return hamiltonian.system; }
};

/// RHF, MO transform and Hamiltonian compilation for a neutral molecule.
/// Throws std::runtime_error when the SCF does not converge.
ProblemBundle build_problem(const chem::Geometry& geometry, const ProblemOptions& options = {});

/// Same from precomputed MO integrals (e.g. an FCIDUMP file).
ProblemBundle build_problem(const chem::MoIntegrals& mo, const ProblemOptions& options = {},
                            std::string label = {});

}  // namespace uccvqe::vqe
