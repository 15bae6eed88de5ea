#pragma once

#include <Eigen/Dense>
#include <optional>

#include "uccvqe/chem/integrals.hpp"
#include "uccvqe/chem/scf.hpp"
#include "uccvqe/tensor4.hpp"

namespace uccvqe::chem {

/// Integrals over spatial molecular orbitals, chemist convention.
struct MoIntegrals {
  Eigen::MatrixXd h;  // core Hamiltonian
  Eri eri;            // (pq|rs)
  double nuclear_repulsion = 0.0;
  int n_orbitals = 0;
  int n_electrons = 0;
  std::optional<Eigen::VectorXd> orbital_energies;

  /// Closed-shell determinant energy with the lowest n_electrons/2 orbitals
  /// doubly occupied.
  double reference_energy() const;

  /// Diagonal of the closed-shell Fock operator. Equals the orbital energies
  /// for canonical Hartree-Fock orbitals.
  Eigen::VectorXd fock_diagonal() const;

  /// orbital_energies when present, otherwise fock_diagonal().
  Eigen::VectorXd energies() const;
};

/// Basis change with the SCF coefficients, eri by four quarter transforms.
/// Throws std::invalid_argument on shape mismatch or unconverged SCF.
MoIntegrals transform_to_mo(const IntegralTables& tables, const ScfResult& scf);

/// Same transform with an arbitrary coefficient matrix (no SCF required).
MoIntegrals transform_to_mo(const IntegralTables& tables, const Eigen::MatrixXd& coefficients,
                            int n_electrons);

}  // namespace uccvqe::chem
