#pragma once

#include <Eigen/Dense>

#include "uccvqe/chem/mo.hpp"
#include "uccvqe/ops/fermion.hpp"
#include "uccvqe/ops/pauli.hpp"
#include "uccvqe/tensor4.hpp"

namespace uccvqe::ops {

struct SystemInfo {
  int n_spin_orbitals = 0;
  int n_electrons = 0;

  int n_virtual() const { return n_spin_orbitals - n_electrons; }
  /// Throws std::invalid_argument unless 1 <= n_electrons <= n_spin_orbitals
  /// and n_spin_orbitals is even.
  void validate() const;
};

/// Spin-orbital Hamiltonian
///   H = h_nuc + sum h_pq a+_p a_q + 1/2 sum h_pqrs a+_p a+_q a_r a_s
/// with h_pqrs = <pq|sr> = (ps|qr) in chemist notation. Spin orbitals are
/// interleaved: 2k is alpha and 2k+1 beta of spatial orbital k.
struct MolecularHamiltonian {
  Eigen::MatrixXd one_body;
  Tensor4<double> two_body;
  double nuclear_repulsion = 0.0;
  SystemInfo system;

  int n_spin_orbitals() const { return system.n_spin_orbitals; }
  int n_electrons() const { return system.n_electrons; }

  /// Checks shapes, h_pq symmetry and the (pqrs) = (qpsr) = (srqp)
  /// symmetries of real orbitals. Throws std::invalid_argument.
  void validate(double tol = 1e-10) const;
};

MolecularHamiltonian spatial_to_spin_orbital(const chem::MoIntegrals& mo);

/// Term-by-term image of the Hamiltonian; exact zeros are skipped.
FermionOperator build_fermion_hamiltonian(const MolecularHamiltonian& mh);

/// jordan_wigner(build_fermion_hamiltonian(mh)) with real coefficients.
QubitOperator qubit_hamiltonian(const MolecularHamiltonian& mh);

/// Each spatial orbital energy repeated for the alpha and beta spin orbital.
Eigen::VectorXd spin_orbital_energies(const Eigen::VectorXd& spatial);

}  // namespace uccvqe::ops
