#pragma once

#include <vector>

#include "uccvqe/ops/hamiltonian.hpp"

namespace uccvqe::ansatz {

/// Frozen-core / active / discarded split over spatial orbitals.
struct ActiveSpaceSpec {
  int n_active_electrons = 0;
  int n_active_orbitals = 0;
  std::vector<int> frozen_occupied;
  std::vector<int> discarded_virtual;

  /// CAS(n_electrons, n_orbitals) around the Fermi level: the highest
  /// occupied and lowest virtual orbitals are active.
  static ActiveSpaceSpec around_fermi_level(const ops::SystemInfo& system, int n_electrons,
                                            int n_orbitals);

  /// Spatial orbitals in the active space, ascending.
  std::vector<int> active_orbitals(const ops::SystemInfo& system) const;
  /// Throws std::invalid_argument for inconsistent counts and
  /// UnsupportedError when a frozen orbital is not doubly occupied.
  void validate(const ops::SystemInfo& system) const;
};

struct CasProblem {
  /// Active Hamiltonian; its nuclear_repulsion holds the full core energy
  /// so its energies are directly comparable with the full problem.
  ops::MolecularHamiltonian hamiltonian;
  double core_energy = 0.0;
  std::vector<int> active_orbitals;
};

/// Frozen-core reduction: core energy from the doubly occupied frozen
/// orbitals, active one-body terms dressed by their Coulomb and exchange
/// fields, two-body terms restricted to the active space.
CasProblem cas_reduce(const ops::MolecularHamiltonian& mh, const ActiveSpaceSpec& spec);

}  // namespace uccvqe::ansatz
