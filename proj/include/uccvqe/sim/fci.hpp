#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "uccvqe/ops/hamiltonian.hpp"
#include "uccvqe/ops/pauli.hpp"
#include "uccvqe/sim/statevector.hpp"

namespace uccvqe::sim {

struct FciResult {
  double energy = 0.0;
  Statevector state{0};
  Eigen::VectorXd sector_spectrum;  // ascending
  std::vector<std::uint32_t> sector_basis;
};

/// Basis states with exactly n_electrons set bits, ascending.
std::vector<std::uint32_t> sector_basis(int n_qubits, int n_electrons);

/// Block of the operator in the fixed-particle sector. Throws
/// std::invalid_argument when the operator couples the sector to others.
Eigen::MatrixXd sector_matrix(const ops::QubitOperator& op, const std::vector<std::uint32_t>& basis,
                              int n_qubits);

/// Lowest eigenpair of the operator in the n_electrons sector. The ground
/// state is embedded in the full register with its largest amplitude made
/// real and positive. Throws CapacityError beyond 16 qubits.
FciResult fci_solve(const ops::QubitOperator& op, const ops::SystemInfo& system);

}  // namespace uccvqe::sim
