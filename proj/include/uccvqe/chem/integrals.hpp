#pragma once

#include <Eigen/Dense>
#include <vector>

#include "uccvqe/chem/basis.hpp"
#include "uccvqe/chem/geometry.hpp"
#include "uccvqe/tensor4.hpp"

namespace uccvqe::chem {

/// Atomic-orbital integrals. `eri(p, q, r, s)` is (pq|rs).
struct IntegralTables {
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd kinetic;
  Eigen::MatrixXd nuclear;
  Eri eri;
  double nuclear_repulsion = 0.0;

  Eigen::MatrixXd core_hamiltonian() const { return kinetic + nuclear; }
  Eigen::Index n_basis() const { return overlap.rows(); }
};

/// Throws UnsupportedError for non-s shells and std::invalid_argument for an
/// empty basis.
IntegralTables build_integrals(const Geometry& geometry,
                               const std::vector<ContractedGaussian>& basis);

}  // namespace uccvqe::chem
