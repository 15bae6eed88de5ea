#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <vector>

#include "uccvqe/chem/geometry.hpp"

namespace uccvqe::chem {

struct Primitive {
  double exponent = 1.0;
  double coefficient = 1.0;  // multiplies a normalized primitive
};

/// Contracted Cartesian Gaussian. Only s shells (angular_momentum = 0) are
/// supported by the integral code; the field exists so that a non-s shell
/// can be rejected explicitly.
struct ContractedGaussian {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  std::vector<Primitive> primitives;
  int angular_momentum = 0;
};

enum class BasisName { sto3g, sto6g };

BasisName parse_basis_name(std::string_view name);
std::string_view to_string(BasisName name);

/// Rescales contraction coefficients so that the contracted function has
/// unit self-overlap. Throws std::invalid_argument for empty contractions
/// or non-positive exponents.
ContractedGaussian normalized(ContractedGaussian g);

/// One normalized 1s contraction per atom. Supported elements: H, He.
std::vector<ContractedGaussian> make_basis(const Geometry& geometry, BasisName name);

}  // namespace uccvqe::chem
