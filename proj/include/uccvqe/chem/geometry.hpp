#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace uccvqe::chem {

inline constexpr double kBohrPerAngstrom = 1.8897259886;

struct Atom {
  int charge = 1;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // bohr
};

struct Geometry {
  std::vector<Atom> atoms;
  std::string label;

  // Throws std::invalid_argument when empty, when a charge is not positive,
  // or when two atoms coincide.
  void validate() const;
};

Geometry make_geometry(std::vector<Atom> atoms, std::string label = {});

/// Nuclear repulsion energy in hartree.
double nuclear_repulsion(const Geometry& geometry);

bool is_collinear(const Geometry& geometry, double tol = 1e-8);

/// Plain-text geometry: a units line (`bohr` or `angstrom`), then one
/// `Z x y z` line per atom. `#` starts a comment.
Geometry parse_geometry(std::string_view text, std::string label = {});
Geometry read_geometry_file(const std::filesystem::path& path);

enum class H4Path { rectangular, trapezoidal, linear };

H4Path parse_h4_path(std::string_view name);
std::string_view to_string(H4Path path);

inline constexpr double kH4FixedSideAngstrom = 2.0;

/// Four-hydrogen model geometries with the fixed side d = 2.0 angstrom.
///
///  - rectangular: two H2 units of bond d, parallel, separated by r
///    (a d x r rectangle; r = d is the square).
///  - linear: H-H-H-H with spacings d, r, d along one axis.
///  - trapezoidal: isosceles trapezoid with three sides of length d; the
///    parameter is the interior angle theta (degrees) at the two atoms of
///    the short base. theta = 90 gives the square, theta = 180 the chain
///    with uniform spacing d.
///
/// `parameter` is r in angstrom for rectangular/linear and theta in degrees
/// for trapezoidal. Throws std::domain_error outside [0.6, 5.0] angstrom or
/// [90, 180] degrees.
Geometry h4_geometry(H4Path path, double parameter);

}  // namespace uccvqe::chem
