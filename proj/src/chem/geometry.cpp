#include "uccvqe/chem/geometry.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "uccvqe/errors.hpp"

namespace uccvqe::chem {

void Geometry::validate() const {
  if (atoms.empty()) throw std::invalid_argument("geometry has no atoms");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].charge <= 0) throw std::invalid_argument("nuclear charge must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if ((atoms[i].position - atoms[j].position).norm() < 1e-10) {
        throw std::invalid_argument("atoms " + std::to_string(j) + " and " + std::to_string(i) +
                                    " coincide");
      }
    }
  }
}

Geometry make_geometry(std::vector<Atom> atoms, std::string label) {
  Geometry g{std::move(atoms), std::move(label)};
  g.validate();
  return g;
}

double nuclear_repulsion(const Geometry& geometry) {
  double e = 0.0;
  const auto& a = geometry.atoms;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      e += a[i].charge * a[j].charge / (a[i].position - a[j].position).norm();
  return e;
}

bool is_collinear(const Geometry& geometry, double tol) {
  const auto& a = geometry.atoms;
  if (a.size() < 3) return true;
  const Eigen::Vector3d axis = (a[1].position - a[0].position).normalized();
  for (std::size_t i = 2; i < a.size(); ++i) {
    const Eigen::Vector3d v = a[i].position - a[0].position;
    if (v.cross(axis).norm() > tol) return false;
  }
  return true;
}

Geometry parse_geometry(std::string_view text, std::string label) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  double scale = 0.0;
  std::vector<Atom> atoms;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (scale == 0.0) {
      if (first == "bohr") {
        scale = 1.0;
      } else if (first == "angstrom") {
        scale = kBohrPerAngstrom;
      } else {
        throw ParseError("expected units line 'bohr' or 'angstrom', got '" + first + "'", lineno);
      }
      continue;
    }
    Atom atom;
    try {
      std::size_t used = 0;
      atom.charge = std::stoi(first, &used);
      if (used != first.size()) throw std::invalid_argument(first);
    } catch (const std::exception&) {
      throw ParseError("bad nuclear charge '" + first + "'", lineno);
    }
    double x, y, z;
    if (!(ls >> x >> y >> z)) throw ParseError("expected 'Z x y z'", lineno);
    std::string extra;
    if (ls >> extra) throw ParseError("trailing token '" + extra + "'", lineno);
    atom.position = Eigen::Vector3d(x, y, z) * scale;
    atoms.push_back(atom);
  }
  if (scale == 0.0) throw ParseError("missing units line", lineno);
  return make_geometry(std::move(atoms), std::move(label));
}

Geometry read_geometry_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open geometry file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_geometry(buf.str(), path.filename().string());
}

H4Path parse_h4_path(std::string_view name) {
  if (name == "rect" || name == "rectangular" || name == "parallel") return H4Path::rectangular;
  if (name == "trap" || name == "trapezoidal") return H4Path::trapezoidal;
  if (name == "linear") return H4Path::linear;
  throw std::invalid_argument("unknown H4 path '" + std::string(name) + "'");
}

std::string_view to_string(H4Path path) {
  switch (path) {
    case H4Path::rectangular: return "rect";
    case H4Path::trapezoidal: return "trap";
    case H4Path::linear: return "linear";
  }
  return "?";
}

Geometry h4_geometry(H4Path path, double parameter) {
  const double d = kH4FixedSideAngstrom;
  std::vector<Eigen::Vector3d> pos;
  std::ostringstream label;
  label << "H4-" << to_string(path) << "-" << parameter;
  switch (path) {
    case H4Path::rectangular:
    case H4Path::linear: {
      if (!(parameter >= 0.6 - 1e-12 && parameter <= 5.0 + 1e-12))
        throw std::domain_error("H4 r must lie in [0.6, 5.0] angstrom");
      const double r = parameter;
      if (path == H4Path::rectangular) {
        pos = {{0, 0, 0}, {d, 0, 0}, {0, r, 0}, {d, r, 0}};
      } else {
        pos = {{0, 0, 0}, {d, 0, 0}, {d + r, 0, 0}, {2 * d + r, 0, 0}};
      }
      break;
    }
    case H4Path::trapezoidal: {
      if (!(parameter >= 90.0 - 1e-12 && parameter <= 180.0 + 1e-12))
        throw std::domain_error("H4 theta must lie in [90, 180] degrees");
      const double th = parameter * std::numbers::pi / 180.0;
      const Eigen::Vector3d b0(-d / 2, 0, 0), b1(d / 2, 0, 0);
      pos = {b0 + d * Eigen::Vector3d(std::cos(th), std::sin(th), 0), b0, b1,
             b1 + d * Eigen::Vector3d(-std::cos(th), std::sin(th), 0)};
      break;
    }
  }
  std::vector<Atom> atoms;
  for (const auto& p : pos) atoms.push_back({1, p * kBohrPerAngstrom});
  return make_geometry(std::move(atoms), label.str());
}

}  // namespace uccvqe::chem
