#include "uccvqe/chem/basis.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "uccvqe/chem/gaussian.hpp"
#include "uccvqe/errors.hpp"

namespace uccvqe::chem {
namespace {

// STO-nG least-squares fits to a Slater 1s function with zeta = 1. Exponents
// scale with zeta^2.
constexpr std::array<Primitive, 3> kSto3g{{{2.227660584, 0.1543289673},
                                           {0.4057711562, 0.5353281423},
                                           {0.1098175104, 0.4446345422}}};
constexpr std::array<Primitive, 6> kSto6g{{{23.10303149, 0.009163596281},
                                           {4.235915534, 0.04936149294},
                                           {1.185056519, 0.1685383049},
                                           {0.4070988982, 0.3705627997},
                                           {0.1580884151, 0.4164915298},
                                           {0.06510953954, 0.1303340841}}};

double slater_zeta(int charge) {
  switch (charge) {
    case 1: return 1.24;
    case 2: return 1.69;
    default:
      throw UnsupportedError("no embedded 1s basis for nuclear charge " + std::to_string(charge));
  }
}

}  // namespace

BasisName parse_basis_name(std::string_view name) {
  if (name == "sto-3g" || name == "sto3g") return BasisName::sto3g;
  if (name == "sto-6g" || name == "sto6g") return BasisName::sto6g;
  throw std::invalid_argument("unknown basis '" + std::string(name) + "'");
}

std::string_view to_string(BasisName name) {
  return name == BasisName::sto3g ? "sto-3g" : "sto-6g";
}

ContractedGaussian normalized(ContractedGaussian g) {
  if (g.primitives.empty()) throw std::invalid_argument("contraction has no primitives");
  for (const auto& p : g.primitives)
    if (!(p.exponent > 0)) throw std::invalid_argument("Gaussian exponent must be positive");
  double s = 0.0;
  for (const auto& a : g.primitives)
    for (const auto& b : g.primitives)
      s += a.coefficient * b.coefficient *
           overlap_primitive<double>(a.exponent, g.center, b.exponent, g.center);
  const double scale = 1.0 / std::sqrt(s);
  for (auto& p : g.primitives) p.coefficient *= scale;
  return g;
}

std::vector<ContractedGaussian> make_basis(const Geometry& geometry, BasisName name) {
  std::vector<ContractedGaussian> basis;
  for (const auto& atom : geometry.atoms) {
    const double z2 = std::pow(slater_zeta(atom.charge), 2);
    ContractedGaussian g;
    g.center = atom.position;
    auto add = [&](const auto& table) {
      for (const auto& p : table) g.primitives.push_back({p.exponent * z2, p.coefficient});
    };
    if (name == BasisName::sto3g) add(kSto3g); else add(kSto6g);
    basis.push_back(normalized(std::move(g)));
  }
  return basis;
}

}  // namespace uccvqe::chem
