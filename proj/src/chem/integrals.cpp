#include "uccvqe/chem/integrals.hpp"

#include <stdexcept>

#include "uccvqe/chem/gaussian.hpp"
#include "uccvqe/errors.hpp"

namespace uccvqe::chem {

IntegralTables build_integrals(const Geometry& geometry,
                               const std::vector<ContractedGaussian>& basis) {
  geometry.validate();
  if (basis.empty()) throw std::invalid_argument("empty basis");
  for (const auto& g : basis) {
    if (g.angular_momentum != 0)
      throw UnsupportedError("only s-type shells are supported (got l = " +
                             std::to_string(g.angular_momentum) + ")");
    if (g.primitives.empty()) throw std::invalid_argument("contraction has no primitives");
  }

  const auto n = static_cast<Eigen::Index>(basis.size());
  IntegralTables t;
  t.overlap = Eigen::MatrixXd::Zero(n, n);
  t.kinetic = Eigen::MatrixXd::Zero(n, n);
  t.nuclear = Eigen::MatrixXd::Zero(n, n);
  t.eri = Eri(basis.size());
  t.nuclear_repulsion = nuclear_repulsion(geometry);

  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b <= a; ++b) {
      double s = 0, k = 0, v = 0;
      for (const auto& pa : basis[a].primitives) {
        for (const auto& pb : basis[b].primitives) {
          const double cc = pa.coefficient * pb.coefficient;
          s += cc * overlap_primitive<double>(pa.exponent, basis[a].center, pb.exponent,
                                              basis[b].center);
          k += cc * kinetic_primitive<double>(pa.exponent, basis[a].center, pb.exponent,
                                              basis[b].center);
          for (const auto& atom : geometry.atoms)
            v += cc * nuclear_primitive<double>(pa.exponent, basis[a].center, pb.exponent,
                                                basis[b].center, atom.charge, atom.position);
        }
      }
      t.overlap(a, b) = t.overlap(b, a) = s;
      t.kinetic(a, b) = t.kinetic(b, a) = k;
      t.nuclear(a, b) = t.nuclear(b, a) = v;
    }
  }

  const auto ns = basis.size();
  for (std::size_t p = 0; p < ns; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r <= p; ++r)
        for (std::size_t s = 0; s <= (r == p ? q : r); ++s) {
          double v = 0;
          for (const auto& a : basis[p].primitives)
            for (const auto& b : basis[q].primitives)
              for (const auto& c : basis[r].primitives)
                for (const auto& d : basis[s].primitives)
                  v += a.coefficient * b.coefficient * c.coefficient * d.coefficient *
                       eri_primitive<double>(a.exponent, basis[p].center, b.exponent,
                                             basis[q].center, c.exponent, basis[r].center,
                                             d.exponent, basis[s].center);
          t.eri.set_chemist_symmetric(p, q, r, s, v);
        }
  return t;
}

}  // namespace uccvqe::chem
