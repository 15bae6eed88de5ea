#include "uccvqe/chem/mo.hpp"

#include <stdexcept>

namespace uccvqe::chem {

double MoIntegrals::reference_energy() const {
  const int nocc = n_electrons / 2;
  double e = nuclear_repulsion;
  for (int i = 0; i < nocc; ++i) {
    e += 2.0 * h(i, i);
    for (int j = 0; j < nocc; ++j) e += 2.0 * eri(i, i, j, j) - eri(i, j, j, i);
  }
  return e;
}

Eigen::VectorXd MoIntegrals::fock_diagonal() const {
  const int nocc = n_electrons / 2;
  Eigen::VectorXd f(n_orbitals);
  for (int p = 0; p < n_orbitals; ++p) {
    double v = h(p, p);
    for (int i = 0; i < nocc; ++i) v += 2.0 * eri(p, p, i, i) - eri(p, i, i, p);
    f(p) = v;
  }
  return f;
}

Eigen::VectorXd MoIntegrals::energies() const {
  return orbital_energies ? *orbital_energies : fock_diagonal();
}

MoIntegrals transform_to_mo(const IntegralTables& t, const Eigen::MatrixXd& c, int n_electrons) {
  const auto n = t.n_basis();
  if (c.rows() != n || c.cols() != n)
    throw std::invalid_argument("coefficient matrix shape does not match the basis");
  MoIntegrals mo;
  mo.n_orbitals = static_cast<int>(n);
  mo.n_electrons = n_electrons;
  mo.nuclear_repulsion = t.nuclear_repulsion;
  mo.h = c.transpose() * t.core_hamiltonian() * c;
  mo.h = 0.5 * (mo.h + mo.h.transpose()).eval();

  // Quarter transforms, one index at a time.
  const auto un = static_cast<std::size_t>(n);
  Eri a = t.eri, b(un);
  auto transform_index = [&](int which) {
    for (std::size_t p = 0; p < un; ++p)
      for (std::size_t q = 0; q < un; ++q)
        for (std::size_t r = 0; r < un; ++r)
          for (std::size_t s = 0; s < un; ++s) {
            double v = 0;
            for (std::size_t m = 0; m < un; ++m) {
              switch (which) {
                case 0: v += c(m, p) * a(m, q, r, s); break;
                case 1: v += c(m, q) * a(p, m, r, s); break;
                case 2: v += c(m, r) * a(p, q, m, s); break;
                default: v += c(m, s) * a(p, q, r, m); break;
              }
            }
            b(p, q, r, s) = v;
          }
    std::swap(a, b);
  };
  for (int k = 0; k < 4; ++k) transform_index(k);
  mo.eri = std::move(a);
  return mo;
}

MoIntegrals transform_to_mo(const IntegralTables& t, const ScfResult& scf) {
  if (!scf.converged) throw std::invalid_argument("SCF did not converge");
  MoIntegrals mo = transform_to_mo(t, scf.mo_coefficients, scf.n_electrons);
  mo.orbital_energies = scf.orbital_energies;
  return mo;
}

}  // namespace uccvqe::chem
