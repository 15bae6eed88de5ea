#include "uccvqe/ops/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace uccvqe::ops {

void SystemInfo::validate() const {
  if (n_spin_orbitals <= 0 || n_spin_orbitals % 2 != 0)
    throw std::invalid_argument("spin-orbital count must be positive and even");
  if (n_electrons < 1 || n_electrons > n_spin_orbitals)
    throw std::invalid_argument("electron count must lie in [1, n_spin_orbitals]");
}

void MolecularHamiltonian::validate(double tol) const {
  system.validate();
  const int n = system.n_spin_orbitals;
  if (one_body.rows() != n || one_body.cols() != n ||
      two_body.dim() != static_cast<std::size_t>(n))
    throw std::invalid_argument("Hamiltonian tensor shapes do not match the system");
  if ((one_body - one_body.transpose()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("one-body integrals are not symmetric");
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = two_body(p, q, r, s);
          if (std::abs(v - two_body(q, p, s, r)) > tol || std::abs(v - two_body(s, r, q, p)) > tol)
            throw std::invalid_argument("two-body integrals break index symmetry");
        }
}

MolecularHamiltonian spatial_to_spin_orbital(const chem::MoIntegrals& mo) {
  const int m = mo.n_orbitals;
  if (mo.h.rows() != m || mo.h.cols() != m || mo.eri.dim() != static_cast<std::size_t>(m))
    throw std::invalid_argument("MO integral shapes do not match n_orbitals");
  const int n = 2 * m;
  MolecularHamiltonian mh;
  mh.system = {n, mo.n_electrons};
  mh.nuclear_repulsion = mo.nuclear_repulsion;
  mh.one_body = Eigen::MatrixXd::Zero(n, n);
  mh.two_body = Tensor4<double>(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p)
    for (int q = p % 2; q < n; q += 2) mh.one_body(p, q) = mo.h(p / 2, q / 2);
  // h_pqrs = (ps|qr): spin of p matches s, spin of q matches r.
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = q % 2; r < n; r += 2)
        for (int s = p % 2; s < n; s += 2)
          mh.two_body(p, q, r, s) = mo.eri(p / 2, s / 2, q / 2, r / 2);
  return mh;
}

FermionOperator build_fermion_hamiltonian(const MolecularHamiltonian& mh) {
  const int n = mh.n_spin_orbitals();
  FermionOperator f;
  if (mh.nuclear_repulsion != 0.0) f.add_term({}, mh.nuclear_repulsion);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (const double v = mh.one_body(p, q); v != 0.0) f.add_term({cr(p), an(q)}, v);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          if (const double v = mh.two_body(p, q, r, s); v != 0.0)
            f.add_term({cr(p), cr(q), an(r), an(s)}, 0.5 * v);
  return f;
}

QubitOperator qubit_hamiltonian(const MolecularHamiltonian& mh) {
  QubitOperator q = jordan_wigner(build_fermion_hamiltonian(mh));
  QubitOperator out;
  for (const auto& [p, c] : q.terms()) out.add_term(p, c.real());
  return out.simplify();
}

Eigen::VectorXd spin_orbital_energies(const Eigen::VectorXd& spatial) {
  Eigen::VectorXd e(2 * spatial.size());
  for (Eigen::Index k = 0; k < spatial.size(); ++k) e(2 * k) = e(2 * k + 1) = spatial(k);
  return e;
}

}  // namespace uccvqe::ops
