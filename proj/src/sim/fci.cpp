#include "uccvqe/sim/fci.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "uccvqe/errors.hpp"

namespace uccvqe::sim {

std::vector<std::uint32_t> sector_basis(int n_qubits, int n_electrons) {
  if (n_qubits > Statevector::kMaxQubits) throw CapacityError("sector basis beyond 16 qubits");
  std::vector<std::uint32_t> out;
  for (std::uint32_t b = 0; b < (std::uint32_t{1} << n_qubits); ++b)
    if (std::popcount(b) == n_electrons) out.push_back(b);
  return out;
}

Eigen::MatrixXd sector_matrix(const ops::QubitOperator& op, const std::vector<std::uint32_t>& basis,
                              int n_qubits) {
  if (!op.is_hermitian()) throw std::invalid_argument("sector matrix needs a Hermitian operator");
  if (op.n_qubits() > n_qubits) throw std::invalid_argument("operator acts outside the register");
  std::unordered_map<std::uint32_t, Eigen::Index> pos;
  for (std::size_t k = 0; k < basis.size(); ++k) pos[basis[k]] = static_cast<Eigen::Index>(k);
  const auto m = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
  std::unordered_map<std::uint64_t, std::complex<double>> leak;
  for (const auto& [p, c] : op.terms())
    for (Eigen::Index col = 0; col < m; ++col) {
      const auto b = basis[static_cast<std::size_t>(col)];
      const auto f = static_cast<std::uint32_t>(b ^ p.x_mask());
      const auto v = c * ops::pauli_phase(p, b);
      auto it = pos.find(f);
      // Individual strings may leave the sector; only their sum must vanish.
      if (it == pos.end())
        leak[(std::uint64_t{f} << 32) | static_cast<std::uint64_t>(col)] += v;
      else
        h(it->second, col) += v;
    }
  for (const auto& [key, v] : leak)
    if (std::abs(v) > 1e-10) throw std::invalid_argument("operator does not conserve particle number");
  if (h.imag().cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("sector block is not real");
  return h.real();
}

FciResult fci_solve(const ops::QubitOperator& op, const ops::SystemInfo& system) {
  const int n = system.n_spin_orbitals;
  if (n > Statevector::kMaxQubits) throw CapacityError("FCI limited to 16 qubits");
  FciResult out;
  out.sector_basis = sector_basis(n, system.n_electrons);
  if (out.sector_basis.empty()) throw std::invalid_argument("empty particle sector");
  const Eigen::MatrixXd h = sector_matrix(op, out.sector_basis, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("FCI diagonalization failed");
  out.sector_spectrum = es.eigenvalues();
  out.energy = es.eigenvalues()(0);
  Eigen::VectorXd v = es.eigenvectors().col(0);
  Eigen::Index imax;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  for (std::size_t k = 0; k < out.sector_basis.size(); ++k)
    full(out.sector_basis[k]) = v(static_cast<Eigen::Index>(k));
  out.state = Statevector(std::move(full));
  return out;
}

}  // namespace uccvqe::sim
