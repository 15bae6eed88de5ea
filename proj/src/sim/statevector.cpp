#include "uccvqe/sim/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "uccvqe/errors.hpp"

namespace uccvqe::sim {

namespace {

void check_capacity(int n) {
  if (n < 0) throw std::invalid_argument("negative qubit count");
  if (n > Statevector::kMaxQubits)
    throw CapacityError("statevector limited to " + std::to_string(Statevector::kMaxQubits) +
                        " qubits, got " + std::to_string(n));
}

void check_support(const Statevector& s, const ops::PauliString& p) {
  if (p.max_qubit() >= s.n_qubits())
    throw std::invalid_argument("Pauli string acts outside the register");
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_(n_qubits) {
  check_capacity(n_qubits);
  amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  amps_(0) = 1.0;
}

Statevector::Statevector(Eigen::VectorXcd amplitudes) : n_(0), amps_(std::move(amplitudes)) {
  const auto d = static_cast<std::uint64_t>(amps_.size());
  if (d == 0 || !std::has_single_bit(d))
    throw std::invalid_argument("amplitude count must be a power of two");
  n_ = std::countr_zero(d);
  check_capacity(n_);
  const double nrm = amps_.norm();
  if (nrm == 0.0) throw std::invalid_argument("zero state");
  amps_ /= nrm;
}

Statevector Statevector::basis_state(int n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  if (index >= static_cast<std::uint64_t>(s.dim())) throw std::invalid_argument("basis index out of range");
  s.amps_(0) = 0.0;
  s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

Statevector hf_state(const ops::SystemInfo& system) {
  check_capacity(system.n_spin_orbitals);
  if (system.n_electrons < 0 || system.n_electrons > system.n_spin_orbitals)
    throw std::invalid_argument("electron count out of range");
  return Statevector::basis_state(system.n_spin_orbitals,
                                  (std::uint64_t{1} << system.n_electrons) - 1);
}

void apply_pauli(Statevector& state, const ops::PauliString& p) {
  check_support(state, p);
  auto& a = state.data();
  Eigen::VectorXcd out(a.size());
  for (Eigen::Index b = 0; b < a.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    out(static_cast<Eigen::Index>(ub ^ p.x_mask())) = ops::pauli_phase(p, ub) * a(b);
  }
  a.swap(out);
}

void apply_pauli_rotation(Statevector& state, const ops::PauliString& p, double theta) {
  check_support(state, p);
  auto& a = state.data();
  const double c = std::cos(theta), s = std::sin(theta);
  const std::uint64_t xm = p.x_mask();
  if (xm == 0) {
    // Diagonal: each amplitude picks up exp(i theta lambda), lambda = +-1.
    for (Eigen::Index b = 0; b < a.size(); ++b) {
      const double lam = ops::pauli_phase(p, static_cast<std::uint64_t>(b)).real();
      a(b) *= Complex(c, s * lam);
    }
    return;
  }
  const std::uint64_t hi = std::uint64_t{1} << (63 - std::countl_zero(xm));
  const Complex is(0, s);
  for (Eigen::Index bi = 0; bi < a.size(); ++bi) {
    const auto b = static_cast<std::uint64_t>(bi);
    if (b & hi) continue;
    const auto f = b ^ xm;
    const Complex ab = a(bi), af = a(static_cast<Eigen::Index>(f));
    // (P psi)[f] = phase(b) psi[b], (P psi)[b] = phase(f) psi[f].
    a(bi) = c * ab + is * ops::pauli_phase(p, f) * af;
    a(static_cast<Eigen::Index>(f)) = c * af + is * ops::pauli_phase(p, b) * ab;
  }
}

double pauli_expectation(const Statevector& state, const ops::PauliString& p) {
  check_support(state, p);
  const auto& a = state.amplitudes();
  Complex acc = 0;
  for (Eigen::Index b = 0; b < a.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    acc += std::conj(a(static_cast<Eigen::Index>(ub ^ p.x_mask()))) * ops::pauli_phase(p, ub) * a(b);
  }
  return acc.real();
}

double expectation(const Statevector& state, const ops::QubitOperator& op) {
  if (!op.is_hermitian()) throw std::invalid_argument("expectation requires a Hermitian operator");
  double e = 0;
  for (const auto& [p, c] : op.terms()) e += c.real() * pauli_expectation(state, p);
  return e;
}

std::complex<double> inner(const Statevector& a, const Statevector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("statevector dimensions differ");
  return a.amplitudes().dot(b.amplitudes());
}

double infidelity(const Statevector& a, const Statevector& b) {
  return std::clamp(1.0 - std::norm(inner(a, b)), 0.0, 1.0);
}

double overlap(const Statevector& a, const Statevector& b) {
  return std::min(1.0, std::abs(inner(a, b)));
}

Eigen::SparseMatrix<Complex> to_sparse(const ops::QubitOperator& op, int n_qubits) {
  check_capacity(n_qubits);
  if (op.n_qubits() > n_qubits) throw std::invalid_argument("operator acts outside the register");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(op.size() * static_cast<std::size_t>(dim));
  for (const auto& [p, c] : op.terms())
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      trip.emplace_back(static_cast<Eigen::Index>(ub ^ p.x_mask()), b, c * ops::pauli_phase(p, ub));
    }
  Eigen::SparseMatrix<Complex> m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  m.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return std::abs(v) > 1e-14; });
  m.makeCompressed();
  return m;
}

double particle_number(const Statevector& state) {
  const auto& a = state.amplitudes();
  double n = 0;
  for (Eigen::Index b = 0; b < a.size(); ++b)
    n += std::norm(a(b)) * std::popcount(static_cast<std::uint64_t>(b));
  return n;
}

}  // namespace uccvqe::sim
