#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>

#include "uccvqe/ops/hamiltonian.hpp"
#include "uccvqe/ops/pauli.hpp"

namespace uccvqe::sim {

using Complex = std::complex<double>;

/// Register of n qubits. Basis index bit q is qubit q; a set bit is |1>,
/// the -1 eigenstate of Z and an occupied spin orbital.
class Statevector {
 public:
  static constexpr int kMaxQubits = 16;

  /// |0...0>. Throws CapacityError for n > 16.
  explicit Statevector(int n_qubits);
  /// Normalized copy of `amplitudes`; throws std::invalid_argument for a
  /// length that is not a power of two or a zero vector.
  explicit Statevector(Eigen::VectorXcd amplitudes);

  static Statevector basis_state(int n_qubits, std::uint64_t index);

  int n_qubits() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  /// Mutable access for in-place kernels; callers keep the norm at one.
  Eigen::VectorXcd& data() noexcept { return amps_; }
  Complex operator[](Eigen::Index i) const { return amps_(i); }

  double norm() const { return amps_.norm(); }

 private:
  int n_;
  Eigen::VectorXcd amps_;
};

/// Qubits 0..eta-1 set.
Statevector hf_state(const ops::SystemInfo& system);

/// P|psi>.
void apply_pauli(Statevector& state, const ops::PauliString& p);

/// psi <- exp(i theta P) psi = cos(theta) psi + i sin(theta) P psi.
void apply_pauli_rotation(Statevector& state, const ops::PauliString& p, double theta);

/// <psi|P|psi>, real for Pauli strings.
double pauli_expectation(const Statevector& state, const ops::PauliString& p);

/// sum_i h_i <P_i>. Throws std::invalid_argument for non-Hermitian input.
double expectation(const Statevector& state, const ops::QubitOperator& op);

std::complex<double> inner(const Statevector& a, const Statevector& b);

/// 1 - |<a|b>|^2 clipped to [0, 1].
double infidelity(const Statevector& a, const Statevector& b);
/// |<a|b>|.
double overlap(const Statevector& a, const Statevector& b);

/// Sparse 2^n x 2^n matrix of the operator.
Eigen::SparseMatrix<Complex> to_sparse(const ops::QubitOperator& op, int n_qubits);

/// Occupation-number operator sum_p n_p.
double particle_number(const Statevector& state);

}  // namespace uccvqe::sim
