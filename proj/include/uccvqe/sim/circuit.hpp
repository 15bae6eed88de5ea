#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "uccvqe/ansatz/excitation.hpp"
#include "uccvqe/ansatz/ucc.hpp"
#include "uccvqe/sim/statevector.hpp"

namespace uccvqe::sim {

/// tau - tau+ for one excitation as a real 2x2 rotation generator on pairs
/// of basis states: G|x> = s|y>, G|y> = -s|x>, zero elsewhere. x has the
/// excitation's occupied orbitals filled and its virtuals empty.
struct FusedGenerator {
  std::vector<std::uint32_t> source;
  std::vector<std::uint32_t> target;
  std::vector<double> sign;
};

FusedGenerator fuse_generator(const ansatz::Excitation& e, int n_qubits);

/// psi <- exp(theta G) psi.
template <typename Derived>
void apply_rotation(const FusedGenerator& g, Eigen::MatrixBase<Derived>& psi, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  for (std::size_t k = 0; k < g.source.size(); ++k) {
    const auto x = g.source[k], y = g.target[k];
    const double ss = g.sign[k] * s;
    const auto px = psi(x), py = psi(y);
    psi(x) = c * px - ss * py;
    psi(y) = ss * px + c * py;
  }
}

/// out <- G in.
template <typename In, typename Out>
void apply_generator(const FusedGenerator& g, const Eigen::MatrixBase<In>& in,
                     Eigen::MatrixBase<Out>& out) {
  out.setZero();
  for (std::size_t k = 0; k < g.source.size(); ++k) {
    const auto x = g.source[k], y = g.target[k];
    out(y) += g.sign[k] * in(x);
    out(x) -= g.sign[k] * in(y);
  }
}

enum class UccKernel {
  fused,     // one Givens rotation per generator
  subterms,  // one Pauli rotation per subterm, as written in the circuit
};

/// Compiled UCC state preparation for a fixed excitation list.
///
/// Trotterized mode runs gates g = 0 .. rho*N_P - 1, gate g acting with
/// generator g % N_P and angle t_j / rho. Exact mode exponentiates
/// sum_j t_j G_j within each particle-number sector.
class UccCircuit {
 public:
  explicit UccCircuit(ansatz::UccAnsatz ansatz);

  const ansatz::UccAnsatz& ansatz() const noexcept { return ansatz_; }
  int n_qubits() const noexcept { return ansatz_.system.n_spin_orbitals; }
  Eigen::Index n_parameters() const noexcept { return ansatz_.n_parameters(); }
  int trotter_number() const noexcept { return ansatz_.trotter_number; }
  bool exact() const noexcept { return ansatz_.mode == ansatz::UccMode::exact; }

  const std::vector<ansatz::GeneratorExpansion>& expansions() const noexcept { return expansions_; }
  const std::vector<FusedGenerator>& generators() const noexcept { return fused_; }

  int n_gates() const noexcept {
    return exact() ? 0 : trotter_number() * static_cast<int>(n_parameters());
  }
  int gate_parameter(int gate) const noexcept { return gate % static_cast<int>(n_parameters()); }

  /// state <- U(t) state.
  void apply(Statevector& state, const Eigen::VectorXd& t,
             UccKernel kernel = UccKernel::fused) const;

  /// U(t) applied to a copy of `reference`.
  Statevector prepare(const Statevector& reference, const Eigen::VectorXd& t,
                      UccKernel kernel = UccKernel::fused) const;

 private:
  void check(const Statevector& state, const Eigen::VectorXd& t) const;
  void apply_exact(Statevector& state, const Eigen::VectorXd& t) const;

  ansatz::UccAnsatz ansatz_;
  std::vector<ansatz::GeneratorExpansion> expansions_;
  std::vector<FusedGenerator> fused_;
};

/// One-shot convenience wrapper: compiles and applies.
void apply_ucc(Statevector& state, const ansatz::UccAnsatz& ansatz, const Eigen::VectorXd& t,
               UccKernel kernel = UccKernel::fused);

}  // namespace uccvqe::sim
