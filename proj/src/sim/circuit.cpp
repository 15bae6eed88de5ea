#include "uccvqe/sim/circuit.hpp"

#include <bit>
#include <map>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "uccvqe/errors.hpp"

namespace uccvqe::sim {

FusedGenerator fuse_generator(const ansatz::Excitation& e, int n_qubits) {
  FusedGenerator g;
  std::uint64_t occ = 0, vir = 0;
  for (int i : e.occupied) occ |= std::uint64_t{1} << i;
  for (int a : e.virtuals) vir |= std::uint64_t{1} << a;
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  for (std::uint64_t x = 0; x < dim; ++x) {
    if ((x & occ) != occ || (x & vir) != 0) continue;
    const auto r = ansatz::apply_cluster_operator(e, x);
    if (!r) throw std::logic_error("cluster operator annihilated an admissible state");
    g.source.push_back(static_cast<std::uint32_t>(x));
    g.target.push_back(static_cast<std::uint32_t>(r->second));
    g.sign.push_back(r->first);
  }
  return g;
}

UccCircuit::UccCircuit(ansatz::UccAnsatz ansatz) : ansatz_(std::move(ansatz)) {
  ansatz_.validate();
  if (n_qubits() > Statevector::kMaxQubits)
    throw CapacityError("ansatz exceeds the statevector qubit limit");
  expansions_.reserve(ansatz_.excitations.size());
  fused_.reserve(ansatz_.excitations.size());
  for (const auto& e : ansatz_.excitations) {
    expansions_.push_back(ansatz::expand_generator(e, ansatz_.system));
    fused_.push_back(fuse_generator(e, n_qubits()));
  }
}

void UccCircuit::check(const Statevector& state, const Eigen::VectorXd& t) const {
  if (state.n_qubits() != n_qubits()) throw std::invalid_argument("register size differs from ansatz");
  if (t.size() != n_parameters()) throw std::invalid_argument("amplitude count differs from ansatz");
}

void UccCircuit::apply(Statevector& state, const Eigen::VectorXd& t, UccKernel kernel) const {
  check(state, t);
  if (exact()) {
    apply_exact(state, t);
    return;
  }
  const double rho = trotter_number();
  auto& psi = state.data();
  for (int g = 0; g < n_gates(); ++g) {
    const int j = gate_parameter(g);
    const double theta = t(j) / rho;
    if (kernel == UccKernel::fused) {
      apply_rotation(fused_[static_cast<std::size_t>(j)], psi, theta);
    } else {
      for (const auto& st : expansions_[static_cast<std::size_t>(j)].subterms)
        apply_pauli_rotation(state, st.string, theta * st.coefficient);
    }
  }
}

void UccCircuit::apply_exact(Statevector& state, const Eigen::VectorXd& t) const {
  // The generators conserve particle number, so the exponential is block
  // diagonal over sectors.
  auto& psi = state.data();
  const int n = n_qubits();
  std::vector<std::vector<std::uint32_t>> sectors(static_cast<std::size_t>(n + 1));
  for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(psi.size()); ++b)
    sectors[static_cast<std::size_t>(std::popcount(b))].push_back(b);
  std::vector<int> position(static_cast<std::size_t>(psi.size()));
  for (const auto& sec : sectors)
    for (std::size_t k = 0; k < sec.size(); ++k) position[sec[k]] = static_cast<int>(k);

  for (const auto& sec : sectors) {
    double weight = 0;
    for (auto b : sec) weight += std::norm(psi(b));
    if (weight == 0.0) continue;
    const auto m = static_cast<Eigen::Index>(sec.size());
    const int pop = std::popcount(sec.front());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index j = 0; j < n_parameters(); ++j) {
      const auto& g = fused_[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < g.source.size(); ++k) {
        if (std::popcount(g.source[k]) != pop) continue;
        const int x = position[g.source[k]], y = position[g.target[k]];
        a(y, x) += t(j) * g.sign[k];
        a(x, y) -= t(j) * g.sign[k];
      }
    }
    const Eigen::MatrixXd u = a.exp();
    Eigen::VectorXcd v(m);
    for (Eigen::Index k = 0; k < m; ++k) v(k) = psi(sec[static_cast<std::size_t>(k)]);
    v = u * v;
    for (Eigen::Index k = 0; k < m; ++k) psi(sec[static_cast<std::size_t>(k)]) = v(k);
  }
}

Statevector UccCircuit::prepare(const Statevector& reference, const Eigen::VectorXd& t,
                                UccKernel kernel) const {
  Statevector s = reference;
  apply(s, t, kernel);
  return s;
}

void apply_ucc(Statevector& state, const ansatz::UccAnsatz& ansatz, const Eigen::VectorXd& t,
               UccKernel kernel) {
  UccCircuit(ansatz).apply(state, t, kernel);
}

}  // namespace uccvqe::sim
