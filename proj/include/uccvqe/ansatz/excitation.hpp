#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uccvqe/ops/fermion.hpp"
#include "uccvqe/ops/hamiltonian.hpp"
#include "uccvqe/ops/pauli.hpp"

namespace uccvqe::ansatz {

/// Excitation from occupied spin orbitals to virtual ones, both ascending.
/// The cluster operator is
///   rank 1: tau = a+_a a_i
///   rank 2: tau = a+_b a+_a a_j a_i   (i < j, a < b)
struct Excitation {
  std::vector<int> occupied;
  std::vector<int> virtuals;

  int rank() const { return static_cast<int>(occupied.size()); }
  /// Throws std::invalid_argument if ranks differ, indices are unsorted,
  /// overlap, or fall on the wrong side of the reference.
  void validate(const ops::SystemInfo& system) const;
  /// "0->4" or "0,1->4,5".
  std::string to_string() const;

  friend bool operator==(const Excitation&, const Excitation&) = default;
};

Excitation parse_excitation(const std::string& text);

/// All singles then all doubles from {0..eta-1} into {eta..N-1}, each block
/// in lexicographic order of (occupied, virtuals).
std::vector<Excitation> generate_uccsd(const ops::SystemInfo& system);

/// tau as a ladder-operator product.
ops::FermionOperator cluster_operator(const Excitation& e);

/// tau |x>, as (sign, y); nullopt when it annihilates x.
std::optional<std::pair<int, std::uint64_t>> apply_cluster_operator(const Excitation& e,
                                                                    std::uint64_t x);

struct Subterm {
  ops::PauliString string;
  double coefficient = 0.0;
};

/// Jordan-Wigner image of tau - tau+ written as i * sum_k c_k P_k.
struct GeneratorExpansion {
  Excitation excitation;
  std::vector<Subterm> subterms;
};

GeneratorExpansion expand_generator(const Excitation& e, const ops::SystemInfo& system);

/// True when every pair of subterms commutes.
bool verify_subterm_commutativity(const std::vector<Subterm>& subterms);
inline bool verify_subterm_commutativity(const GeneratorExpansion& g) {
  return verify_subterm_commutativity(g.subterms);
}

}  // namespace uccvqe::ansatz
