#include "uccvqe/ansatz/excitation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace uccvqe::ansatz {

void Excitation::validate(const ops::SystemInfo& system) const {
  if (occupied.size() != virtuals.size() || occupied.empty() || occupied.size() > 2)
    throw std::invalid_argument("excitation rank must be 1 or 2");
  auto strictly_ascending = [](const std::vector<int>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!strictly_ascending(occupied) || !strictly_ascending(virtuals))
    throw std::invalid_argument("excitation indices must be strictly ascending");
  for (int i : occupied)
    if (i < 0 || i >= system.n_electrons)
      throw std::invalid_argument("excitation source is not an occupied orbital");
  for (int a : virtuals)
    if (a < system.n_electrons || a >= system.n_spin_orbitals)
      throw std::invalid_argument("excitation target is not a virtual orbital");
}

std::string Excitation::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < occupied.size(); ++k) s += (k ? "," : "") + std::to_string(occupied[k]);
  s += "->";
  for (std::size_t k = 0; k < virtuals.size(); ++k) s += (k ? "," : "") + std::to_string(virtuals[k]);
  return s;
}

Excitation parse_excitation(const std::string& text) {
  const auto arrow = text.find("->");
  if (arrow == std::string::npos) throw std::invalid_argument("excitation needs '->'");
  auto parse_list = [&](const std::string& part) {
    std::vector<int> v;
    std::istringstream in(part);
    for (std::string tok; std::getline(in, tok, ',');) {
      std::size_t used = 0;
      int x = 0;
      try {
        x = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad excitation index '" + tok + "'");
      }
      if (used != tok.size()) throw std::invalid_argument("bad excitation index '" + tok + "'");
      v.push_back(x);
    }
    return v;
  };
  return {parse_list(text.substr(0, arrow)), parse_list(text.substr(arrow + 2))};
}

std::vector<Excitation> generate_uccsd(const ops::SystemInfo& system) {
  system.validate();
  const int n = system.n_spin_orbitals, eta = system.n_electrons;
  std::vector<Excitation> out;
  for (int i = 0; i < eta; ++i)
    for (int a = eta; a < n; ++a) out.push_back({{i}, {a}});
  for (int i = 0; i < eta; ++i)
    for (int j = i + 1; j < eta; ++j)
      for (int a = eta; a < n; ++a)
        for (int b = a + 1; b < n; ++b) out.push_back({{i, j}, {a, b}});
  return out;
}

ops::FermionOperator cluster_operator(const Excitation& e) {
  using ops::an;
  using ops::cr;
  if (e.rank() == 1) return ops::FermionOperator({cr(e.virtuals[0]), an(e.occupied[0])});
  return ops::FermionOperator(
      {cr(e.virtuals[1]), cr(e.virtuals[0]), an(e.occupied[1]), an(e.occupied[0])});
}

std::optional<std::pair<int, std::uint64_t>> apply_cluster_operator(const Excitation& e,
                                                                    std::uint64_t x) {
  int sign = 1;
  auto ladder = [&](int p, bool creation) {
    const std::uint64_t bit = std::uint64_t{1} << p;
    if (((x & bit) != 0) == creation) return false;
    if (std::popcount(x & (bit - 1)) & 1) sign = -sign;
    x ^= bit;
    return true;
  };
  // Rightmost factor acts first.
  for (int i : e.occupied)
    if (!ladder(i, false)) return std::nullopt;
  for (int a : e.virtuals)
    if (!ladder(a, true)) return std::nullopt;
  return std::make_pair(sign, x);
}

GeneratorExpansion expand_generator(const Excitation& e, const ops::SystemInfo& system) {
  e.validate(system);
  const auto tau = cluster_operator(e);
  const auto image = ops::jordan_wigner(tau - tau.adjoint());
  GeneratorExpansion g{e, {}};
  for (const auto& [p, c] : image.terms()) {
    // image = i * sum_k c_k P_k, so c_k = image coefficient / i.
    if (std::abs(c.real()) > 1e-12) throw std::logic_error("generator image is not anti-Hermitian");
    g.subterms.push_back({p, c.imag()});
  }
  return g;
}

bool verify_subterm_commutativity(const std::vector<Subterm>& subterms) {
  for (std::size_t a = 0; a < subterms.size(); ++a)
    for (std::size_t b = a + 1; b < subterms.size(); ++b) {
      const auto ab = ops::pauli_product(subterms[a].string, subterms[b].string);
      const auto ba = ops::pauli_product(subterms[b].string, subterms[a].string);
      if (std::abs(ab.first - ba.first) > 1e-12) return false;
    }
  return true;
}

}  // namespace uccvqe::ansatz
