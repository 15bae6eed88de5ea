#include "uccvqe/ops/fermion.hpp"

#include <cmath>
#include <stdexcept>

namespace uccvqe::ops {

void FermionOperator::add_term(FermionTerm term, double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("non-finite fermion coefficient");
  for (const auto& op : term)
    if (op.mode < 0 || op.mode >= PauliString::kMaxQubits)
      throw std::invalid_argument("fermion mode out of range");
  terms_[std::move(term)] += c;
}

double FermionOperator::scalar() const {
  auto it = terms_.find({});
  return it == terms_.end() ? 0.0 : it->second;
}

int FermionOperator::n_modes() const {
  int m = -1;
  for (const auto& [t, c] : terms_)
    for (const auto& op : t) m = std::max(m, op.mode);
  return m + 1;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  for (const auto& [t, c] : terms_) {
    FermionTerm r(t.rbegin(), t.rend());
    for (auto& op : r) op.creation = !op.creation;
    out.add_term(std::move(r), c);
  }
  return out;
}

FermionOperator& FermionOperator::simplify(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
  return *this;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& o) {
  for (const auto& [t, c] : o.terms_) terms_[t] += c;
  return *this;
}

FermionOperator& FermionOperator::operator-=(const FermionOperator& o) {
  for (const auto& [t, c] : o.terms_) terms_[t] -= c;
  return *this;
}

FermionOperator& FermionOperator::operator*=(double s) {
  for (auto& [t, c] : terms_) c *= s;
  return *this;
}

std::string to_string(const FermionTerm& term) {
  std::string s;
  for (const auto& op : term) {
    if (!s.empty()) s += ' ';
    s += std::to_string(op.mode);
    if (op.creation) s += '^';
  }
  return s;
}

QubitOperator jordan_wigner(const LadderOp& op) {
  const std::uint64_t bit = std::uint64_t{1} << op.mode;
  const std::uint64_t zstring = bit - 1;
  const PauliString x(bit, zstring), y(bit, zstring | bit);
  QubitOperator q(x, 0.5);
  q.add_term(y, op.creation ? std::complex<double>(0, -0.5) : std::complex<double>(0, 0.5));
  return q;
}

QubitOperator jordan_wigner(const FermionOperator& f) {
  QubitOperator out;
  for (const auto& [term, c] : f.terms()) {
    QubitOperator prod = QubitOperator::identity(c);
    for (const auto& op : term) prod = prod * jordan_wigner(op);
    out += prod;
  }
  return out.simplify();
}

}  // namespace uccvqe::ops
