#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "uccvqe/ops/pauli.hpp"

namespace uccvqe::ops {

struct LadderOp {
  int mode = 0;
  bool creation = false;
  friend auto operator<=>(const LadderOp&, const LadderOp&) = default;
};

inline LadderOp cr(int p) { return {p, true}; }
inline LadderOp an(int p) { return {p, false}; }

/// Product of ladder operators, applied right to left.
using FermionTerm = std::vector<LadderOp>;

/// Real linear combination of ladder-operator products. The empty term
/// carries the scalar part.
class FermionOperator {
 public:
  using TermMap = std::map<FermionTerm, double>;

  FermionOperator() = default;
  FermionOperator(FermionTerm term, double c = 1.0) { add_term(std::move(term), c); }

  /// Throws std::invalid_argument for a non-finite coefficient or a
  /// negative mode.
  void add_term(FermionTerm term, double c);
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  double scalar() const;
  int n_modes() const;

  /// Reversed order with creation and annihilation swapped.
  FermionOperator adjoint() const;
  FermionOperator& simplify(double tol = 1e-12);

  FermionOperator& operator+=(const FermionOperator& o);
  FermionOperator& operator-=(const FermionOperator& o);
  FermionOperator& operator*=(double s);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) { return a -= b; }
  friend FermionOperator operator*(FermionOperator a, double s) { return a *= s; }
  friend FermionOperator operator*(double s, FermionOperator a) { return a *= s; }

 private:
  TermMap terms_;
};

std::string to_string(const FermionTerm& term);

/// a+_p = (X_p - i Y_p)/2 Z_{p-1}...Z_0, a_p = (X_p + i Y_p)/2 Z_{p-1}...Z_0.
QubitOperator jordan_wigner(const LadderOp& op);

/// Simplified Jordan-Wigner image.
QubitOperator jordan_wigner(const FermionOperator& f);

}  // namespace uccvqe::ops
