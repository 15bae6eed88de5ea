#pragma once

#include <Eigen/Dense>
#include <complex>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uccvqe::ops {

enum class Pauli : std::uint8_t { X, Y, Z };

char to_char(Pauli p);

/// Tensor product of single-qubit Paulis on up to 64 qubits, stored as
/// symplectic bit masks. Qubit q sits at bit q. Y on a qubit sets both bits.
class PauliString {
 public:
  static constexpr int kMaxQubits = 64;

  PauliString() = default;
  PauliString(std::uint64_t x_mask, std::uint64_t z_mask) : x_(x_mask), z_(z_mask) {}

  /// Throws std::invalid_argument on repeated or out-of-range qubits.
  static PauliString from_terms(const std::vector<std::pair<int, Pauli>>& terms);
  static PauliString single(int qubit, Pauli p) { return from_terms({{qubit, p}}); }

  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  std::uint64_t support() const noexcept { return x_ | z_; }

  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  int weight() const noexcept;
  int n_y() const noexcept;
  /// Highest qubit acted on, -1 for the identity.
  int max_qubit() const noexcept;
  std::optional<Pauli> at(int qubit) const;

  /// (qubit, operator) pairs in ascending qubit order.
  std::vector<std::pair<int, Pauli>> terms() const;

  bool commutes_with(const PauliString& other) const noexcept;

  /// "X0 Z1 Y3", or "I" for the identity.
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
    if (auto c = a.z_ <=> b.z_; c != 0) return c;
    return a.x_ <=> b.x_;
  }

 private:
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Parses "X0 Z1 Y3" or "I". Throws std::invalid_argument.
PauliString parse_pauli_string(std::string_view text);

/// a * b = phase * result, phase in {1, i, -1, -i}.
std::pair<std::complex<double>, PauliString> pauli_product(const PauliString& a,
                                                           const PauliString& b);

/// Sum of Pauli strings with complex coefficients.
class QubitOperator {
 public:
  using Coefficient = std::complex<double>;
  using TermMap = std::map<PauliString, Coefficient>;

  QubitOperator() = default;
  QubitOperator(const PauliString& p, Coefficient c = 1.0) { add_term(p, c); }
  static QubitOperator identity(Coefficient c = 1.0) { return QubitOperator(PauliString{}, c); }

  void add_term(const PauliString& p, Coefficient c);
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  Coefficient coefficient(const PauliString& p) const;
  double identity_coefficient() const { return coefficient(PauliString{}).real(); }

  /// Drops terms with |c| <= tol.
  QubitOperator& simplify(double tol = 1e-12);
  bool is_hermitian(double tol = 1e-12) const;
  /// Number of qubits spanned, max_qubit() + 1 over all terms.
  int n_qubits() const;

  QubitOperator adjoint() const;

  QubitOperator& operator+=(const QubitOperator& o);
  QubitOperator& operator-=(const QubitOperator& o);
  QubitOperator& operator*=(Coefficient s);
  QubitOperator& operator*=(const QubitOperator& o);

  friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) { return a += b; }
  friend QubitOperator operator-(QubitOperator a, const QubitOperator& b) { return a -= b; }
  friend QubitOperator operator*(QubitOperator a, Coefficient s) { return a *= s; }
  friend QubitOperator operator*(Coefficient s, QubitOperator a) { return a *= s; }
  friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b);

 private:
  TermMap terms_;
};

/// Sum of |c| over non-identity terms.
double one_norm(const QubitOperator& op);

bool commutes(const QubitOperator& a, const QubitOperator& b, double tol = 1e-12);

/// One term per line: `coeff  X0 Z1 Y3`, identity as `coeff  I`. Real
/// coefficients are written bare, complex ones as `(re,im)`.
void write_qubit_operator(const QubitOperator& op, std::ostream& out);
std::string to_string(const QubitOperator& op);
/// Throws ParseError with the offending line.
QubitOperator parse_qubit_operator(std::string_view text);

/// P|basis> = phase |basis ^ x_mask>.
inline std::complex<double> pauli_phase(const PauliString& p, std::uint64_t basis) {
  static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  int k = p.n_y() + 2 * (__builtin_popcountll(basis & p.z_mask()) & 1);
  return ipow[k & 3];
}

/// Dense 2^n x 2^n matrix; intended for small n in checks.
Eigen::MatrixXcd to_dense(const PauliString& p, int n_qubits);
Eigen::MatrixXcd to_dense(const QubitOperator& op, int n_qubits);

}  // namespace uccvqe::ops
