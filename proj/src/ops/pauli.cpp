#include "uccvqe/ops/pauli.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "uccvqe/errors.hpp"

namespace uccvqe::ops {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    default: return 'Z';
  }
}

PauliString PauliString::from_terms(const std::vector<std::pair<int, Pauli>>& terms) {
  std::uint64_t x = 0, z = 0;
  for (auto [q, p] : terms) {
    if (q < 0 || q >= kMaxQubits) throw std::invalid_argument("qubit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if ((x | z) & bit) throw std::invalid_argument("repeated qubit in Pauli string");
    if (p != Pauli::Z) x |= bit;
    if (p != Pauli::X) z |= bit;
  }
  return {x, z};
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }
int PauliString::n_y() const noexcept { return std::popcount(x_ & z_); }

int PauliString::max_qubit() const noexcept {
  const auto s = x_ | z_;
  return s == 0 ? -1 : 63 - std::countl_zero(s);
}

std::optional<Pauli> PauliString::at(int qubit) const {
  if (qubit < 0 || qubit >= kMaxQubits) return std::nullopt;
  const bool xb = (x_ >> qubit) & 1, zb = (z_ >> qubit) & 1;
  if (xb && zb) return Pauli::Y;
  if (xb) return Pauli::X;
  if (zb) return Pauli::Z;
  return std::nullopt;
}

std::vector<std::pair<int, Pauli>> PauliString::terms() const {
  std::vector<std::pair<int, Pauli>> out;
  for (auto s = x_ | z_; s; s &= s - 1) {
    const int q = std::countr_zero(s);
    out.emplace_back(q, *at(q));
  }
  return out;
}

bool PauliString::commutes_with(const PauliString& o) const noexcept {
  return ((std::popcount(x_ & o.z_) + std::popcount(z_ & o.x_)) & 1) == 0;
}

std::string PauliString::to_string() const {
  if (is_identity()) return "I";
  std::string s;
  for (auto [q, p] : terms()) {
    if (!s.empty()) s += ' ';
    s += to_char(p);
    s += std::to_string(q);
  }
  return s;
}

PauliString parse_pauli_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::pair<int, Pauli>> terms;
  bool saw_identity = false;
  for (std::string tok; in >> tok;) {
    if (tok == "I") {
      saw_identity = true;
      continue;
    }
    Pauli p;
    switch (tok[0]) {
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default: throw std::invalid_argument("bad Pauli token '" + tok + "'");
    }
    std::size_t used = 0;
    int q = -1;
    try {
      q = std::stoi(tok.substr(1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad Pauli token '" + tok + "'");
    }
    if (used + 1 != tok.size()) throw std::invalid_argument("bad Pauli token '" + tok + "'");
    terms.emplace_back(q, p);
  }
  if (saw_identity && !terms.empty())
    throw std::invalid_argument("identity mixed with Pauli factors");
  return PauliString::from_terms(terms);
}

std::pair<std::complex<double>, PauliString> pauli_product(const PauliString& a,
                                                           const PauliString& b) {
  // With P = i^{|x&z|} X^x Z^z, moving Z^z1 past X^x2 gives (-1)^{|z1&x2|}.
  const std::uint64_t x = a.x_mask() ^ b.x_mask(), z = a.z_mask() ^ b.z_mask();
  int k = std::popcount(a.x_mask() & a.z_mask()) + std::popcount(b.x_mask() & b.z_mask()) +
          2 * std::popcount(a.z_mask() & b.x_mask()) - std::popcount(x & z);
  static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {ipow[((k % 4) + 4) % 4], PauliString(x, z)};
}

void QubitOperator::add_term(const PauliString& p, Coefficient c) {
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) it->second += c;
}

QubitOperator::Coefficient QubitOperator::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Coefficient{} : it->second;
}

QubitOperator& QubitOperator::simplify(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
  return *this;
}

bool QubitOperator::is_hermitian(double tol) const {
  for (const auto& [p, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

int QubitOperator::n_qubits() const {
  int m = -1;
  for (const auto& [p, c] : terms_) m = std::max(m, p.max_qubit());
  return m + 1;
}

QubitOperator QubitOperator::adjoint() const {
  QubitOperator out = *this;
  for (auto& [p, c] : out.terms_) c = std::conj(c);
  return out;
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

QubitOperator& QubitOperator::operator-=(const QubitOperator& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

QubitOperator& QubitOperator::operator*=(Coefficient s) {
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

QubitOperator& QubitOperator::operator*=(const QubitOperator& o) { return *this = *this * o; }

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
  QubitOperator out;
  for (const auto& [pa, ca] : a.terms())
    for (const auto& [pb, cb] : b.terms()) {
      auto [phase, p] = pauli_product(pa, pb);
      out.add_term(p, phase * ca * cb);
    }
  return out;
}

double one_norm(const QubitOperator& op) {
  double s = 0;
  for (const auto& [p, c] : op.terms())
    if (!p.is_identity()) s += std::abs(c);
  return s;
}

bool commutes(const QubitOperator& a, const QubitOperator& b, double tol) {
  auto c = a * b - b * a;
  return c.simplify(tol).empty();
}

namespace {

std::string format_real(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

void write_qubit_operator(const QubitOperator& op, std::ostream& out) {
  for (const auto& [p, c] : op.terms()) {
    if (c.imag() == 0.0)
      out << format_real(c.real());
    else
      out << '(' << format_real(c.real()) << ',' << format_real(c.imag()) << ')';
    out << "  " << p.to_string() << '\n';
  }
}

std::string to_string(const QubitOperator& op) {
  std::ostringstream s;
  write_qubit_operator(op, s);
  return s.str();
}

QubitOperator parse_qubit_operator(std::string_view text) {
  std::istringstream in{std::string(text)};
  QubitOperator op;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line.substr(first));
    std::string coeff_tok;
    ls >> coeff_tok;
    std::complex<double> c;
    std::istringstream cs(coeff_tok);
    if (coeff_tok.front() == '(') {
      cs >> c;
    } else {
      double re;
      cs >> re;
      c = re;
    }
    if (cs.fail() || cs.peek() != std::char_traits<char>::eof())
      throw ParseError("bad coefficient '" + coeff_tok + "'", lineno);
    std::string rest;
    std::getline(ls, rest);
    if (rest.find_first_not_of(" \t\r") == std::string::npos)
      throw ParseError("missing Pauli string", lineno);
    try {
      op.add_term(parse_pauli_string(rest), c);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return op;
}

Eigen::MatrixXcd to_dense(const PauliString& p, int n_qubits) {
  if (n_qubits < p.max_qubit() + 1 || n_qubits > 14)
    throw std::invalid_argument("qubit count out of range for a dense matrix");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    m(static_cast<Eigen::Index>(ub ^ p.x_mask()), b) = pauli_phase(p, ub);
  }
  return m;
}

Eigen::MatrixXcd to_dense(const QubitOperator& op, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : op.terms()) m += c * to_dense(p, n_qubits);
  return m;
}

}  // namespace uccvqe::ops
