#include "uccvqe/chem/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>
#include <vector>

#include "uccvqe/errors.hpp"

namespace uccvqe::chem {
namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::toupper(ch); });
  return s;
}

int header_int(const std::string& header, const std::string& key, std::size_t line, bool required,
               int fallback = 0) {
  const std::regex re("(^|[\\s,&])" + key + "\\s*=\\s*(-?[0-9]+)");
  std::smatch m;
  if (std::regex_search(header, m, re)) return std::stoi(m[2].str());
  if (required) throw ParseError("header is missing " + key, line);
  return fallback;
}

double parse_value(std::string token, std::size_t line) {
  // Fortran writers may emit D exponents.
  std::replace(token.begin(), token.end(), 'D', 'E');
  std::replace(token.begin(), token.end(), 'd', 'e');
  try {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad numeric value '" + token + "'", line);
  }
}

}  // namespace

MoIntegrals parse_fcidump(std::istream& in) {
  std::string line, header;
  std::size_t lineno = 0;
  bool in_header = false, header_done = false;
  std::size_t header_line = 0;
  while (!header_done && std::getline(in, line)) {
    ++lineno;
    const std::string u = upper(line);
    if (!in_header) {
      if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (u.find("&FCI") == std::string::npos)
        throw ParseError("expected '&FCI' namelist header", lineno);
      in_header = true;
      header_line = lineno;
    }
    header += " " + u;
    const auto trimmed = u.substr(0, u.find_last_not_of(" \t\r") + 1);
    if (u.find("&END") != std::string::npos || u.find("/END") != std::string::npos ||
        (!trimmed.empty() && trimmed.back() == '/'))
      header_done = true;
  }
  if (!header_done) throw ParseError("unterminated &FCI header", lineno);

  MoIntegrals mo;
  mo.n_orbitals = header_int(header, "NORB", header_line, true);
  mo.n_electrons = header_int(header, "NELEC", header_line, true);
  if (mo.n_orbitals <= 0) throw ParseError("NORB must be positive", header_line);
  if (mo.n_electrons < 0) throw ParseError("NELEC must be non-negative", header_line);
  const int n = mo.n_orbitals;
  mo.h = Eigen::MatrixXd::Zero(n, n);
  mo.eri = Eri(static_cast<std::size_t>(n));
  Eigen::VectorXd eps = Eigen::VectorXd::Zero(n);
  bool have_eps = false;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 5) throw ParseError("expected 'value i j k l'", lineno);
    const double v = parse_value(tok[0], lineno);
    int idx[4];
    for (int k = 0; k < 4; ++k) {
      try {
        std::size_t used = 0;
        idx[k] = std::stoi(tok[k + 1], &used);
        if (used != tok[k + 1].size()) throw std::invalid_argument(tok[k + 1]);
      } catch (const std::exception&) {
        throw ParseError("bad orbital index '" + tok[k + 1] + "'", lineno);
      }
      if (idx[k] < 0 || idx[k] > n) throw ParseError("orbital index out of range", lineno);
    }
    const auto [i, j, k, l] = idx;
    if (i > 0 && j > 0 && k > 0 && l > 0) {
      mo.eri.set_chemist_symmetric(i - 1, j - 1, k - 1, l - 1, v);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      mo.h(i - 1, j - 1) = v;
      mo.h(j - 1, i - 1) = v;
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      eps(i - 1) = v;
      have_eps = true;
    } else if (i == 0 && j == 0 && k == 0 && l == 0) {
      mo.nuclear_repulsion = v;
    } else {
      throw ParseError("unrecognized index pattern", lineno);
    }
  }
  if (have_eps) mo.orbital_energies = eps;
  return mo;
}

MoIntegrals parse_fcidump(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_fcidump(in);
}

MoIntegrals read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open FCIDUMP file " + path.string());
  return parse_fcidump(in);
}

void write_fcidump(const MoIntegrals& mo, std::ostream& out, double threshold) {
  const int n = mo.n_orbitals;
  out << " &FCI NORB=" << n << ",NELEC=" << mo.n_electrons << ",MS2=0,\n  ORBSYM=";
  for (int p = 0; p < n; ++p) out << "1,";
  out << "\n  ISYM=1,\n &END\n";
  out << std::scientific << std::setprecision(17);
  auto rec = [&](double v, int i, int j, int k, int l) {
    out << std::setw(25) << v << ' ' << std::setw(3) << i << ' ' << std::setw(3) << j << ' '
        << std::setw(3) << k << ' ' << std::setw(3) << l << '\n';
  };
  // Unique (ij|kl) with i >= j, k >= l, ij >= kl.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k <= i; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
          const double v = mo.eri(i, j, k, l);
          if (v != 0.0 && std::abs(v) >= threshold) rec(v, i + 1, j + 1, k + 1, l + 1);
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = mo.h(i, j);
      if (v != 0.0 && std::abs(v) >= threshold) rec(v, i + 1, j + 1, 0, 0);
    }
  if (mo.orbital_energies)
    for (int i = 0; i < n; ++i) rec((*mo.orbital_energies)(i), i + 1, 0, 0, 0);
  rec(mo.nuclear_repulsion, 0, 0, 0, 0);
}

void write_fcidump(const MoIntegrals& mo, const std::filesystem::path& path, double threshold) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write FCIDUMP file " + path.string());
  write_fcidump(mo, out, threshold);
}

}  // namespace uccvqe::chem
