#include "uccvqe/ansatz/ucc.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "uccvqe/errors.hpp"

namespace uccvqe::ansatz {

void UccAnsatz::validate() const {
  system.validate();
  if (amplitudes.size() != n_parameters())
    throw std::invalid_argument("amplitude count differs from excitation count");
  if (trotter_number < 1) throw std::invalid_argument("trotter number must be at least 1");
  for (const auto& e : excitations) e.validate(system);
}

UccAnsatz make_uccsd(const ops::SystemInfo& system, int trotter_number, UccMode mode) {
  UccAnsatz a;
  a.system = system;
  a.excitations = generate_uccsd(system);
  a.amplitudes = Eigen::VectorXd::Zero(a.n_parameters());
  a.trotter_number = trotter_number;
  a.mode = mode;
  a.validate();
  return a;
}

void write_ansatz(const UccAnsatz& a, std::ostream& out) {
  out << "n_spin_orbitals " << a.system.n_spin_orbitals << '\n'
      << "n_electrons " << a.system.n_electrons << '\n';
  if (a.mode == UccMode::exact)
    out << "trotter exact\n";
  else
    out << "trotter " << a.trotter_number << '\n';
  out << std::setprecision(17);
  for (Eigen::Index k = 0; k < a.n_parameters(); ++k)
    out << "excitation " << a.excitations[static_cast<std::size_t>(k)].to_string() << ' '
        << a.amplitudes(k) << '\n';
}

UccAnsatz parse_ansatz(std::string_view text) {
  std::istringstream in{std::string(text)};
  UccAnsatz a;
  std::vector<double> t;
  bool have_n = false, have_eta = false;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "n_spin_orbitals") {
      have_n = static_cast<bool>(ls >> a.system.n_spin_orbitals);
    } else if (key == "n_electrons") {
      have_eta = static_cast<bool>(ls >> a.system.n_electrons);
    } else if (key == "trotter") {
      std::string v;
      ls >> v;
      if (v == "exact") {
        a.mode = UccMode::exact;
      } else {
        try {
          a.trotter_number = std::stoi(v);
        } catch (const std::exception&) {
          throw ParseError("bad trotter value '" + v + "'", lineno);
        }
        a.mode = UccMode::trotterized;
      }
    } else if (key == "excitation") {
      std::string ex;
      double v;
      if (!(ls >> ex >> v)) throw ParseError("expected 'excitation <spec> <amplitude>'", lineno);
      try {
        a.excitations.push_back(parse_excitation(ex));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lineno);
      }
      t.push_back(v);
    } else {
      throw ParseError("unknown key '" + key + "'", lineno);
    }
  }
  if (!have_n || !have_eta) throw ParseError("missing system size", lineno);
  a.amplitudes = Eigen::Map<Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size()));
  a.validate();
  return a;
}

}  // namespace uccvqe::ansatz
