#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "uccvqe/ansatz/excitation.hpp"

namespace uccvqe::ansatz {

enum class UccMode { trotterized, exact };

/// Ordered excitation list with amplitudes. In trotterized mode the state is
///   U(t) = [ prod_j exp(t_j (tau_j - tau_j+) / rho) ]^rho |ref>
/// with excitation 0 applied first; exact mode exponentiates the sum.
struct UccAnsatz {
  ops::SystemInfo system;
  std::vector<Excitation> excitations;
  Eigen::VectorXd amplitudes;
  int trotter_number = 1;
  UccMode mode = UccMode::trotterized;

  Eigen::Index n_parameters() const { return static_cast<Eigen::Index>(excitations.size()); }
  /// Throws std::invalid_argument on any broken invariant.
  void validate() const;
};

UccAnsatz make_uccsd(const ops::SystemInfo& system, int trotter_number = 1,
                     UccMode mode = UccMode::trotterized);

/// Text manifest:
///   n_spin_orbitals N
///   n_electrons eta
///   trotter rho | exact
///   excitation <i[,j]->a[,b]> <amplitude>   (one per line, in order)
void write_ansatz(const UccAnsatz& a, std::ostream& out);
UccAnsatz parse_ansatz(std::string_view text);

}  // namespace uccvqe::ansatz
