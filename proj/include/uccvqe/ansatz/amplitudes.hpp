#pragma once

#include <Eigen/Dense>
#include <vector>

#include "uccvqe/ansatz/excitation.hpp"
#include "uccvqe/ops/hamiltonian.hpp"

namespace uccvqe::ansatz {

/// First-order (MP2) amplitudes in the orientation of cluster_operator():
///   singles: 0
///   doubles: (h_ijab - h_ijba) / (e_i + e_j - e_a - e_b)
/// `orbital_energies` are per spin orbital. Throws DegenerateOrbitalError
/// when a denominator falls below 1e-8 in magnitude.
Eigen::VectorXd mp2_amplitudes(const ops::MolecularHamiltonian& mh,
                               const Eigen::VectorXd& orbital_energies,
                               const std::vector<Excitation>& excitations);

/// Same, over generate_uccsd(mh.system).
Eigen::VectorXd mp2_amplitudes(const ops::MolecularHamiltonian& mh,
                               const Eigen::VectorXd& orbital_energies);

/// Second-order energy correction implied by the amplitudes.
double mp2_energy(const ops::MolecularHamiltonian& mh, const Eigen::VectorXd& orbital_energies);

struct ScreenedPool {
  std::vector<Excitation> excitations;
  Eigen::VectorXd amplitudes;
  std::vector<int> kept;  // positions in the unscreened pool
};

/// Keeps all singles and the doubles with |t| >= threshold, order preserved.
ScreenedPool screen(const Eigen::VectorXd& amplitudes, const std::vector<Excitation>& excitations,
                    double threshold);

}  // namespace uccvqe::ansatz
