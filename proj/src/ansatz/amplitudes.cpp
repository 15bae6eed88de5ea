#include "uccvqe/ansatz/amplitudes.hpp"

#include <cmath>
#include <stdexcept>

#include "uccvqe/errors.hpp"

namespace uccvqe::ansatz {
namespace {

double double_amplitude(const ops::MolecularHamiltonian& mh, const Eigen::VectorXd& eps,
                        const Excitation& e) {
  const int i = e.occupied[0], j = e.occupied[1], a = e.virtuals[0], b = e.virtuals[1];
  const double denom = eps(i) + eps(j) - eps(a) - eps(b);
  if (std::abs(denom) < 1e-8)
    throw DegenerateOrbitalError("vanishing MP2 denominator for excitation " + e.to_string());
  return (mh.two_body(i, j, a, b) - mh.two_body(i, j, b, a)) / denom;
}

}  // namespace

Eigen::VectorXd mp2_amplitudes(const ops::MolecularHamiltonian& mh,
                               const Eigen::VectorXd& orbital_energies,
                               const std::vector<Excitation>& excitations) {
  if (orbital_energies.size() != mh.n_spin_orbitals())
    throw std::invalid_argument("one orbital energy per spin orbital required");
  Eigen::VectorXd t = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(excitations.size()));
  for (std::size_t k = 0; k < excitations.size(); ++k) {
    const auto& e = excitations[k];
    e.validate(mh.system);
    if (e.rank() == 2) t(static_cast<Eigen::Index>(k)) = double_amplitude(mh, orbital_energies, e);
  }
  return t;
}

Eigen::VectorXd mp2_amplitudes(const ops::MolecularHamiltonian& mh,
                               const Eigen::VectorXd& orbital_energies) {
  return mp2_amplitudes(mh, orbital_energies, generate_uccsd(mh.system));
}

double mp2_energy(const ops::MolecularHamiltonian& mh, const Eigen::VectorXd& orbital_energies) {
  const auto pool = generate_uccsd(mh.system);
  const auto t = mp2_amplitudes(mh, orbital_energies, pool);
  // E2 = sum_{i<j,a<b} |<ab||ij>|^2 / D; with t = -<ab||ij>/D that is
  // sum t^2 D.
  double e2 = 0;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const auto& e = pool[k];
    if (e.rank() != 2) continue;
    const double d = orbital_energies(e.occupied[0]) + orbital_energies(e.occupied[1]) -
                     orbital_energies(e.virtuals[0]) - orbital_energies(e.virtuals[1]);
    const double tk = t(static_cast<Eigen::Index>(k));
    e2 += tk * tk * d;
  }
  return e2;
}

ScreenedPool screen(const Eigen::VectorXd& amplitudes, const std::vector<Excitation>& excitations,
                    double threshold) {
  if (threshold < 0) throw std::invalid_argument("screening threshold must be non-negative");
  if (amplitudes.size() != static_cast<Eigen::Index>(excitations.size()))
    throw std::invalid_argument("amplitudes and excitations differ in length");
  ScreenedPool out;
  std::vector<double> kept_t;
  for (std::size_t k = 0; k < excitations.size(); ++k) {
    const double tk = amplitudes(static_cast<Eigen::Index>(k));
    if (excitations[k].rank() == 2 && std::abs(tk) < threshold) continue;
    out.excitations.push_back(excitations[k]);
    out.kept.push_back(static_cast<int>(k));
    kept_t.push_back(tk);
  }
  out.amplitudes = Eigen::Map<Eigen::VectorXd>(kept_t.data(), static_cast<Eigen::Index>(kept_t.size()));
  return out;
}

}  // namespace uccvqe::ansatz
