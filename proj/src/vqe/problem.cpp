#include "uccvqe/vqe/problem.hpp"

#include <stdexcept>

#include "uccvqe/ansatz/amplitudes.hpp"
#include "uccvqe/chem/integrals.hpp"
#include "uccvqe/chem/scf.hpp"
#include "uccvqe/errors.hpp"

namespace uccvqe::vqe {

ProblemBundle build_problem(const chem::Geometry& geometry, const ProblemOptions& options) {
  geometry.validate();
  const auto basis = chem::make_basis(geometry, options.basis);
  const auto tables = chem::build_integrals(geometry, basis);
  int n_electrons = 0;
  for (const auto& a : geometry.atoms) n_electrons += a.charge;
  const auto scf = chem::run_rhf(tables, n_electrons);
  if (!scf.converged) throw std::runtime_error("SCF did not converge for " + geometry.label);
  return build_problem(chem::transform_to_mo(tables, scf), options, geometry.label);
}

ProblemBundle build_problem(const chem::MoIntegrals& mo, const ProblemOptions& options,
                            std::string label) {
  ProblemBundle b;
  b.label = std::move(label);
  auto full = ops::spatial_to_spin_orbital(mo);
  Eigen::VectorXd eps = ops::spin_orbital_energies(mo.energies());
  b.hf_energy = mo.reference_energy();
  if (options.active_space) {
    auto cas = ansatz::cas_reduce(full, *options.active_space);
    Eigen::VectorXd active_eps(cas.hamiltonian.system.n_spin_orbitals);
    for (std::size_t k = 0; k < cas.active_orbitals.size(); ++k) {
      const auto e = mo.energies()(cas.active_orbitals[k]);
      active_eps(static_cast<Eigen::Index>(2 * k)) = e;
      active_eps(static_cast<Eigen::Index>(2 * k + 1)) = e;
    }
    b.hamiltonian = std::move(cas.hamiltonian);
    eps = active_eps;
  } else {
    b.hamiltonian = std::move(full);
  }
  b.hamiltonian.validate();
  b.orbital_energies = eps;
  b.qubit_hamiltonian = ops::qubit_hamiltonian(b.hamiltonian);

  auto pool = ansatz::generate_uccsd(b.hamiltonian.system);
  b.full_pool_size = pool.size();
  try {
    b.mp2 = ansatz::mp2_amplitudes(b.hamiltonian, eps, pool);
  } catch (const DegenerateOrbitalError&) {
    if (options.screen_threshold >= 0) throw;
  }
  if (options.screen_threshold >= 0) {
    auto s = ansatz::screen(*b.mp2, pool, options.screen_threshold);
    b.excitations = std::move(s.excitations);
    b.mp2 = std::move(s.amplitudes);
  } else {
    b.excitations = std::move(pool);
  }
  if (options.solve_fci) b.fci = sim::fci_solve(b.qubit_hamiltonian, b.hamiltonian.system);
  return b;
}

}  // namespace uccvqe::vqe
