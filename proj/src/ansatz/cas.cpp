#include "uccvqe/ansatz/cas.hpp"

#include <algorithm>
#include <stdexcept>

#include "uccvqe/errors.hpp"

namespace uccvqe::ansatz {

ActiveSpaceSpec ActiveSpaceSpec::around_fermi_level(const ops::SystemInfo& system,
                                                    int n_electrons, int n_orbitals) {
  const int n_spatial = system.n_spin_orbitals / 2, n_occ = system.n_electrons / 2;
  const int n_frozen = n_occ - n_electrons / 2;
  if (n_electrons % 2 != 0 || n_frozen < 0 || n_frozen + n_orbitals > n_spatial ||
      n_electrons > 2 * n_orbitals)
    throw std::invalid_argument("active space does not fit the system");
  ActiveSpaceSpec s;
  s.n_active_electrons = n_electrons;
  s.n_active_orbitals = n_orbitals;
  for (int k = 0; k < n_frozen; ++k) s.frozen_occupied.push_back(k);
  for (int k = n_frozen + n_orbitals; k < n_spatial; ++k) s.discarded_virtual.push_back(k);
  return s;
}

std::vector<int> ActiveSpaceSpec::active_orbitals(const ops::SystemInfo& system) const {
  std::vector<int> out;
  for (int k = 0; k < system.n_spin_orbitals / 2; ++k)
    if (std::find(frozen_occupied.begin(), frozen_occupied.end(), k) == frozen_occupied.end() &&
        std::find(discarded_virtual.begin(), discarded_virtual.end(), k) == discarded_virtual.end())
      out.push_back(k);
  return out;
}

void ActiveSpaceSpec::validate(const ops::SystemInfo& system) const {
  const int n_spatial = system.n_spin_orbitals / 2;
  std::vector<int> all = frozen_occupied;
  all.insert(all.end(), discarded_virtual.begin(), discarded_virtual.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("orbital listed twice in the active-space split");
  for (int k : all)
    if (k < 0 || k >= n_spatial) throw std::invalid_argument("orbital index out of range");
  if (system.n_electrons % 2 != 0) throw UnsupportedError("open-shell reference");
  for (int k : frozen_occupied)
    if (k >= system.n_electrons / 2)
      throw UnsupportedError("frozen orbital " + std::to_string(k) + " is not doubly occupied");
  const int n_active = n_spatial - static_cast<int>(all.size());
  if (n_active != n_active_orbitals)
    throw std::invalid_argument("active orbital count does not match the split");
  if (n_active_electrons != system.n_electrons - 2 * static_cast<int>(frozen_occupied.size()))
    throw std::invalid_argument("active electron count does not match the frozen core");
  if (n_active_electrons < 0 || n_active_electrons > 2 * n_active_orbitals)
    throw std::invalid_argument("active electrons do not fit the active orbitals");
  // Discarded orbitals must be empty in the reference.
  for (int k : discarded_virtual)
    if (k < system.n_electrons / 2)
      throw UnsupportedError("discarded orbital " + std::to_string(k) + " is occupied");
}

CasProblem cas_reduce(const ops::MolecularHamiltonian& mh, const ActiveSpaceSpec& spec) {
  spec.validate(mh.system);
  const auto& h = mh.one_body;
  const auto& g = mh.two_body;

  std::vector<int> core;
  for (int k : spec.frozen_occupied) {
    core.push_back(2 * k);
    core.push_back(2 * k + 1);
  }
  double e_core = mh.nuclear_repulsion;
  for (int c : core) {
    e_core += h(c, c);
    for (int d : core) e_core += 0.5 * (g(c, d, d, c) - g(c, d, c, d));
  }

  CasProblem out;
  out.active_orbitals = spec.active_orbitals(mh.system);
  std::vector<int> act;
  for (int k : out.active_orbitals) {
    act.push_back(2 * k);
    act.push_back(2 * k + 1);
  }
  const int na = static_cast<int>(act.size());
  auto& r = out.hamiltonian;
  r.system = {na, spec.n_active_electrons};
  r.nuclear_repulsion = e_core;
  r.one_body = Eigen::MatrixXd::Zero(na, na);
  r.two_body = Tensor4<double>(static_cast<std::size_t>(na));
  for (int p = 0; p < na; ++p)
    for (int q = 0; q < na; ++q) {
      double v = h(act[p], act[q]);
      for (int c : core) v += g(act[p], c, c, act[q]) - g(act[p], c, act[q], c);
      r.one_body(p, q) = v;
    }
  for (int p = 0; p < na; ++p)
    for (int q = 0; q < na; ++q)
      for (int s = 0; s < na; ++s)
        for (int t = 0; t < na; ++t) r.two_body(p, q, s, t) = g(act[p], act[q], act[s], act[t]);
  out.core_energy = e_core;
  return out;
}

}  // namespace uccvqe::ansatz
