#include "uccvqe/chem/scf.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace uccvqe::chem {
namespace {

Eigen::MatrixXd two_electron_fock(const IntegralTables& t, const Eigen::MatrixXd& density) {
  const auto n = t.n_basis();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) {
      double acc = 0;
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index s = 0; s < n; ++s)
          acc += density(r, s) * (t.eri(p, q, r, s) - 0.5 * t.eri(p, s, r, q));
      g(p, q) = acc;
    }
  return g;
}

// First coefficient with magnitude above 1e-10 made positive, per column.
void fix_signs(Eigen::MatrixXd& c) {
  for (Eigen::Index j = 0; j < c.cols(); ++j)
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      if (std::abs(c(i, j)) > 1e-10) {
        if (c(i, j) < 0) c.col(j) *= -1.0;
        break;
      }
}

Eigen::MatrixXd diis_extrapolate(const std::deque<Eigen::MatrixXd>& focks,
                                 const std::deque<Eigen::MatrixXd>& errors) {
  const auto m = static_cast<Eigen::Index>(focks.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Constant(m + 1, m + 1, -1.0);
  b(m, m) = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      b(i, j) = errors[static_cast<std::size_t>(i)].cwiseProduct(errors[static_cast<std::size_t>(j)]).sum();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs(m) = -1.0;
  const Eigen::VectorXd w = b.completeOrthogonalDecomposition().solve(rhs);
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(focks.front().rows(), focks.front().cols());
  for (Eigen::Index i = 0; i < m; ++i) f += w(i) * focks[static_cast<std::size_t>(i)];
  return f;
}

// Lowest eigenpair of the real closed-shell orbital Hessian (A + B),
//   (A + B)_{ia,jb} = d_ij d_ab (e_a - e_i) + 4 (ia|jb) - (ib|ja) - (ij|ab),
// in MO indices. kappa receives the mode as an n x n antisymmetric matrix.
double lowest_rotation_mode(const IntegralTables& t, const Eigen::MatrixXd& c,
                            const Eigen::VectorXd& eps, int nocc, Eigen::MatrixXd& kappa) {
  const auto n = c.cols();
  const Eigen::Index nv = n - nocc;
  kappa = Eigen::MatrixXd::Zero(n, n);
  if (nv == 0) return 0.0;
  const auto nb = t.n_basis();
  // (pq|rs) over MOs by brute force; bases here are small.
  auto mo_eri = [&](Eigen::Index p, Eigen::Index q, Eigen::Index r, Eigen::Index s) {
    double acc = 0.0;
    for (Eigen::Index a = 0; a < nb; ++a)
      for (Eigen::Index b = 0; b < nb; ++b) {
        const double cab = c(a, p) * c(b, q);
        if (cab == 0.0) continue;
        for (Eigen::Index e = 0; e < nb; ++e)
          for (Eigen::Index f = 0; f < nb; ++f) acc += cab * c(e, r) * c(f, s) * t.eri(a, b, e, f);
      }
    return acc;
  };
  const Eigen::Index m = nocc * nv;
  Eigen::MatrixXd h(m, m);
  for (Eigen::Index i = 0; i < nocc; ++i)
    for (Eigen::Index a = 0; a < nv; ++a)
      for (Eigen::Index j = 0; j < nocc; ++j)
        for (Eigen::Index b = 0; b < nv; ++b) {
          const Eigen::Index A = nocc + a, B = nocc + b;
          double v = 4.0 * mo_eri(i, A, j, B) - mo_eri(i, B, j, A) - mo_eri(i, j, A, B);
          if (i == j && a == b) v += eps(A) - eps(i);
          h(i * nv + a, j * nv + b) = v;
        }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::VectorXd mode = eig.eigenvectors().col(0);
  for (Eigen::Index i = 0; i < nocc; ++i)
    for (Eigen::Index a = 0; a < nv; ++a) {
      kappa(nocc + a, i) = mode(i * nv + a);
      kappa(i, nocc + a) = -mode(i * nv + a);
    }
  return eig.eigenvalues()(0);
}

// exp(step * kappa) for antisymmetric kappa, through the eigenvalues of the
// symmetric kappa^2 = -V diag(w^2) V^T.
Eigen::MatrixXd rotation(const Eigen::MatrixXd& kappa, double step) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(-(kappa * kappa) * step * step);
  const auto& v = eig.eigenvectors();
  Eigen::VectorXd cosw(v.cols()), sinc(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const double w = std::sqrt(std::max(0.0, eig.eigenvalues()(k)));
    cosw(k) = std::cos(w);
    sinc(k) = w > 1e-12 ? std::sin(w) / w : 1.0;
  }
  return v * cosw.asDiagonal() * v.transpose() +
         (v * sinc.asDiagonal() * v.transpose()) * kappa * step;
}

}  // namespace

ScfResult run_rhf(const IntegralTables& t, int n_electrons, const ScfOptions& options) {
  const auto n = t.n_basis();
  if (n_electrons < 0 || n_electrons % 2 != 0)
    throw std::invalid_argument("restricted HF needs an even, non-negative electron count");
  if (n_electrons / 2 > n) throw std::invalid_argument("more occupied orbitals than basis functions");
  const int nocc = n_electrons / 2;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_eig(t.overlap);
  if (s_eig.eigenvalues().minCoeff() <= 0)
    throw std::invalid_argument("overlap matrix is not positive definite");
  const Eigen::MatrixXd x = s_eig.eigenvectors() *
                            s_eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                            s_eig.eigenvectors().transpose();
  const Eigen::MatrixXd hcore = t.core_hamiltonian();

  ScfResult result;
  result.n_electrons = n_electrons;

  auto diagonalize = [&](const Eigen::MatrixXd& fock) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x.transpose() * fock * x);
    Eigen::MatrixXd c = x * eig.eigenvectors();
    fix_signs(c);
    return std::pair{c, Eigen::VectorXd(eig.eigenvalues())};
  };
  auto density_of = [&](const Eigen::MatrixXd& c) -> Eigen::MatrixXd {
    const auto occ = c.leftCols(nocc);
    return 2.0 * occ * occ.transpose();
  };

  auto [c, eps] = diagonalize(hcore);

  if (nocc == 0) {
    result.mo_coefficients = c;
    result.orbital_energies = eps;
    result.hf_energy = t.nuclear_repulsion;
    result.converged = true;
    result.energy_history = {result.hf_energy};
    return result;
  }

  // Pulay extrapolation of the Fock matrix, error FPS - SPF; plain damping
  // when disabled. Returns the final density.
  auto iterate = [&](Eigen::MatrixXd density) {
    double energy = 0.0;
    bool converged = false;
    std::deque<Eigen::MatrixXd> fock_hist, err_hist;
    for (int it = 1; it <= options.max_iterations; ++it) {
      Eigen::MatrixXd fock = hcore + two_electron_fock(t, density);
      const double e_new = 0.5 * (density.cwiseProduct(hcore + fock)).sum() + t.nuclear_repulsion;
      if (options.diis_size > 0) {
        const Eigen::MatrixXd err = fock * density * t.overlap - t.overlap * density * fock;
        fock_hist.push_back(fock);
        err_hist.push_back(x.transpose() * err * x);
        if (static_cast<int>(fock_hist.size()) > options.diis_size) {
          fock_hist.pop_front();
          err_hist.pop_front();
        }
        if (fock_hist.size() >= 2) fock = diis_extrapolate(fock_hist, err_hist);
      }
      const Eigen::MatrixXd fresh = density_of(diagonalize(fock).first);
      const double d_change = (fresh - density).cwiseAbs().maxCoeff();
      const double e_change = std::abs(e_new - energy);
      if (it > 1 && e_new > energy + 1e-10) result.monotone = false;
      result.energy_history.push_back(e_new);
      energy = e_new;
      ++result.iterations;
      if (it > 1 && e_change < options.energy_tolerance && d_change < options.density_tolerance) {
        converged = true;
        density = fresh;
        break;
      }
      density = options.diis_size > 0
                    ? fresh
                    : (1.0 - options.damping) * fresh + options.damping * density;
    }
    return std::pair{density, converged};
  };

  auto finish = [&](const Eigen::MatrixXd& density) {
    const Eigen::MatrixXd fock = hcore + two_electron_fock(t, density);
    std::tie(c, eps) = diagonalize(fock);
    result.mo_coefficients = c;
    result.orbital_energies = eps;
    result.hf_energy = 0.5 * (density.cwiseProduct(hcore + fock)).sum() + t.nuclear_repulsion;
  };

  auto [density, converged] = iterate(density_of(c));
  result.converged = converged;
  finish(density);

  // A saddle point of the closed-shell energy can be stationary under the
  // iteration (typically when symmetry-equivalent orbitals are degenerate).
  // Rotate along the lowest Hessian mode and restart until none is negative.
  for (int round = 0; result.converged && round < options.stability_rounds; ++round) {
    Eigen::MatrixXd kappa;
    const double lowest = lowest_rotation_mode(t, result.mo_coefficients,
                                               result.orbital_energies, nocc, kappa);
    result.stable = lowest > -options.stability_tolerance;
    if (result.stable) break;
    const ScfResult saved = result;
    const Eigen::MatrixXd rotated = result.mo_coefficients * rotation(kappa, options.stability_step);
    auto [d2, ok] = iterate(density_of(rotated));
    finish(d2);
    result.converged = ok;
    if (!ok || result.hf_energy > saved.hf_energy - options.energy_tolerance) {
      const auto iters = result.iterations;
      result = saved;
      result.iterations = iters;
      break;
    }
  }
  return result;
}

}  // namespace uccvqe::chem
