#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "uccvqe/ansatz/excitation.hpp"
#include "uccvqe/ansatz/ucc.hpp"
#include "uccvqe/chem/basis.hpp"
#include "uccvqe/chem/integrals.hpp"
#include "uccvqe/chem/mo.hpp"
#include "uccvqe/chem/scf.hpp"
#include "uccvqe/errors.hpp"
#include "uccvqe/sim/circuit.hpp"
#include "uccvqe/sim/fci.hpp"
#include "uccvqe/sim/sampling.hpp"
#include "uccvqe/sim/statevector.hpp"

using namespace uccvqe;
using namespace uccvqe::sim;
using cd = std::complex<double>;

namespace {

ops::MolecularHamiltonian h4_hamiltonian(chem::H4Path path, double parameter, double* e_hf = nullptr) {
  const auto g = chem::h4_geometry(path, parameter);
  const auto t = chem::build_integrals(g, chem::make_basis(g, chem::BasisName::sto6g));
  const auto scf = chem::run_rhf(t, 4);
  if (e_hf) *e_hf = scf.hf_energy;
  return ops::spatial_to_spin_orbital(chem::transform_to_mo(t, scf));
}

Statevector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Eigen::VectorXcd v(Eigen::Index(1) << n);
  for (auto& x : v) x = cd(d(rng), d(rng));
  return Statevector(v);
}

Eigen::VectorXd random_amplitudes(Eigen::Index n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Eigen::VectorXd t(n);
  for (auto& x : t) x = d(rng);
  return t;
}

Eigen::MatrixXd generator_dense(const ansatz::Excitation& e, int n) {
  const auto tau = ansatz::cluster_operator(e);
  return ops::to_dense(ops::jordan_wigner(tau - tau.adjoint()), n).real();
}

Eigen::VectorXcd hf_dense(int n, int eta) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
  v((Eigen::Index(1) << eta) - 1) = 1;
  return v;
}

}  // namespace

TEST(Statevector, ConstructionAndLimits) {
  Statevector s(3);
  EXPECT_EQ(s.dim(), 8);
  EXPECT_EQ(s[0], cd(1, 0));
  EXPECT_THROW(Statevector(17), CapacityError);
  EXPECT_THROW(Statevector(Eigen::VectorXcd::Ones(3)), std::invalid_argument);
  EXPECT_THROW(Statevector(Eigen::VectorXcd::Zero(4)), std::invalid_argument);
  EXPECT_NEAR(Statevector(Eigen::VectorXcd::Constant(4, cd(3, 4))).norm(), 1.0, 1e-15);
  const auto hf = hf_state({8, 4});
  EXPECT_EQ(hf[0b1111], cd(1, 0));
  EXPECT_DOUBLE_EQ(particle_number(hf), 4.0);
  EXPECT_EQ(Statevector::basis_state(4, 9)[9], cd(1, 0));
}

TEST(Statevector, PauliActionMatchesDense) {
  std::mt19937_64 rng(5);
  const auto psi = random_state(4, rng);
  for (const char* text : {"X0 Z1 Y3", "Y0 Y1 Y2 Y3", "Z2", "I"}) {
    const auto p = ops::parse_pauli_string(text);
    const auto m = ops::to_dense(p, 4);
    auto s = psi;
    apply_pauli(s, p);
    EXPECT_LT((s.amplitudes() - m * psi.amplitudes()).norm(), 1e-14);
    for (double th : {0.3, -1.1}) {
      auto r = psi;
      apply_pauli_rotation(r, p, th);
      const Eigen::MatrixXcd u = (cd(0, th) * m).exp();
      EXPECT_LT((r.amplitudes() - u * psi.amplitudes()).norm(), 1e-13);
    }
    EXPECT_NEAR(pauli_expectation(psi, p), psi.amplitudes().dot(m * psi.amplitudes()).real(), 1e-14);
  }
}

TEST(Statevector, ExpectationAndSparseMatchDense) {
  std::mt19937_64 rng(6);
  const auto mh = h4_hamiltonian(chem::H4Path::linear, 1.2);
  const auto h = ops::qubit_hamiltonian(mh);
  const auto psi = random_state(8, rng);
  const Eigen::MatrixXcd dense = ops::to_dense(h, 8);
  const Eigen::MatrixXcd sparse = Eigen::MatrixXcd(to_sparse(h, 8));
  EXPECT_LT((dense - sparse).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(expectation(psi, h), psi.amplitudes().dot(dense * psi.amplitudes()).real(), 1e-12);
  ops::QubitOperator bad(ops::parse_pauli_string("X0"), cd(0, 1));
  EXPECT_THROW(expectation(psi, bad), std::invalid_argument);
}

TEST(Statevector, InfidelityProperties) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_state(3, rng), b = random_state(3, rng);
    const double f = infidelity(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    EXPECT_NEAR(f, infidelity(b, a), 1e-14);
    EXPECT_NEAR(f + overlap(a, b) * overlap(a, b), 1.0, 1e-14);
    EXPECT_NEAR(infidelity(a, a), 0.0, 1e-14);
    const Statevector phased(a.amplitudes() * std::polar(1.0, 0.7));
    EXPECT_NEAR(infidelity(a, phased), 0.0, 1e-14);
  }
  EXPECT_NEAR(infidelity(Statevector::basis_state(2, 1), Statevector::basis_state(2, 2)), 1.0, 0.0);
}

TEST(Circuit, FusedGeneratorMatchesDense) {
  const ops::SystemInfo sys{8, 4};
  std::mt19937_64 rng(8);
  const auto psi = random_state(8, rng);
  for (const auto& e : ansatz::generate_uccsd(sys)) {
    const auto g = fuse_generator(e, 8);
    Eigen::VectorXcd out(256);
    apply_generator(g, psi.amplitudes(), out);
    EXPECT_LT((out - generator_dense(e, 8).cast<cd>() * psi.amplitudes()).norm(), 1e-14);
  }
}

TEST(Circuit, KernelsAgree) {
  std::mt19937_64 rng(9);
  for (int rho : {1, 2, 3}) {
    const UccCircuit c(ansatz::make_uccsd({8, 4}, rho));
    const auto t = random_amplitudes(c.n_parameters(), 1.0, rng);
    const auto a = c.prepare(hf_state({8, 4}), t, UccKernel::fused);
    const auto b = c.prepare(hf_state({8, 4}), t, UccKernel::subterms);
    EXPECT_LT((a.amplitudes() - b.amplitudes()).norm(), 1e-12) << rho;
    EXPECT_NEAR(a.norm(), 1.0, 1e-13);
    EXPECT_NEAR(particle_number(a), 4.0, 1e-12);
  }
}

TEST(Circuit, TrotterProductMatchesDenseExponentials) {
  std::mt19937_64 rng(10);
  const int rho = 2;
  const UccCircuit c(ansatz::make_uccsd({6, 2}, rho));
  const auto t = random_amplitudes(c.n_parameters(), 0.8, rng);
  Eigen::VectorXcd ref = hf_dense(6, 2);
  for (int step = 0; step < rho; ++step)
    for (Eigen::Index j = 0; j < c.n_parameters(); ++j) {
      const Eigen::MatrixXd g = generator_dense(c.ansatz().excitations[static_cast<std::size_t>(j)], 6);
      const Eigen::MatrixXd u = (t(j) / rho * g).exp();
      ref = u.cast<cd>() * ref;
    }
  const auto s = c.prepare(hf_state({6, 2}), t);
  EXPECT_LT((s.amplitudes() - ref).norm(), 1e-12);
}

TEST(Circuit, ExactModeMatchesDenseExponentialAndTrotterLimit) {
  std::mt19937_64 rng(11);
  const ops::SystemInfo sys{6, 2};
  auto exact = ansatz::make_uccsd(sys, 1, ansatz::UccMode::exact);
  const UccCircuit ce(exact);
  const auto t = random_amplitudes(ce.n_parameters(), 0.5, rng);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(64, 64);
  for (Eigen::Index j = 0; j < t.size(); ++j)
    sum += t(j) * generator_dense(exact.excitations[static_cast<std::size_t>(j)], 6);
  const Eigen::VectorXcd ref = Eigen::MatrixXd(sum.exp()).cast<cd>() * hf_dense(6, 2);
  const auto s = ce.prepare(hf_state(sys), t);
  EXPECT_LT((s.amplitudes() - ref).norm(), 1e-12);

  // First-order product formula: the error falls as 1/rho.
  std::vector<double> err;
  for (int rho : {4, 16, 64}) {
    const UccCircuit ct(ansatz::make_uccsd(sys, rho));
    err.push_back((ct.prepare(hf_state(sys), t).amplitudes() - ref).norm());
  }
  EXPECT_NEAR(err[0] / err[1], 4.0, 0.5);
  EXPECT_NEAR(err[1] / err[2], 4.0, 0.2);
}

TEST(Circuit, RejectsMismatchedInput) {
  const UccCircuit c(ansatz::make_uccsd({8, 4}));
  EXPECT_THROW(c.prepare(hf_state({8, 4}), Eigen::VectorXd::Zero(3)), std::invalid_argument);
  EXPECT_THROW(c.prepare(hf_state({6, 2}), Eigen::VectorXd::Zero(52)), std::invalid_argument);
}

TEST(Sampling, PlanFollowsShotFormula) {
  const auto h = ops::qubit_hamiltonian(h4_hamiltonian(chem::H4Path::linear, 1.2));
  const double eps = 1.6e-3;
  const auto plan = make_measurement_plan(h, eps);
  const double s = ops::one_norm(h);
  std::int64_t total = 0;
  ASSERT_EQ(plan.strings.size(), h.size() - 1);
  for (std::size_t k = 0; k < plan.strings.size(); ++k) {
    EXPECT_FALSE(plan.strings[k].is_identity());
    const double hk = std::abs(plan.coefficients[k]);
    EXPECT_EQ(plan.shots[k], shot_ceil(hk * s / (eps * eps)));
    total += plan.shots[k];
  }
  EXPECT_EQ(plan.total_shots, total);
  EXPECT_DOUBLE_EQ(plan.identity, h.identity_coefficient());
  EXPECT_THROW(make_measurement_plan(h, 0.0), std::invalid_argument);
}

TEST(Sampling, ShotCeilIgnoresRoundingNoise) {
  EXPECT_EQ(shot_ceil(3.0), 3);
  EXPECT_EQ(shot_ceil(3.0 * (1 + 1e-14)), 3);
  EXPECT_EQ(shot_ceil(3.2), 4);
  EXPECT_EQ(shot_ceil(0.0), 0);
}

TEST(Sampling, BinomialMeanIsUnbiasedWithBinomialVariance) {
  Rng rng(12);
  const double mu = 0.3;
  const std::int64_t m = 50;
  const int trials = 20000;
  double sum = 0, sq = 0;
  for (int k = 0; k < trials; ++k) {
    const double x = sample_mean(mu, m, rng);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / trials, var = sq / trials - mean * mean;
  const double expected_var = (1 - mu * mu) / m;
  EXPECT_NEAR(mean, mu, 5 * std::sqrt(expected_var / trials));
  EXPECT_NEAR(var / expected_var, 1.0, 0.05);
  EXPECT_EQ(sample_mean(1.0, 10, rng), 1.0);
  EXPECT_EQ(sample_mean(-1.0, 10, rng), -1.0);
}

TEST(Sampling, EstimatorErrorStaysWithinPrecision) {
  std::mt19937_64 init(13);
  const auto h = ops::qubit_hamiltonian(h4_hamiltonian(chem::H4Path::rectangular, 1.5));
  const auto c = UccCircuit(ansatz::make_uccsd({8, 4}));
  const auto psi = c.prepare(hf_state({8, 4}), random_amplitudes(52, 0.2, init));
  const double exact = expectation(psi, h);
  const double eps = 0.02;
  const auto plan = make_measurement_plan(h, eps);
  Rng rng(14);
  const int trials = 400;
  double sq = 0;
  for (int k = 0; k < trials; ++k) {
    const auto v = sampled_expectation(psi, plan, rng);
    EXPECT_EQ(v.shots, plan.total_shots);
    sq += (v.estimate - exact) * (v.estimate - exact);
  }
  // Var <= eps^2; 400 trials put the sample RMS within ~10% of the truth.
  EXPECT_LT(std::sqrt(sq / trials), 1.15 * eps);

  Rng r1(99), r2(99);
  EXPECT_EQ(sampled_expectation(psi, plan, r1).estimate, sampled_expectation(psi, plan, r2).estimate);
}

TEST(Sampling, PerturbationStatistics) {
  Rng rng(15);
  const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(20000, -1, 1);
  EXPECT_EQ(perturb(t, 0.0, rng), t);
  const Eigen::VectorXd d = perturb(t, 0.01, rng) - t;
  const double mean = d.mean();
  const double std = std::sqrt((d.array() - mean).square().mean());
  EXPECT_NEAR(mean, 0.0, 5 * 0.01 / std::sqrt(20000.0));
  EXPECT_NEAR(std, 0.01, 0.0003);
  NoiseModel bad;
  bad.control_sigma = -1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Fci, SectorBasisIsAscendingAndComplete) {
  const auto b = sector_basis(8, 4);
  ASSERT_EQ(b.size(), 70u);
  for (std::size_t k = 0; k < b.size(); ++k) {
    EXPECT_EQ(__builtin_popcount(b[k]), 4);
    if (k) {
      EXPECT_LT(b[k - 1], b[k]);
    }
  }
}

TEST(Fci, GroundStateIsLowestSectorEigenpair) {
  double e_hf = 0;
  const auto mh = h4_hamiltonian(chem::H4Path::trapezoidal, 120.0, &e_hf);
  const auto h = ops::qubit_hamiltonian(mh);
  const auto r = fci_solve(h, mh.system);
  const Eigen::MatrixXcd dense = ops::to_dense(h, 8);
  Eigen::MatrixXd sub(70, 70);
  for (std::size_t i = 0; i < 70; ++i)
    for (std::size_t j = 0; j < 70; ++j) sub(i, j) = dense(r.sector_basis[i], r.sector_basis[j]).real();
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sub).eigenvalues();
  EXPECT_LT((ev - r.sector_spectrum).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(r.energy, ev(0), 1e-10);
  EXPECT_LT(r.energy, e_hf);
  EXPECT_NEAR(expectation(r.state, h), r.energy, 1e-10);
  const Eigen::VectorXcd resid = dense * r.state.amplitudes() - r.energy * r.state.amplitudes();
  EXPECT_LT(resid.norm(), 1e-9);
  Eigen::Index imax = 0;
  r.state.amplitudes().cwiseAbs().maxCoeff(&imax);
  EXPECT_GT(r.state[imax].real(), 0.0);
  EXPECT_EQ(r.state[imax].imag(), 0.0);
}

TEST(Fci, RejectsNumberBreakingOperatorsAndLargeRegisters) {
  ops::QubitOperator x(ops::parse_pauli_string("X0"));
  EXPECT_THROW(sector_matrix(x, sector_basis(4, 2), 4), std::invalid_argument);
  EXPECT_THROW(fci_solve(ops::QubitOperator(ops::parse_pauli_string("Z0")), {18, 2}), CapacityError);
}
