#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "uccvqe/chem/basis.hpp"
#include "uccvqe/chem/fcidump.hpp"
#include "uccvqe/chem/integrals.hpp"
#include "uccvqe/chem/mo.hpp"
#include "uccvqe/chem/scf.hpp"
#include "uccvqe/errors.hpp"
#include "uccvqe/vqe/cost.hpp"
#include "uccvqe/vqe/objective.hpp"
#include "uccvqe/vqe/optimizers.hpp"
#include "uccvqe/vqe/problem.hpp"
#include "uccvqe/vqe/run.hpp"

using namespace uccvqe;
using namespace uccvqe::vqe;

namespace {

const ProblemBundle& h4_linear() {
  static const ProblemBundle p = build_problem(chem::h4_geometry(chem::H4Path::linear, 1.2));
  return p;
}

Eigen::VectorXd random_vector(Eigen::Index n, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-scale, scale);
  Eigen::VectorXd t(n);
  for (auto& x : t) x = d(rng);
  return t;
}

Objective objective_for(const ProblemBundle& p, int rho, sim::NoiseModel noise = {}) {
  VqeConfig cfg;
  cfg.trotter_number = rho;
  return Objective(p.qubit_hamiltonian, make_ansatz(p, cfg), noise);
}

Eigen::VectorXd central(const Objective& o, const Eigen::VectorXd& t, double h) {
  Eigen::VectorXd g(t.size());
  for (Eigen::Index j = 0; j < t.size(); ++j) {
    Eigen::VectorXd a = t, b = t;
    a(j) += h;
    b(j) -= h;
    g(j) = (o.exact_energy(a) - o.exact_energy(b)) / (2 * h);
  }
  return g;
}

double rosenbrock(const Eigen::VectorXd& x) {
  double f = 0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i)
    f += 100 * std::pow(x(i + 1) - x(i) * x(i), 2) + std::pow(1 - x(i), 2);
  return f;
}

Eigen::VectorXd rosenbrock_gradient(const Eigen::VectorXd& x) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double d = x(i + 1) - x(i) * x(i);
    g(i) += -400 * x(i) * d - 2 * (1 - x(i));
    g(i + 1) += 200 * d;
  }
  return g;
}

}  // namespace

TEST(Cost, ClosedFormConstants) {
  EXPECT_DOUBLE_EQ(measurement_cost_energy(2.0, 1e-3), 4e6);
  EXPECT_DOUBLE_EQ(gradient_cost_constant(GradientMode::analytical), 4.0);
  EXPECT_DOUBLE_EQ(gradient_cost_constant(GradientMode::central_difference, 0.5), 4.0);
  EXPECT_DOUBLE_EQ(gradient_cost_constant(GradientMode::central_difference, 0.1), 100.0);
  EXPECT_DOUBLE_EQ(measurement_cost_gradient(2.0, 1e-2, GradientMode::analytical), 4 * 4 / 1e-4);
  EXPECT_NEAR(measurement_cost_gradient_vector(2.0, 1e-2, 52, GradientMode::analytical),
              52.0 * 4 * 4 * 52 / 1e-4, 1e-3);
  const Eigen::VectorXd h = Eigen::Vector3d(0.5, -0.25, 1.0);
  EXPECT_NEAR(measurement_cost_energy(h, Eigen::VectorXd::Ones(3), 0.1),
              measurement_cost_energy(1.75, 0.1), 1e-9);
  EXPECT_THROW(gradient_cost_constant(GradientMode::central_difference, 0.0), std::invalid_argument);
}

TEST(Cost, BudgetInversionRoundTrips) {
  for (auto [mode, step] : {std::pair{GradientMode::analytical, 0.0},
                            std::pair{GradientMode::central_difference, 0.1}}) {
    const double eps = component_precision_for_budget(3.2, 1e9, 26, mode, step);
    EXPECT_NEAR(26 * measurement_cost_gradient(3.2, eps, mode, step), 1e9, 1e-3);
  }
}

TEST(GradientConfig, ParseAndPrint) {
  EXPECT_EQ(GradientConfig::parse("analytical").mode, GradientMode::analytical);
  const auto c = GradientConfig::parse("central:0.05");
  EXPECT_EQ(c.mode, GradientMode::central_difference);
  EXPECT_DOUBLE_EQ(c.step, 0.05);
  EXPECT_DOUBLE_EQ(GradientConfig::parse(c.to_string()).step, 0.05);
  EXPECT_THROW(GradientConfig::parse("central:"), std::invalid_argument);
  EXPECT_THROW(GradientConfig::parse("central:-1"), std::invalid_argument);
  EXPECT_THROW(GradientConfig::parse("forward"), std::invalid_argument);
}

TEST(Objective, AdjointGradientMatchesFiniteDifferences) {
  const auto& p = h4_linear();
  for (int rho : {1, 2}) {
    const auto o = objective_for(p, rho);
    const auto t = random_vector(o.n_parameters(), 0.5, 20 + rho);
    const auto g = o.adjoint_gradient(t);
    EXPECT_LT((g - central(o, t, 1e-5)).cwiseAbs().maxCoeff(), 1e-8) << rho;
    EXPECT_LT((gradient_from_circuits(o.gradient_circuits(t)) - g).cwiseAbs().maxCoeff(), 1e-12);
    const auto d = o.difference_circuits(t, 0.1);
    EXPECT_LT((gradient_from_differences(d) - central(o, t, 0.1)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Objective, CircuitValuesAreBoundedAndWeightsSumToNorm) {
  const auto& p = h4_linear();
  const auto o = objective_for(p, 1);
  const auto c = o.gradient_circuits(random_vector(o.n_parameters(), 0.3, 3));
  EXPECT_DOUBLE_EQ(c.one_norm, o.one_norm());
  std::vector<double> w(static_cast<std::size_t>(c.n_parameters), 0.0);
  for (const auto& e : c.entries) {
    EXPECT_LE(std::abs(e.value), 1.0 + 1e-12);
    w[static_cast<std::size_t>(e.parameter)] += std::abs(e.weight);
  }
  // Each generator has subterm weights summing to 1 (singles 2 x 1/2, doubles 8 x 1/8).
  for (double x : w) EXPECT_NEAR(x, o.one_norm(), 1e-10);
}

TEST(Objective, CountersFollowEvaluationRules) {
  const auto& p = h4_linear();
  auto o = objective_for(p, 1);
  const Eigen::VectorXd t = Eigen::VectorXd::Zero(o.n_parameters());
  o.energy(t);
  EXPECT_EQ(o.energy_evaluations(), 1);
  o.numerical_gradient(t, 1e-3);
  EXPECT_EQ(o.energy_evaluations(), 1 + 2 * o.n_parameters());
  EXPECT_EQ(o.gradient_calls(), 1);
  o.analytical_gradient(t);
  EXPECT_EQ(o.energy_evaluations(), 1 + 2 * o.n_parameters());
  EXPECT_EQ(o.gradient_calls(), 2);
  o.gradient(t, GradientConfig::parse("central:0.01"));
  EXPECT_EQ(o.gradient_calls(), 3);
  o.reset_counters();
  EXPECT_EQ(o.energy_evaluations(), 0);
  EXPECT_EQ(o.gradient_calls(), 0);
  EXPECT_DOUBLE_EQ(o.exact_energy(t), p.hf_energy);
}

TEST(Objective, ExactModeHasNoAnalyticalGradient) {
  const auto& p = h4_linear();
  VqeConfig cfg;
  cfg.mode = ansatz::UccMode::exact;
  Objective o(p.qubit_hamiltonian, make_ansatz(p, cfg));
  EXPECT_THROW(o.analytical_gradient(Eigen::VectorXd::Zero(o.n_parameters())), UnsupportedError);
}

TEST(Objective, SampledGradientsMeetComponentPrecision) {
  const auto& p = h4_linear();
  const auto o = objective_for(p, 1);
  const auto t = random_vector(o.n_parameters(), 0.3, 4);
  const auto g = o.adjoint_gradient(t);
  const auto circuits = o.gradient_circuits(t);
  const auto diffs = o.difference_circuits(t, 0.5);
  const auto g_diff = gradient_from_differences(diffs);
  const double eps = 0.05;
  sim::Rng rng(5);
  const int trials = 200;
  Eigen::VectorXd sq_a = Eigen::VectorXd::Zero(g.size()), sq_n = sq_a;
  for (int k = 0; k < trials; ++k) {
    sq_a += (sample_analytical_gradient(circuits, eps, rng).gradient - g).array().square().matrix();
    sq_n += (sample_numerical_gradient(diffs, eps, rng).gradient - g_diff).array().square().matrix();
  }
  // Per-component RMS <= eps; 200 trials bound the estimate within ~15%.
  EXPECT_LT(std::sqrt(sq_a.maxCoeff() / trials), 1.2 * eps);
  EXPECT_LT(std::sqrt(sq_n.maxCoeff() / trials), 1.2 * eps);

  // Analytical shots match the closed-form bound within one shot per circuit.
  const auto s = sample_analytical_gradient(circuits, eps, rng);
  const double bound = o.n_parameters() * measurement_cost_gradient(o.one_norm(), eps, GradientMode::analytical);
  EXPECT_LE(static_cast<double>(s.shots), bound + static_cast<double>(circuits.entries.size()));
}

TEST(Objective, ControlNoiseIsUnbiasedToFirstOrder) {
  const auto& p = h4_linear();
  sim::NoiseModel noise;
  noise.control_sigma = 1e-3;
  noise.seed = 6;
  auto o = objective_for(p, 1, noise);
  const auto t = *p.mp2;
  const double exact = o.exact_energy(t);
  double sum = 0;
  bool differs = false;
  for (int k = 0; k < 200; ++k) {
    const double e = o.energy(t);
    differs |= e != exact;
    sum += e;
  }
  EXPECT_TRUE(differs);
  EXPECT_NEAR(sum / 200, exact, 1e-5);
}

TEST(Optimizers, NelderMeadFindsRosenbrockMinimum) {
  OptimizerConfig cfg;
  cfg.method = OptimizerMethod::nelder_mead;
  cfg.energy_tolerance = 1e-10;
  cfg.parameter_tolerance = 1e-8;
  const auto r = nelder_mead(rosenbrock, Eigen::Vector2d(-1.2, 1.0), cfg);
  EXPECT_TRUE(r.converged) << r.reason;
  EXPECT_LT((r.x - Eigen::Vector2d(1, 1)).norm(), 1e-4);
  EXPECT_DOUBLE_EQ(r.value, rosenbrock(r.x));
}

TEST(Optimizers, LbfgsFindsRosenbrockMinimum) {
  OptimizerConfig cfg;
  cfg.gradient_tolerance = 1e-8;
  cfg.energy_tolerance = 1e-14;
  cfg.parameter_tolerance = 1e-12;
  const auto r = lbfgs(rosenbrock, rosenbrock_gradient, Eigen::VectorXd::Constant(4, -0.5), cfg);
  EXPECT_TRUE(r.converged) << r.reason;
  EXPECT_LT((r.x - Eigen::VectorXd::Ones(4)).norm(), 1e-6);
}

TEST(Optimizers, LbfgsSolvesQuadraticInFewIterations) {
  const Eigen::Vector3d d(1.0, 4.0, 9.0), c(0.5, -1.0, 2.0);
  auto f = [&](const Eigen::VectorXd& x) { return 0.5 * ((x - c).array().square() * d.array()).sum(); };
  auto g = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return d.cwiseProduct(x - c); };
  OptimizerConfig cfg;
  cfg.gradient_tolerance = 1e-10;
  cfg.energy_tolerance = 1e-16;
  cfg.parameter_tolerance = 1e-14;
  const auto r = lbfgs(f, g, Eigen::VectorXd::Zero(3), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_LT((r.x - c).norm(), 1e-9);
  EXPECT_LE(r.iterations, 12);
}

TEST(Optimizers, EvaluationCapStopsRun) {
  OptimizerConfig cfg;
  cfg.max_evaluations = 50;
  cfg.energy_tolerance = 1e-14;
  cfg.parameter_tolerance = 1e-14;
  const auto r = nelder_mead(rosenbrock, Eigen::VectorXd::Constant(6, -1.0), cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.reason, "maximum function evaluations reached");
  EXPECT_LE(r.evaluations, 50 + 6);
  OptimizerConfig bad;
  bad.energy_tolerance = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_EQ(parse_optimizer(to_string(OptimizerMethod::nelder_mead)), OptimizerMethod::nelder_mead);
  EXPECT_THROW(parse_optimizer("cobyla"), std::invalid_argument);
}

TEST(Problem, PoolsAndReferenceEnergies) {
  const auto& p = h4_linear();
  EXPECT_EQ(p.full_pool_size, 52u);
  EXPECT_EQ(p.excitations.size(), 52u);
  ASSERT_TRUE(p.mp2);
  EXPECT_EQ(p.mp2->size(), 52);
  ASSERT_TRUE(p.fci);
  EXPECT_LT(p.fci->energy, p.hf_energy);

  ProblemOptions screened;
  screened.screen_threshold = 1e-2;
  const auto s = build_problem(chem::h4_geometry(chem::H4Path::linear, 1.2), screened);
  EXPECT_EQ(s.full_pool_size, 52u);
  std::size_t expected = 0;
  for (Eigen::Index k = 0; k < p.mp2->size(); ++k)
    if (p.excitations[static_cast<std::size_t>(k)].rank() == 1 || std::abs((*p.mp2)(k)) >= 1e-2) ++expected;
  EXPECT_EQ(s.excitations.size(), expected);
}

TEST(Problem, FcidumpPathMatchesGeometryPath) {
  const auto g = chem::h4_geometry(chem::H4Path::linear, 1.2);
  const auto t = chem::build_integrals(g, chem::make_basis(g, chem::BasisName::sto6g));
  const auto mo = chem::transform_to_mo(t, chem::run_rhf(t, 4));
  std::stringstream ss;
  chem::write_fcidump(mo, ss);
  const auto q = build_problem(chem::parse_fcidump(ss.str()));
  const auto& p = h4_linear();
  EXPECT_NEAR(q.hf_energy, p.hf_energy, 1e-10);
  EXPECT_NEAR(q.fci->energy, p.fci->energy, 1e-10);
  EXPECT_LT((*q.mp2 - *p.mp2).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Run, InitialGuesses) {
  const auto& p = h4_linear();
  sim::Rng a(7), b(7);
  EXPECT_EQ(initial_guess(p, GuessMode::zeros, a).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(initial_guess(p, GuessMode::mp2, a), *p.mp2);
  const auto r1 = initial_guess(p, GuessMode::random, a, 0.1);
  sim::Rng c(7);
  initial_guess(p, GuessMode::zeros, c);
  initial_guess(p, GuessMode::mp2, c);
  EXPECT_EQ(initial_guess(p, GuessMode::random, c, 0.1), r1);
  EXPECT_LE(r1.cwiseAbs().maxCoeff(), 0.1);
  EXPECT_GT(r1.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(parse_guess(to_string(GuessMode::mp2)), GuessMode::mp2);
}

TEST(Run, H2ReachesFullCi) {
  const auto g = chem::make_geometry({{1, {0, 0, 0}}, {1, {0, 0, 1.4}}}, "H2");
  ProblemOptions opt;
  opt.basis = chem::BasisName::sto3g;
  const auto p = build_problem(g, opt);
  EXPECT_EQ(p.excitations.size(), 5u);
  VqeConfig cfg;
  cfg.optimizer.gradient_tolerance = 1e-8;
  const auto r = run_vqe(p, cfg);
  ASSERT_TRUE(r.fci_energy);
  EXPECT_NEAR(r.exact_energy, *r.fci_energy, 1e-9);
  EXPECT_LT(*r.infidelity, 1e-6);
  EXPECT_NEAR(*r.fci_energy, -1.1373, 1e-4);
}

TEST(Run, VariationalBoundsAndDeterminism) {
  const auto& p = h4_linear();
  VqeConfig cfg;
  cfg.seed = 11;
  cfg.guess = GuessMode::random;
  const auto a = run_vqe(p, cfg);
  const auto b = run_vqe(p, cfg);
  EXPECT_EQ(a.t, b.t);
  EXPECT_EQ(a.energy_evaluations, b.energy_evaluations);
  EXPECT_GE(a.exact_energy, p.fci->energy - 1e-10);
  EXPECT_LE(a.exact_energy, p.hf_energy);
  EXPECT_NEAR(*a.overlap * *a.overlap + *a.infidelity, 1.0, 1e-12);
}
