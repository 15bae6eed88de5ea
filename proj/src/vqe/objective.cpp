#include "uccvqe/vqe/objective.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "uccvqe/errors.hpp"

namespace uccvqe::vqe {

void GradientConfig::validate() const {
  if (mode == GradientMode::central_difference && !(step > 0))
    throw std::invalid_argument("finite-difference step must be positive");
}

GradientConfig GradientConfig::parse(std::string_view text) {
  if (text == "analytical") return {GradientMode::analytical, 0.0};
  constexpr std::string_view prefix = "central:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string v(text.substr(prefix.size()));
    std::size_t used = 0;
    double step = 0;
    try {
      step = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != v.size()) throw std::invalid_argument("bad step in '" + std::string(text) + "'");
    GradientConfig c{GradientMode::central_difference, step};
    c.validate();
    return c;
  }
  throw std::invalid_argument("gradient must be 'analytical' or 'central:<step>'");
}

std::string GradientConfig::to_string() const {
  if (mode == GradientMode::analytical) return "analytical";
  std::ostringstream s;
  s << "central:" << step;
  return s.str();
}

Objective::Objective(ops::QubitOperator hamiltonian, ansatz::UccAnsatz ansatz, sim::NoiseModel noise)
    : Objective(std::move(hamiltonian), ansatz, sim::hf_state(ansatz.system), noise) {}

Objective::Objective(ops::QubitOperator hamiltonian, ansatz::UccAnsatz ansatz,
                     sim::Statevector reference, sim::NoiseModel noise)
    : hamiltonian_(std::move(hamiltonian)),
      circuit_(std::move(ansatz)),
      reference_(std::move(reference)),
      noise_(noise),
      rng_(noise.seed) {
  noise_.validate();
  if (!hamiltonian_.is_hermitian()) throw std::invalid_argument("Hamiltonian must be Hermitian");
  if (reference_.n_qubits() != circuit_.n_qubits())
    throw std::invalid_argument("reference register differs from ansatz");
  h_sparse_ = sim::to_sparse(hamiltonian_, circuit_.n_qubits());
  one_norm_ = ops::one_norm(hamiltonian_);
  if (noise_.sampling) plan_ = sim::make_measurement_plan(hamiltonian_, noise_.epsilon);
}

void Objective::reset_counters() {
  energy_evals_ = gradient_calls_ = shots_ = 0;
  last_gradient_norm_ = -1.0;
}

void Objective::require_trotterized() const {
  if (circuit_.exact())
    throw UnsupportedError("analytical gradient requires the trotterized product form");
}

sim::Statevector Objective::state(const Eigen::VectorXd& t) const {
  return circuit_.prepare(reference_, t);
}

double Objective::energy_of(const sim::Statevector& s) const {
  const Eigen::VectorXcd& psi = s.amplitudes();
  return psi.dot(h_sparse_ * psi).real();
}

double Objective::exact_energy(const Eigen::VectorXd& t) const { return energy_of(state(t)); }

double Objective::energy(const Eigen::VectorXd& t) {
  ++energy_evals_;
  const auto s = state(sim::perturb(t, noise_.control_sigma, rng_));
  if (!plan_) return energy_of(s);
  const auto v = sim::sampled_expectation(s, *plan_, rng_);
  shots_ += v.shots;
  return v.estimate;
}

Eigen::VectorXd Objective::gradient(const Eigen::VectorXd& t, const GradientConfig& config) {
  config.validate();
  return config.mode == GradientMode::analytical ? analytical_gradient(t)
                                                 : numerical_gradient(t, config.step);
}

Eigen::VectorXd Objective::adjoint_gradient(const Eigen::VectorXd& t) const {
  require_trotterized();
  const sim::Statevector psi = state(t);
  Eigen::VectorXcd phi = psi.amplitudes();
  Eigen::VectorXcd lambda = h_sparse_ * phi;
  Eigen::VectorXcd gphi(phi.size());
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(n_parameters());
  const double rho = circuit_.trotter_number();
  for (int g = circuit_.n_gates() - 1; g >= 0; --g) {
    const int j = circuit_.gate_parameter(g);
    const auto& gen = circuit_.generators()[static_cast<std::size_t>(j)];
    sim::apply_generator(gen, phi, gphi);
    grad(j) += 2.0 * lambda.dot(gphi).real() / rho;
    sim::apply_rotation(gen, phi, -t(j) / rho);
    sim::apply_rotation(gen, lambda, -t(j) / rho);
  }
  return grad;
}

GradientCircuits Objective::gradient_circuits(const Eigen::VectorXd& t) const {
  require_trotterized();
  const double rho = circuit_.trotter_number();
  const int n_gates = circuit_.n_gates();
  // Forward sweep storing P_k phi_g for every gate and subterm.
  sim::Statevector phi = reference_;
  std::vector<std::vector<sim::Statevector>> pk_phi(static_cast<std::size_t>(n_gates));
  for (int g = 0; g < n_gates; ++g) {
    const int j = circuit_.gate_parameter(g);
    sim::apply_rotation(circuit_.generators()[static_cast<std::size_t>(j)], phi.data(), t(j) / rho);
    for (const auto& st : circuit_.expansions()[static_cast<std::size_t>(j)].subterms) {
      sim::Statevector v = phi;
      sim::apply_pauli(v, st.string);
      pk_phi[static_cast<std::size_t>(g)].push_back(std::move(v));
    }
  }
  const sim::Statevector psi = phi;

  GradientCircuits out;
  out.n_parameters = n_parameters();
  out.one_norm = one_norm_;
  for (const auto& [p, c] : hamiltonian_.terms()) {
    if (p.is_identity()) continue;
    const double h = c.real();
    sim::Statevector lambda = psi;
    sim::apply_pauli(lambda, p);
    for (int g = n_gates - 1; g >= 0; --g) {
      const int j = circuit_.gate_parameter(g);
      const auto& subterms = circuit_.expansions()[static_cast<std::size_t>(j)].subterms;
      for (std::size_t k = 0; k < subterms.size(); ++k) {
        const double x = sim::inner(pk_phi[static_cast<std::size_t>(g)][k], lambda).imag();
        out.entries.push_back({j, h * subterms[k].coefficient / rho, x});
      }
      sim::apply_rotation(circuit_.generators()[static_cast<std::size_t>(j)], lambda.data(),
                          -t(j) / rho);
    }
  }
  return out;
}

DifferenceCircuits Objective::difference_circuits(const Eigen::VectorXd& t, double step) const {
  if (!(step > 0)) throw std::invalid_argument("finite-difference step must be positive");
  DifferenceCircuits out;
  out.step = step;
  std::vector<ops::PauliString> strings;
  std::vector<double> coeffs;
  for (const auto& [p, c] : hamiltonian_.terms())
    if (!p.is_identity()) {
      strings.push_back(p);
      coeffs.push_back(c.real());
    }
  const auto m = static_cast<Eigen::Index>(strings.size());
  out.coefficients = Eigen::Map<Eigen::VectorXd>(coeffs.data(), m);
  out.plus.resize(m, n_parameters());
  out.minus.resize(m, n_parameters());
  for (Eigen::Index j = 0; j < n_parameters(); ++j)
    for (int side = 0; side < 2; ++side) {
      Eigen::VectorXd tt = t;
      tt(j) += side == 0 ? step : -step;
      const auto s = state(tt);
      auto& dst = side == 0 ? out.plus : out.minus;
      for (Eigen::Index i = 0; i < m; ++i)
        dst(i, j) = sim::pauli_expectation(s, strings[static_cast<std::size_t>(i)]);
    }
  return out;
}

Eigen::VectorXd Objective::analytical_gradient(const Eigen::VectorXd& t) {
  require_trotterized();
  ++gradient_calls_;
  const Eigen::VectorXd tt = sim::perturb(t, noise_.control_sigma, rng_);
  Eigen::VectorXd g;
  if (noise_.sampling) {
    double eps = precision_.epsilon;
    if (precision_.adaptive && last_gradient_norm_ > 0)
      eps = std::max(precision_.floor, precision_.factor * last_gradient_norm_);
    const double eps_j = eps / std::sqrt(static_cast<double>(n_parameters()));
    auto sg = sample_analytical_gradient(gradient_circuits(tt), eps_j, rng_);
    shots_ += sg.shots;
    g = std::move(sg.gradient);
  } else {
    g = adjoint_gradient(tt);
  }
  last_gradient_norm_ = g.norm();
  return g;
}

Eigen::VectorXd Objective::numerical_gradient(const Eigen::VectorXd& t, double step) {
  if (!(step > 0)) throw std::invalid_argument("finite-difference step must be positive");
  ++gradient_calls_;
  std::optional<sim::MeasurementPlan> plan;
  if (noise_.sampling) {
    double eps = precision_.epsilon;
    if (precision_.adaptive && last_gradient_norm_ > 0)
      eps = std::max(precision_.floor, precision_.factor * last_gradient_norm_);
    const double eps_j = eps / std::sqrt(static_cast<double>(n_parameters()));
    plan = sim::make_measurement_plan(hamiltonian_, 2.0 * step * eps_j / std::sqrt(2.0));
  }
  auto eval = [&](const Eigen::VectorXd& x) {
    if (!plan) return energy(x);
    ++energy_evals_;
    const auto s = state(sim::perturb(x, noise_.control_sigma, rng_));
    const auto v = sim::sampled_expectation(s, *plan, rng_);
    shots_ += v.shots;
    return v.estimate;
  };
  Eigen::VectorXd g(n_parameters());
  for (Eigen::Index j = 0; j < n_parameters(); ++j) {
    Eigen::VectorXd tp = t, tm = t;
    tp(j) += step;
    tm(j) -= step;
    const double ep = eval(tp);
    const double em = eval(tm);
    g(j) = (ep - em) / (2.0 * step);
  }
  last_gradient_norm_ = g.norm();
  return g;
}

Eigen::VectorXd gradient_from_circuits(const GradientCircuits& c) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(c.n_parameters);
  for (const auto& e : c.entries) g(e.parameter) += 2.0 * e.weight * e.value;
  return g;
}

SampledGradient sample_analytical_gradient(const GradientCircuits& c, double epsilon_component,
                                           sim::Rng& rng) {
  if (!(epsilon_component > 0)) throw std::invalid_argument("precision must be positive");
  SampledGradient out{Eigen::VectorXd::Zero(c.n_parameters), 0};
  const double scale = 4.0 * c.one_norm / (epsilon_component * epsilon_component);
  for (const auto& e : c.entries) {
    if (e.weight == 0.0) continue;
    const auto m = std::max<std::int64_t>(1, sim::shot_ceil(scale * std::abs(e.weight)));
    out.gradient(e.parameter) += 2.0 * e.weight * sim::sample_mean(e.value, m, rng);
    out.shots += m;
  }
  return out;
}

SampledGradient sample_numerical_gradient(const DifferenceCircuits& c, double epsilon_component,
                                          sim::Rng& rng) {
  if (!(epsilon_component > 0)) throw std::invalid_argument("precision must be positive");
  const double eps_e = 2.0 * c.step * epsilon_component / std::sqrt(2.0);
  const double norm1 = c.coefficients.cwiseAbs().sum();
  std::vector<std::int64_t> shots(static_cast<std::size_t>(c.coefficients.size()));
  for (Eigen::Index i = 0; i < c.coefficients.size(); ++i)
    shots[static_cast<std::size_t>(i)] = std::max<std::int64_t>(
        1, sim::shot_ceil(std::abs(c.coefficients(i)) * norm1 / (eps_e * eps_e)));
  SampledGradient out{Eigen::VectorXd::Zero(c.plus.cols()), 0};
  for (Eigen::Index j = 0; j < c.plus.cols(); ++j) {
    double ep = 0, em = 0;
    for (Eigen::Index i = 0; i < c.coefficients.size(); ++i) {
      const auto m = shots[static_cast<std::size_t>(i)];
      ep += c.coefficients(i) * sim::sample_mean(c.plus(i, j), m, rng);
      em += c.coefficients(i) * sim::sample_mean(c.minus(i, j), m, rng);
      out.shots += 2 * m;
    }
    out.gradient(j) = (ep - em) / (2.0 * c.step);
  }
  return out;
}

Eigen::VectorXd gradient_from_differences(const DifferenceCircuits& c) {
  return (c.coefficients.transpose() * (c.plus - c.minus)).transpose() / (2.0 * c.step);
}

}  // namespace uccvqe::vqe
