#include "uccvqe/vqe/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace uccvqe::vqe {

OptimizerMethod parse_optimizer(std::string_view name) {
  if (name == "nelder-mead" || name == "nelder_mead" || name == "nm") return OptimizerMethod::nelder_mead;
  if (name == "lbfgs" || name == "l-bfgs" || name == "l-bfgs-b") return OptimizerMethod::lbfgs;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

std::string_view to_string(OptimizerMethod m) {
  return m == OptimizerMethod::nelder_mead ? "nelder-mead" : "lbfgs";
}

void OptimizerConfig::validate() const {
  if (!(energy_tolerance > 0) || !(parameter_tolerance > 0) || !(gradient_tolerance > 0))
    throw std::invalid_argument("optimizer tolerances must be positive");
  if (max_evaluations < 1 || max_iterations < 1 || history < 1 || max_backtracks < 1)
    throw std::invalid_argument("optimizer limits must be positive");
  if (!(armijo > 0 && armijo < 1) || !(shrink > 0 && shrink < 1))
    throw std::invalid_argument("line-search constants out of range");
}

namespace {

class Tracker {
 public:
  Tracker(const ScalarFn& f, const CounterFn& counter) : f_(f), counter_(counter) {}

  double operator()(const Eigen::VectorXd& x) {
    ++calls_;
    const double v = f_(x);
    if (v < best_value_) {
      best_value_ = v;
      best_x_ = x;
    }
    return v;
  }
  std::int64_t evaluations() const { return counter_ ? counter_() : calls_; }
  double best_value() const { return best_value_; }
  const Eigen::VectorXd& best_x() const { return best_x_; }

 private:
  const ScalarFn& f_;
  const CounterFn& counter_;
  std::int64_t calls_ = 0;
  double best_value_ = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x_;
};

OptimizerResult finish(const Tracker& tr, std::int64_t grads, int iterations, bool converged,
                       std::string reason) {
  OptimizerResult r;
  r.x = tr.best_x();
  r.value = tr.best_value();
  r.evaluations = tr.evaluations();
  r.gradient_calls = grads;
  r.iterations = iterations;
  r.converged = converged;
  r.reason = std::move(reason);
  return r;
}

}  // namespace

OptimizerResult nelder_mead(const ScalarFn& f, const Eigen::VectorXd& x0,
                            const OptimizerConfig& cfg, const TraceFn& trace,
                            const CounterFn& counter) {
  cfg.validate();
  const Eigen::Index n = x0.size();
  if (n < 1) throw std::invalid_argument("Nelder-Mead needs at least one parameter");
  Tracker eval(f, counter);

  std::vector<Eigen::VectorXd> sim(static_cast<std::size_t>(n + 1), x0);
  for (Eigen::Index k = 0; k < n; ++k) {
    auto& y = sim[static_cast<std::size_t>(k + 1)];
    y(k) = x0(k) != 0.0 ? (1.0 + cfg.simplex_step) * x0(k) : cfg.simplex_zero_step;
  }
  std::vector<double> fs(sim.size());
  for (std::size_t k = 0; k < sim.size(); ++k) fs[k] = eval(sim[k]);

  std::vector<std::size_t> order(sim.size());
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fs[a] < fs[b]; });
    std::vector<Eigen::VectorXd> s2;
    std::vector<double> f2;
    for (auto k : order) {
      s2.push_back(std::move(sim[k]));
      f2.push_back(fs[k]);
    }
    sim.swap(s2);
    fs.swap(f2);
  };
  sort_simplex();

  const double rho = cfg.reflection, chi = cfg.expansion, psi = cfg.contraction,
               sigma = cfg.shrinkage;
  int it = 0;
  while (true) {
    double fspread = 0, xspread = 0;
    for (std::size_t k = 1; k < sim.size(); ++k) {
      fspread = std::max(fspread, std::abs(fs[k] - fs[0]));
      xspread = std::max(xspread, (sim[k] - sim[0]).cwiseAbs().maxCoeff());
    }
    if (fspread <= cfg.energy_tolerance && xspread <= cfg.parameter_tolerance)
      return finish(eval, 0, it, true, "simplex converged");
    if (eval.evaluations() >= cfg.max_evaluations)
      return finish(eval, 0, it, false, "maximum function evaluations reached");
    if (it >= cfg.max_iterations) return finish(eval, 0, it, false, "maximum iterations reached");
    ++it;

    Eigen::VectorXd xbar = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k + 1 < sim.size(); ++k) xbar += sim[k];
    xbar /= static_cast<double>(n);
    const Eigen::VectorXd& worst = sim.back();

    const Eigen::VectorXd xr = (1 + rho) * xbar - rho * worst;
    const double fr = eval(xr);
    bool shrink = false;
    if (fr < fs[0]) {
      const Eigen::VectorXd xe = (1 + rho * chi) * xbar - rho * chi * worst;
      const double fe = eval(xe);
      if (fe < fr) {
        sim.back() = xe;
        fs.back() = fe;
      } else {
        sim.back() = xr;
        fs.back() = fr;
      }
    } else if (fr < fs[fs.size() - 2]) {
      sim.back() = xr;
      fs.back() = fr;
    } else if (fr < fs.back()) {
      const Eigen::VectorXd xc = (1 + psi * rho) * xbar - psi * rho * worst;
      const double fc = eval(xc);
      if (fc <= fr) {
        sim.back() = xc;
        fs.back() = fc;
      } else {
        shrink = true;
      }
    } else {
      const Eigen::VectorXd xcc = (1 - psi) * xbar + psi * worst;
      const double fcc = eval(xcc);
      if (fcc < fs.back()) {
        sim.back() = xcc;
        fs.back() = fcc;
      } else {
        shrink = true;
      }
    }
    if (shrink)
      for (std::size_t k = 1; k < sim.size(); ++k) {
        sim[k] = sim[0] + sigma * (sim[k] - sim[0]);
        fs[k] = eval(sim[k]);
      }
    sort_simplex();
    if (trace) trace({it, fs[0], 0.0, eval.evaluations(), 0});
  }
}

OptimizerResult lbfgs(const ScalarFn& f, const GradientFn& grad, const Eigen::VectorXd& x0,
                      const OptimizerConfig& cfg, const TraceFn& trace, const CounterFn& counter) {
  cfg.validate();
  if (x0.size() < 1) throw std::invalid_argument("L-BFGS needs at least one parameter");
  Tracker eval(f, counter);
  std::int64_t grads = 0;
  auto gradient = [&](const Eigen::VectorXd& x) {
    ++grads;
    return grad(x);
  };

  Eigen::VectorXd x = x0;
  double fx = eval(x);
  Eigen::VectorXd g = gradient(x);
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;

  for (int it = 0;; ++it) {
    const double gmax = g.cwiseAbs().maxCoeff();
    if (trace) trace({it, fx, g.norm(), eval.evaluations(), grads});
    if (gmax < cfg.gradient_tolerance) return finish(eval, grads, it, true, "gradient below tolerance");
    if (eval.evaluations() >= cfg.max_evaluations)
      return finish(eval, grads, it, false, "maximum function evaluations reached");
    if (it >= cfg.max_iterations) return finish(eval, grads, it, false, "maximum iterations reached");

    // Two-loop recursion.
    Eigen::VectorXd q = g;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      alpha[k] = rho_hist[k] * s_hist[k].dot(q);
      q -= alpha[k] * y_hist[k];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    else gamma = std::min(1.0, 1.0 / g.norm());
    Eigen::VectorXd d = gamma * q;
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double beta = rho_hist[k] * y_hist[k].dot(d);
      d += (alpha[k] - beta) * s_hist[k];
    }
    d = -d;
    double slope = g.dot(d);
    if (!(slope < 0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = -std::min(1.0, 1.0 / g.norm()) * g;
      slope = g.dot(d);
    }

    double step = 1.0;
    Eigen::VectorXd xn;
    double fn = 0;
    bool accepted = false;
    for (int b = 0; b < cfg.max_backtracks; ++b) {
      if (eval.evaluations() >= cfg.max_evaluations) break;
      xn = x + step * d;
      fn = eval(xn);
      if (std::isfinite(fn) && fn <= fx + cfg.armijo * step * slope) {
        accepted = true;
        break;
      }
      step *= cfg.shrink;
    }
    if (!accepted) {
      if (eval.evaluations() >= cfg.max_evaluations)
        return finish(eval, grads, it, false, "maximum function evaluations reached");
      return finish(eval, grads, it, false, "line search failed");
    }

    const Eigen::VectorXd s = xn - x;
    const double df = fx - fn;
    x = xn;
    fx = fn;
    const Eigen::VectorXd gn = gradient(x);
    const Eigen::VectorXd y = gn - g;
    g = gn;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > cfg.history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    if (std::abs(df) < cfg.energy_tolerance && s.cwiseAbs().maxCoeff() < cfg.parameter_tolerance) {
      if (trace) trace({it + 1, fx, g.norm(), eval.evaluations(), grads});
      return finish(eval, grads, it + 1, true, "energy and parameter changes below tolerance");
    }
  }
}

}  // namespace uccvqe::vqe
