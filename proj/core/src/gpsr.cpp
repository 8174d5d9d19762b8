#include "ghostcs/gpsr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ghostcs {

namespace {

constexpr double kAlphaMin = 1e-30;
constexpr double kAlphaMax = 1e30;
constexpr double kDivergenceFactor = 1e3;
constexpr std::size_t kMaxBacktracks = 100;

double half_sq_residual(std::span<const double> ax, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double r = ax[i] - b[i];
    sum += r * r;
  }
  return 0.5 * sum;
}

// Split-variable state z = [u; v] together with A (u - v).
struct SplitState {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> ax;
  double l1 = 0.0;  // sum(u + v)
  double objective = 0.0;
};

void refresh(const LinearOperator& op, std::span<const double> b, double tau,
             SplitState& s, std::vector<double>& theta) {
  s.l1 = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    theta[i] = s.u[i] - s.v[i];
    s.l1 += s.u[i] + s.v[i];
  }
  op.apply(theta, s.ax);
  s.objective = half_sq_residual(s.ax, b) + tau * s.l1;
}

// Least squares on the fixed support of theta by CGLS, starting at theta.
std::size_t debias_on_support(const LinearOperator& op, std::span<const double> b,
                              std::vector<double>& theta, std::size_t max_iters,
                              double tol) {
  const std::size_t n = theta.size();
  std::vector<char> support(n);
  for (std::size_t i = 0; i < n; ++i) support[i] = theta[i] != 0.0;

  std::vector<double> r(b.size()), q(b.size()), s(n), p(n);
  op.apply(theta, q);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - q[i];
  auto masked_adjoint = [&](std::span<const double> res, std::vector<double>& out) {
    op.apply_adjoint(res, out);
    for (std::size_t i = 0; i < n; ++i) {
      if (!support[i]) out[i] = 0.0;
    }
  };
  masked_adjoint(r, s);
  p = s;
  double gamma = dot(s, s);
  const double gamma0 = gamma;
  std::size_t it = 0;
  for (; it < max_iters && gamma > tol * tol * gamma0 && gamma > 0.0; ++it) {
    op.apply(p, q);
    const double qq = dot(q, q);
    if (!(qq > 0.0)) break;
    const double alpha = gamma / qq;
    for (std::size_t i = 0; i < n; ++i) theta[i] += alpha * p[i];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= alpha * q[i];
    masked_adjoint(r, s);
    const double gamma_next = dot(s, s);
    const double ratio = gamma_next / gamma;
    gamma = gamma_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = s[i] + ratio * p[i];
  }
  return it;
}

}  // namespace

void SparseSolverConfig::validate() const {
  if (tau && !(*tau > 0.0 && std::isfinite(*tau))) {
    throw ParameterError("solver tau must be a positive finite value");
  }
  if (max_iters == 0) throw ParameterError("solver max_iters must be positive");
  if (!(tol > 0.0)) throw ParameterError("solver tol must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("solver beta must lie in (0, 1)");
  if (!(mu > 0.0 && mu < 1.0)) throw ParameterError("solver mu must lie in (0, 1)");
  if (debias && debias_cg_iters == 0) {
    throw ParameterError("debias_cg_iters must be positive when debiasing");
  }
}

double default_tau(const LinearOperator& op, std::span<const double> b) {
  if (b.size() != op.rows()) throw ParameterError("default_tau: dimension mismatch");
  return 0.1 * norm_inf(op.apply_adjoint(b));
}

double lasso_objective(const LinearOperator& op, std::span<const double> b,
                       std::span<const double> theta, double tau) {
  const auto ax = op.apply(theta);
  double l1 = 0.0;
  for (double t : theta) l1 += std::abs(t);
  return half_sq_residual(ax, b) + tau * l1;
}

std::vector<double> soft_threshold(std::span<const double> x, double tau) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double magnitude = std::max(std::abs(x[i]) - tau, 0.0);
    out[i] = std::copysign(magnitude, x[i]);
    if (magnitude == 0.0) out[i] = 0.0;
  }
  return out;
}

KktResidual kkt_residual(const LinearOperator& op, std::span<const double> b,
                         std::span<const double> theta, double tau) {
  auto residual = op.apply(theta);
  for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= b[i];
  const auto grad = op.apply_adjoint(residual);
  KktResidual out;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] == 0.0) {
      out.off_support = std::max(out.off_support, std::abs(grad[i]) / tau - 1.0);
    } else {
      const double sign = theta[i] > 0.0 ? 1.0 : -1.0;
      out.on_support = std::max(out.on_support, std::abs(grad[i] + tau * sign) / tau);
    }
  }
  return out;
}

std::size_t count_significant(std::span<const double> theta) {
  const double threshold = 1e-8 * norm_inf(theta);
  return static_cast<std::size_t>(std::count_if(
      theta.begin(), theta.end(), [&](double t) { return std::abs(t) > threshold; }));
}

SparseSolution gpsr_solve(const LinearOperator& op, std::span<const double> b,
                          const SparseSolverConfig& config) {
  config.validate();
  if (b.size() != op.rows()) throw ParameterError("gpsr_solve: b has the wrong length");
  if (!all_finite(b)) throw DataError("gpsr_solve: b contains non-finite values");

  const double tau = config.tau ? *config.tau : default_tau(op, b);
  const std::size_t n = op.cols();
  const std::size_t m = op.rows();

  SparseSolution solution;
  SolveReport& report = solution.report;
  report.tau = tau;
  std::vector<double>& theta = solution.coefficients;
  theta.assign(n, 0.0);

  SplitState state{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                   std::vector<double>(m, 0.0), 0.0, 0.0};
  state.objective = half_sq_residual(state.ax, b);
  const double initial_objective = state.objective;
  report.objective_trace.push_back(state.objective);

  if (!(tau > 0.0)) {
    // b = 0 (or A^T b = 0 with default tau): theta = 0 is optimal.
    report.converged = true;
    report.final_objective = state.objective;
    return solution;
  }

  std::vector<double> residual(m), grad(n), grad_u(n), grad_v(n), proj_u(n), proj_v(n),
      direction(n), a_direction(m);
  SplitState trial{std::vector<double>(n), std::vector<double>(n), std::vector<double>(m),
                   0.0, 0.0};
  std::vector<double> trial_theta(n);
  double bb_alpha = 0.0;

  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    for (std::size_t i = 0; i < m; ++i) residual[i] = state.ax[i] - b[i];
    op.apply_adjoint(residual, grad);
    for (std::size_t i = 0; i < n; ++i) {
      grad_u[i] = grad[i] + tau;
      grad_v[i] = -grad[i] + tau;
      proj_u[i] = (state.u[i] > 0.0 || grad_u[i] < 0.0) ? grad_u[i] : 0.0;
      proj_v[i] = (state.v[i] > 0.0 || grad_v[i] < 0.0) ? grad_v[i] : 0.0;
    }
    const double proj_sq = dot(proj_u, proj_u) + dot(proj_v, proj_v);
    if (proj_sq == 0.0) {
      report.converged = true;  // stationary point
      break;
    }

    double alpha = 0.0;
    if (config.barzilai_borwein && iter > 0) {
      alpha = bb_alpha;
    } else {
      for (std::size_t i = 0; i < n; ++i) direction[i] = proj_u[i] - proj_v[i];
      op.apply(direction, a_direction);
      const double curvature = dot(a_direction, a_direction);
      alpha = curvature > 0.0 ? proj_sq / curvature : kAlphaMax;
    }
    alpha = std::clamp(alpha, kAlphaMin, kAlphaMax);

    const double previous = state.objective;
    if (!config.barzilai_borwein) {
      bool accepted = false;
      for (std::size_t bt = 0; bt < kMaxBacktracks; ++bt) {
        double decrease = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          trial.u[i] = std::max(state.u[i] - alpha * grad_u[i], 0.0);
          trial.v[i] = std::max(state.v[i] - alpha * grad_v[i], 0.0);
          decrease += grad_u[i] * (state.u[i] - trial.u[i]) +
                      grad_v[i] * (state.v[i] - trial.v[i]);
        }
        refresh(op, b, tau, trial, trial_theta);
        if (trial.objective <= state.objective - config.mu * decrease) {
          accepted = true;
          break;
        }
        alpha *= config.beta;
      }
      if (!accepted) {
        // Step underflow: no representable decrease remains.
        report.converged = true;
        break;
      }
      std::swap(state, trial);
      std::swap(theta, trial_theta);
    } else {
      // Monotone BB: exact minimization along delta = P(z - alpha g) - z.
      std::vector<double>& delta_u = proj_u;
      std::vector<double>& delta_v = proj_v;
      double grad_dot_delta = 0.0;
      double delta_sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        delta_u[i] = std::max(state.u[i] - alpha * grad_u[i], 0.0) - state.u[i];
        delta_v[i] = std::max(state.v[i] - alpha * grad_v[i], 0.0) - state.v[i];
        grad_dot_delta += grad_u[i] * delta_u[i] + grad_v[i] * delta_v[i];
        delta_sq += delta_u[i] * delta_u[i] + delta_v[i] * delta_v[i];
        direction[i] = delta_u[i] - delta_v[i];
      }
      op.apply(direction, a_direction);
      const double curvature = dot(a_direction, a_direction);
      const double lambda =
          curvature > 0.0 ? std::clamp(-grad_dot_delta / curvature, 0.0, 1.0) : 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        state.u[i] += lambda * delta_u[i];
        state.v[i] += lambda * delta_v[i];
      }
      refresh(op, b, tau, state, theta);
      bb_alpha = curvature > 0.0 ? delta_sq / curvature : kAlphaMax;
    }

    report.iterations = iter + 1;
    report.objective_trace.push_back(state.objective);
    if (!std::isfinite(state.objective) ||
        state.objective > kDivergenceFactor * initial_objective) {
      throw SolverError("gpsr_solve: objective diverged at iteration " +
                        std::to_string(iter + 1));
    }
    if (std::abs(state.objective - previous) <= config.tol * previous) {
      report.converged = true;
      break;
    }
  }

  for (std::size_t i = 0; i < n; ++i) theta[i] = state.u[i] - state.v[i];
  if (config.debias && std::any_of(theta.begin(), theta.end(), [](double t) { return t != 0.0; })) {
    report.debias_iterations =
        debias_on_support(op, b, theta, config.debias_cg_iters, config.debias_cg_tol);
    report.debiased = true;
  }
  report.final_objective = report.debiased ? lasso_objective(op, b, theta, tau)
                                           : state.objective;
  report.nonzeros = count_significant(theta);
  return solution;
}

}  // namespace ghostcs
