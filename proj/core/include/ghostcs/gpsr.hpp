#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ghostcs/sensing.hpp"

namespace ghostcs {

/// Settings for the L1-regularized least-squares solver
///   minimize_theta  0.5 * ||A theta - b||^2 + tau * ||theta||_1.
struct SparseSolverConfig {
  std::optional<double> tau;     ///< L1 weight; unset means default_tau(A, b)
  std::size_t max_iters = 2000;
  double tol = 1e-5;             ///< stop when |F_k - F_{k-1}| <= tol * F_{k-1}
  double beta = 0.5;             ///< backtracking shrink factor
  double mu = 0.1;               ///< sufficient-decrease constant
  bool debias = false;
  std::size_t debias_cg_iters = 200;
  double debias_cg_tol = 1e-6;
  bool barzilai_borwein = false;  ///< BB step selection instead of GPSR-Basic

  void validate() const;
};

struct SolveReport {
  std::size_t iterations = 0;
  double tau = 0.0;
  double final_objective = 0.0;
  std::vector<double> objective_trace;  ///< F(z_0), F(z_1), ...
  bool converged = false;
  std::size_t nonzeros = 0;  ///< #{|theta_i| > 1e-8 max|theta|}
  bool debiased = false;
  std::size_t debias_iterations = 0;
};

struct SparseSolution {
  std::vector<double> coefficients;
  SolveReport report;
};

/// Gradient projection for sparse reconstruction on the split variables
/// theta = u - v, u, v >= 0, starting from theta = 0. GPSR-Basic takes the
/// exact line minimizer along the projected gradient as its first trial
/// step and backtracks until the Armijo condition along the projection arc
/// holds, so the objective trace is non-increasing. Throws SolverError if
/// the objective exceeds 1e3 times its initial value.
SparseSolution gpsr_solve(const LinearOperator& op, std::span<const double> b,
                          const SparseSolverConfig& config);

/// 0.1 * ||A^T b||_inf. Any tau >= ||A^T b||_inf yields theta = 0.
double default_tau(const LinearOperator& op, std::span<const double> b);

double lasso_objective(const LinearOperator& op, std::span<const double> b,
                       std::span<const double> theta, double tau);

/// sign(x) * max(|x| - tau, 0), the lasso solution for an orthonormal operator.
std::vector<double> soft_threshold(std::span<const double> x, double tau);

/// Optimality residuals of theta, both relative to tau: the largest excess
/// of |grad_i| over tau on zero entries, and the largest
/// |grad_i + tau sign(theta_i)| on nonzero entries, where grad = A^T(A theta - b).
struct KktResidual {
  double off_support = 0.0;
  double on_support = 0.0;
};
KktResidual kkt_residual(const LinearOperator& op, std::span<const double> b,
                         std::span<const double> theta, double tau);

std::size_t count_significant(std::span<const double> theta);

}  // namespace ghostcs
