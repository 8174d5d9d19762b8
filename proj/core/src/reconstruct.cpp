#include "ghostcs/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "ghostcs/sensing.hpp"
#include "ghostcs/transforms.hpp"

namespace ghostcs {

Image gi_reconstruct(const MeasurementEnsemble& ensemble) {
  ensemble.validate();
  const std::size_t count = ensemble.size();
  double mean = 0.0;
  for (double b : ensemble.buckets) mean += b;
  mean /= static_cast<double>(count);
  std::vector<double> weights(count);
  for (std::size_t r = 0; r < count; ++r) {
    weights[r] = (ensemble.buckets[r] - mean) / static_cast<double>(count);
  }
  return SensingOperator(ensemble.patterns).adjoint(weights);
}

LsResult ls_reconstruct(const MeasurementEnsemble& ensemble, std::size_t cg_iters,
                        double cg_tol) {
  ensemble.validate();
  const SensingOperator op(ensemble.patterns);
  const std::size_t n = op.cols();
  const std::size_t m = op.rows();
  const auto& b = ensemble.buckets;

  LsResult result{Image(ensemble.patterns.rows(), ensemble.patterns.cols()), false, 0, 0.0};
  auto x = result.image.values();
  std::vector<double> r(b.begin(), b.end()), q(m), s(n), p(n);

  op.apply_adjoint(r, s);
  const double s0 = norm2(s);
  if (s0 == 0.0) {
    result.converged = true;
    result.residual_norm = norm2(b);
    return result;
  }
  p = s;
  double gamma = s0 * s0;
  const double stop = cg_tol * s0;
  std::size_t it = 0;
  while (it < cg_iters) {
    op.apply(p, q);
    const double denom = dot(q, q) + kLsTikhonov * dot(p, p);
    if (!(denom > 0.0)) break;
    const double alpha = gamma / denom;
    for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (std::size_t i = 0; i < m; ++i) r[i] -= alpha * q[i];
    op.apply_adjoint(r, s);
    for (std::size_t i = 0; i < n; ++i) s[i] -= kLsTikhonov * x[i];
    ++it;
    const double gamma_next = dot(s, s);
    if (std::sqrt(gamma_next) <= stop) {
      result.converged = true;
      break;
    }
    const double ratio = gamma_next / gamma;
    gamma = gamma_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = s[i] + ratio * p[i];
  }
  result.iterations = it;
  // Report the true residual, not the recurrence.
  op.apply(x, q);
  for (std::size_t i = 0; i < m; ++i) q[i] -= b[i];
  result.residual_norm = norm2(q);
  return result;
}

CsResult cs_reconstruct(const MeasurementEnsemble& ensemble,
                        const SparseSolverConfig& config, bool center) {
  ensemble.validate();
  config.validate();
  const std::size_t rows = ensemble.patterns.rows();
  const std::size_t cols = ensemble.patterns.cols();

  std::vector<double> b = ensemble.buckets;
  if (center) {
    double mean = 0.0;
    for (double v : b) mean += v;
    mean /= static_cast<double>(b.size());
    for (double& v : b) v -= mean;
  }

  CsResult result{Image(rows, cols), SolveReport{}, 0.0};
  if (std::all_of(b.begin(), b.end(), [](double v) { return v == 0.0; })) {
    result.report.converged = true;
    result.report.objective_trace.push_back(0.0);
  } else {
    const SensingOperator sensing(ensemble.patterns, center);
    const DctSensingOperator op(sensing, rows, cols);
    const SparseSolution solution = gpsr_solve(op, b, config);
    dct2_inverse(solution.coefficients, result.image.values(), rows, cols);
    result.report = solution.report;
  }
  if (!center) return result;

  // Centering removes the image mean from the model; refit the DC
  // coefficient alone against the raw buckets.
  const SensingOperator raw(ensemble.patterns, false);
  const double dc_basis = 1.0 / std::sqrt(static_cast<double>(rows * cols));
  const std::vector<double> column =
      raw.forward(Image(rows, cols, std::vector<double>(rows * cols, dc_basis)));
  const std::vector<double> predicted = raw.forward(result.image);
  const double denom = dot(column, column);
  if (denom == 0.0) return result;
  double num = 0.0;
  for (std::size_t r = 0; r < column.size(); ++r) {
    num += column[r] * (ensemble.buckets[r] - predicted[r]);
  }
  result.dc_coefficient = num / denom;
  for (double& v : result.image) v += result.dc_coefficient * dc_basis;
  return result;
}

}  // namespace ghostcs
