#pragma once

#include <cstddef>

#include "ghostcs/gpsr.hpp"
#include "ghostcs/grid.hpp"
#include "ghostcs/measurement.hpp"

namespace ghostcs {

/// Correlation ghost image (1/M) sum_r (B_r - <B>) I_r. Signed, unnormalized.
Image gi_reconstruct(const MeasurementEnsemble& ensemble);

struct LsResult {
  Image image;
  bool converged = false;
  std::size_t iterations = 0;
  double residual_norm = 0.0;  ///< ||forward(x) - B||
};

/// Tikhonov weight guarding rank deficiency in ls_reconstruct.
inline constexpr double kLsTikhonov = 1e-10;

/// Minimum-norm least-squares image for forward(x) = B by CGLS from x = 0
/// on (A^T A + eps I) x = A^T B. Stops when the normal-equation residual
/// falls below cg_tol * ||A^T B||; otherwise returns the last iterate with
/// converged = false.
LsResult ls_reconstruct(const MeasurementEnsemble& ensemble, std::size_t cg_iters,
                        double cg_tol);

struct CsResult {
  Image image;
  SolveReport report;
  double dc_coefficient = 0.0;  ///< refitted DC term when centered, else 0
};

/// Compressed-sensing image: GPSR on DCT coefficients with A_psi =
/// forward o idct2, returning idct2(theta). With center = true (default)
/// the mean pattern and mean bucket are subtracted before solving; the DC
/// coefficient, which that model cannot see, is then fitted alone against
/// the raw buckets and left unpenalized. Pass center = false for the raw
/// model. A zero (centered) bucket vector skips the solver.
CsResult cs_reconstruct(const MeasurementEnsemble& ensemble,
                        const SparseSolverConfig& config, bool center = true);

}  // namespace ghostcs
