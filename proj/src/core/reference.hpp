// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "core/flux.hpp"
#include "core/grid_function.hpp"

namespace rxm {

/// u0 advected with constant speed: u(t, x) = u0(x - lambda t), sampled.
GridFunction exact_linear_advection(const InitialCondition& u0, double lambda, double t,
                                    int n_cells);

/// Transport with quadratic-plus-linear source,
///   dw/dt + lambda dw/dx = gamma w^2 + delta w,
/// for initial data supported strictly inside the torus.
struct RiccatiParams {
    double gamma = 0.0;
    double delta = 0.0;
    double lambda = 1.0;
    InitialCondition w0;
    double support_lo = -0.5;
    double support_hi = 0.5;
};

/// Closed-form solution value; zero outside the transported support.
/// Throws SolverError when the denominator collapses (finite-time blow-up).
double exact_riccati_value(const RiccatiParams& p, double t, double x);
GridFunction exact_riccati(const RiccatiParams& p, double t, int n_cells);

/// Entropy solution of the Burgers Riemann datum u0 = a (chi_[0,1/2] - 1):
/// a rarefaction fan opens at x = 0 (states -a -> 0) and a shock leaves
/// x = 1/2 with Rankine-Hugoniot speed (f(0) - f(-a)) / (0 - (-a)) = -a/2.
/// Valid until the shock reaches the fan at t = 1/a.
double exact_burgers_riemann_value(double a, double t, double x);
GridFunction exact_burgers_riemann(double a, double t, int n_cells);
double burgers_riemann_shock_position(double a, double t);
double burgers_riemann_horizon(double a);

/// Finite-volume solver for the relaxation system itself: upwind transport of
/// the diagonal waves at speeds +-lambda (minmod-limited second order
/// optional) followed by the exact implicit relaxation of the source, which
/// removes any epsilon-scale step restriction.
struct FvConfig {
    double lambda = 1.0;
    double epsilon = 1e-3;
    int n_cells = 320;
    int order = 2;            // 1 = upwind, 2 = minmod MUSCL with SSP-RK2
    double cfl = 0.45;        // dt = cfl * dx / lambda
    double dt_override = 0.0; // used instead when positive; must satisfy dt <= dx/(2 lambda)
    int store_stride = 1;
};

struct FvResult {
    std::vector<double> times;
    std::vector<GridFunction> frames;  // u at the stored times

    const GridFunction& final_frame() const { return frames.back(); }
};

FvResult fv_relaxation_solve(const InitialCondition& u0, const FluxDescriptor& flux,
                             const FvConfig& cfg, double T);

/// Midpoint of the steepest cell-to-cell drop among interfaces whose
/// windowed jump (running max on the left minus running min on the right)
/// exceeds the threshold; discrete shocks spread over several cells, so the
/// gate uses the windowed jump rather than the single-cell drop. Throws
/// SolverError when no jump qualifies.
double shock_location(const GridFunction& g, double jump_threshold);

/// Windowed jump size at the located shock.
double jump_magnitude(const GridFunction& g, double jump_threshold);

/// Sub-cell shock position: the drop-weighted centroid of the descending
/// interfaces around the located shock. Robust for viscous or oscillatory
/// profiles whose steepest single cell jitters inside the layer.
double shock_location_centroid(const GridFunction& g, double jump_threshold);

/// Least-squares slope of the (periodically unwrapped) shock position over
/// the given frames.
double shock_speed_estimate(const std::vector<double>& times,
                            const std::vector<GridFunction>& frames, double jump_threshold);

}  // namespace rxm
