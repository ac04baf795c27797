// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

#include "core/basis.hpp"
#include "core/circulant.hpp"
#include "core/flux.hpp"
#include "core/grid_function.hpp"
#include "core/rom.hpp"

namespace rxm {

/// Quadratic-plus-linear source g(w) = gamma * w^2 + delta * w.
struct SourceTerm {
    double gamma = 0.0;
    double delta = 0.0;
    double operator()(double w) const { return gamma * w * w + delta * w; }
};

struct ScalarTrajectory {
    int stride = 1;
    std::vector<double> times;
    Eigen::MatrixXd coefficients;  // N x S, one column per stored time
};

/// Solver for linear transport with a nonlinear source,
///   dw/dt + lambda dw/dx = g(w),
/// discretized with basis functions that co-move with the transport:
/// w(t,x) = sum_j alpha_j(t) phi_j(x - lambda t). In this frame the transport
/// is exact and the coefficients obey the autonomous system
///   M(0) dalpha/dt = G(alpha),   G_j = <phi_j, g(sum_k alpha_k phi_k)>.
/// The system is not stiff; steps use classical RK4.
class ComovingSourceSolver {
public:
    ComovingSourceSolver(BasisFamily family, double lambda, SourceTerm source,
                         QuadratureRule quad = {});

    const BasisFamily& family() const { return family_; }
    double lambda() const { return lambda_; }

    /// M(0) alpha = <phi_k, w0>.
    Eigen::VectorXd project_initial(const InitialCondition& w0) const;

    Eigen::VectorXd rhs(const Eigen::VectorXd& alpha) const;
    Eigen::VectorXd step_rk4(const Eigen::VectorXd& alpha, double dt) const;

    ScalarTrajectory integrate(const InitialCondition& w0, double T, double dt,
                               int stride = 1) const;

    /// Reduced dynamics by lift-step-project with a single POD family.
    ScalarTrajectory integrate_reduced(const InitialCondition& w0, double T, double dt,
                                       const ReducedBasis& basis, int stride = 1) const;

    double reconstruct(const Eigen::VectorXd& alpha, double t, double x) const;
    GridFunction sample(const Eigen::VectorXd& alpha, double t, int n_cells) const;

private:
    Eigen::VectorXd source_projection(const Eigen::VectorXd& alpha) const;

    BasisFamily family_;
    double lambda_;
    SourceTerm source_;
    QuadratureRule quad_;
    CirculantSolver m0_;
};

}  // namespace rxm
