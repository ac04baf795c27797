// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "core/quadrature.hpp"

namespace rxm {

enum class BasisShape { hat, indicator };

/// Family of N translated compactly supported functions phi_j on the torus,
/// phi_j(x) = phi_1(x - (j-1)*dx) with dx = 2/N and 1-based indices.
///
/// hat:       continuous, supported on [(j-1)dx, (j+1)dx], piecewise linear
///            with peak value slope_scale*dx at the shared cell boundary j*dx.
/// indicator: characteristic function of the cell [(j-1)dx, j*dx).
class BasisFamily {
public:
    explicit BasisFamily(int n, BasisShape shape = BasisShape::hat,
                         double slope_scale = 1.0);

    int size() const { return n_; }
    double cell_width() const { return dx_; }
    BasisShape shape() const { return shape_; }
    double slope_scale() const { return scale_; }

    /// phi_j evaluated at the wrapped coordinate; zero outside the support.
    double eval(int j, double x) const;

    /// phi_j(x - shift).
    double eval_shifted(int j, double x, double shift) const;

    /// Sum_j coeffs_j * phi_j(x - shift). O(1): at most two terms are nonzero.
    double expand(const Eigen::VectorXd& coeffs, double shift, double x) const;

    /// Integral of any single phi_j over the torus.
    double integral_per_function() const;

    /// The knot lattice {-1 + i*dx}, shifted by `shift`, wrapped.
    std::vector<double> knots(double shift = 0.0) const;

    /// Composite quadrature over the torus with breakpoints at this family's
    /// knots joined with extra breakpoints supplied by the caller.
    double integrate(const std::function<double(double)>& g,
                     const std::vector<double>& extra_breakpoints = {},
                     const QuadratureRule& rule = {}) const;

private:
    // Position within [0, 2) relative to the support start of phi_j.
    double local_coord(int j, double x, double shift) const;

    int n_;
    double dx_;
    BasisShape shape_;
    double scale_;
};

}  // namespace rxm
