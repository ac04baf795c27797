// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <functional>

namespace rxm {

/// Uniform cell-center samples of a scalar field on the torus.
struct GridFunction {
    Eigen::VectorXd values;

    GridFunction() = default;
    explicit GridFunction(Eigen::VectorXd v) : values(std::move(v)) {}

    int n_cells() const { return static_cast<int>(values.size()); }
    double dx() const { return 2.0 / n_cells(); }
    double center(int i) const { return -1.0 + (i + 0.5) * dx(); }

    /// Periodic linear interpolation between cell centers.
    double interpolate(double x) const;

    static GridFunction sample(const std::function<double(double)>& f, int n_cells);
};

struct ErrorNorms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
};

/// Discrete norms of f - g weighted by cell width. When the sizes differ the
/// coarser function is resampled onto the finer grid by linear interpolation.
ErrorNorms error_norms(const GridFunction& f, const GridFunction& g);

}  // namespace rxm
