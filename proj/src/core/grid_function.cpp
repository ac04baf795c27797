// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/grid_function.hpp"

#include <cmath>
#include <stdexcept>

#include "core/torus.hpp"

namespace rxm {

double GridFunction::interpolate(double x) const {
    const int n = n_cells();
    const double h = dx();
    double y = wrap(x) + 1.0 - 0.5 * h;  // offset so cell centers land on the lattice
    y /= h;
    double fl = std::floor(y);
    int i = static_cast<int>(fl);
    const double frac = y - fl;
    i = ((i % n) + n) % n;
    const int ip = (i + 1) % n;
    return (1.0 - frac) * values[i] + frac * values[ip];
}

GridFunction GridFunction::sample(const std::function<double(double)>& f, int n_cells) {
    if (n_cells < 1) throw std::invalid_argument("GridFunction::sample: need at least one cell");
    Eigen::VectorXd v(n_cells);
    const double h = 2.0 / n_cells;
    for (int i = 0; i < n_cells; ++i) v[i] = f(-1.0 + (i + 0.5) * h);
    return GridFunction(std::move(v));
}

ErrorNorms error_norms(const GridFunction& f, const GridFunction& g) {
    const GridFunction* fine = &f;
    const GridFunction* coarse = &g;
    if (fine->n_cells() < coarse->n_cells()) std::swap(fine, coarse);

    const int n = fine->n_cells();
    const double h = fine->dx();
    ErrorNorms norms;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = fine->center(i);
        const double d = std::abs(fine->values[i] -
                                  (coarse->n_cells() == n ? coarse->values[i]
                                                          : coarse->interpolate(x)));
        norms.l1 += d * h;
        sum_sq += d * d * h;
        norms.linf = std::max(norms.linf, d);
    }
    norms.l2 = std::sqrt(sum_sq);
    return norms;
}

}  // namespace rxm
