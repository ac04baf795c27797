// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/basis.hpp"

#include <cmath>
#include <stdexcept>

#include "core/torus.hpp"

namespace rxm {

BasisFamily::BasisFamily(int n, BasisShape shape, double slope_scale)
    : n_(n), dx_(kDomainLength / n), shape_(shape), scale_(slope_scale) {
    if (n < 2) throw std::invalid_argument("BasisFamily: need at least 2 functions");
    if (!(slope_scale > 0.0)) throw std::invalid_argument("BasisFamily: slope_scale must be positive");
}

double BasisFamily::local_coord(int j, double x, double shift) const {
    if (j < 1 || j > n_) throw std::out_of_range("BasisFamily: index out of range");
    double y = wrap(x - shift - (j - 1) * dx_);
    if (y < 0.0) y += kDomainLength;
    return y;  // in [0, 2)
}

double BasisFamily::eval(int j, double x) const { return eval_shifted(j, x, 0.0); }

double BasisFamily::eval_shifted(int j, double x, double shift) const {
    const double y = local_coord(j, x, shift);
    if (shape_ == BasisShape::indicator) {
        return y < dx_ ? 1.0 : 0.0;
    }
    if (y < dx_) return scale_ * y;
    if (y < 2.0 * dx_) return scale_ * (2.0 * dx_ - y);
    return 0.0;
}

double BasisFamily::expand(const Eigen::VectorXd& coeffs, double shift, double x) const {
    if (coeffs.size() != n_) {
        throw std::invalid_argument("BasisFamily::expand: coefficient length mismatch");
    }
    double y = wrap(x - shift);
    if (y < 0.0) y += kDomainLength;
    int m = static_cast<int>(std::floor(y / dx_));
    if (m >= n_) m = n_ - 1;  // guard y == 2 after rounding
    if (shape_ == BasisShape::indicator) {
        return coeffs[m];
    }
    // Cell m hosts the rising half of phi_{m+1} and the falling half of phi_m.
    const double r = y - m * dx_;
    const int rise = m;                       // 0-based index of phi_{m+1}
    const int fall = (m + n_ - 1) % n_;       // 0-based index of phi_m
    return scale_ * (coeffs[rise] * r + coeffs[fall] * (dx_ - r));
}

double BasisFamily::integral_per_function() const {
    return shape_ == BasisShape::indicator ? dx_ : scale_ * dx_ * dx_;
}

std::vector<double> BasisFamily::knots(double shift) const {
    // support boundaries sit at integer multiples of dx from 0
    std::vector<double> k(n_);
    for (int i = 0; i < n_; ++i) k[i] = wrap(i * dx_ + shift);
    return k;
}

double BasisFamily::integrate(const std::function<double(double)>& g,
                              const std::vector<double>& extra_breakpoints,
                              const QuadratureRule& rule) const {
    std::vector<double> pts = knots();
    pts.insert(pts.end(), extra_breakpoints.begin(), extra_breakpoints.end());
    return integrate_periodic(g, std::move(pts), rule);
}

}  // namespace rxm
