// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

namespace rxm {

/// Length of the periodic domain [-1, 1).
inline constexpr double kDomainLength = 2.0;

/// Canonical representative of x on the torus [-1, 1); wrap(x + 2k) == wrap(x).
inline double wrap(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("wrap: coordinate must be finite");
    }
    double y = x - kDomainLength * std::floor((x + 1.0) / kDomainLength);
    // floor rounding can land exactly on the upper boundary
    if (y >= 1.0) y -= kDomainLength;
    if (y < -1.0) y += kDomainLength;
    return y;
}

/// Signed shortest displacement from a to b on the torus, in [-1, 1).
inline double periodic_distance(double a, double b) { return wrap(b - a); }

}  // namespace rxm
