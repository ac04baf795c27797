// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace rxm {

/// Composite Gauss-Legendre rule description. The rule is exact for
/// polynomials of degree <= 2*nodes_per_interval - 1 on each subinterval.
struct QuadratureRule {
    int nodes_per_interval = 5;
    /// Uniform partition used by integrate_periodic when no breakpoints are given.
    int fallback_cells = 16;
};

namespace gauss_legendre {
/// Nodes on [-1, 1] for an n-point rule, n in [1, 32].
const std::vector<double>& nodes(int n);
/// Matching weights (sum to 2).
const std::vector<double>& weights(int n);
}  // namespace gauss_legendre

/// Gauss-Legendre approximation of the integral of g over [a, b].
double integrate(const std::function<double(double)>& g, double a, double b, int nodes);

/// Composite integral of g over one period of the torus. Breakpoints are
/// wrapped, sorted and de-duplicated; the gap wrapping around +-1 is included.
/// An empty breakpoint set falls back to a uniform partition. g is always
/// evaluated at wrapped coordinates, so any 2-periodic map is acceptable.
double integrate_periodic(const std::function<double(double)>& g,
                          std::vector<double> breakpoints,
                          const QuadratureRule& rule = {});

}  // namespace rxm
