// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "core/torus.hpp"

namespace rxm {
namespace gauss_legendre {
namespace {

struct Table {
    std::vector<double> x, w;
};

// Newton iteration on the Legendre recurrence; roots are symmetric about 0.
Table build(int n) {
    Table t;
    t.x.resize(n);
    t.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        t.x[i - 1] = -z;
        t.x[n - i] = z;
        t.w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
        t.w[n - i] = t.w[i - 1];
    }
    if (n == 1) {
        t.x = {0.0};
        t.w = {2.0};
    }
    return t;
}

const Table& table(int n) {
    if (n < 1 || n > 32) {
        throw std::invalid_argument("gauss_legendre: node count must be in [1, 32]");
    }
    static std::map<int, Table> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build(n)).first;
    return it->second;
}

}  // namespace

const std::vector<double>& nodes(int n) { return table(n).x; }
const std::vector<double>& weights(int n) { return table(n).w; }

}  // namespace gauss_legendre

double integrate(const std::function<double(double)>& g, double a, double b, int n) {
    if (!(b > a)) return 0.0;
    const auto& x = gauss_legendre::nodes(n);
    const auto& w = gauss_legendre::weights(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        acc += w[k] * g(mid + half * x[k]);
    }
    return half * acc;
}

double integrate_periodic(const std::function<double(double)>& g,
                          std::vector<double> breakpoints,
                          const QuadratureRule& rule) {
    auto wrapped = [&g](double x) { return g(wrap(x)); };

    std::vector<double> pts;
    pts.reserve(breakpoints.size());
    for (double b : breakpoints) pts.push_back(wrap(b));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-13; }),
              pts.end());
    if (pts.size() >= 2 && (pts.back() - pts.front()) > kDomainLength - 1e-13) {
        pts.pop_back();  // first and last coincide modulo the period
    }

    if (pts.empty()) {
        const int cells = std::max(1, rule.fallback_cells);
        const double h = kDomainLength / cells;
        for (int i = 0; i <= cells; ++i) pts.push_back(-1.0 + i * h);
        pts.pop_back();
    }

    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        acc += integrate(wrapped, pts[i], pts[i + 1], rule.nodes_per_interval);
    }
    acc += integrate(wrapped, pts.back(), pts.front() + kDomainLength, rule.nodes_per_interval);
    return acc;
}

}  // namespace rxm
