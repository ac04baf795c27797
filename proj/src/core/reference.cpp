// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/reference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/torus.hpp"

namespace rxm {

GridFunction exact_linear_advection(const InitialCondition& u0, double lambda, double t,
                                    int n_cells) {
    return GridFunction::sample([&](double x) { return u0.eval(wrap(x - lambda * t)); }, n_cells);
}

double exact_riccati_value(const RiccatiParams& p, double t, double x) {
    const double y = wrap(x - p.lambda * t);
    if (y <= p.support_lo || y >= p.support_hi) return 0.0;
    const double w0 = p.w0.eval(y);
    if (w0 == 0.0) return 0.0;
    double denom;
    if (p.delta == 0.0) {
        denom = 1.0 / w0 - p.gamma * t;
    } else {
        denom = std::exp(-p.delta * t) / w0 - (p.gamma / p.delta) * (1.0 - std::exp(-p.delta * t));
    }
    // the denominator starts at 1/w0 and blow-up is its zero crossing; a sign
    // flip means t is already past the blow-up time for this x
    if (std::abs(denom) < 1e-12 || denom * w0 < 0.0) {
        std::ostringstream msg;
        msg << "exact_riccati: solution blows up at x=" << x << " before t=" << t;
        throw SolverError(msg.str(), -1, t);
    }
    return 1.0 / denom;
}

GridFunction exact_riccati(const RiccatiParams& p, double t, int n_cells) {
    return GridFunction::sample([&](double x) { return exact_riccati_value(p, t, x); }, n_cells);
}

double burgers_riemann_horizon(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("burgers riemann: a must be positive");
    return 1.0 / a;  // shock position 1/2 - a t/2 meets the fan edge at x = 0
}

double burgers_riemann_shock_position(double a, double t) {
    if (t >= burgers_riemann_horizon(a)) {
        throw SolverError("burgers riemann: time beyond shock/fan interaction", -1, t);
    }
    return 0.5 - 0.5 * a * t;
}

double exact_burgers_riemann_value(double a, double t, double x) {
    if (t < 0.0 || t >= burgers_riemann_horizon(a)) {
        throw SolverError("burgers riemann: time outside validity range", -1, t);
    }
    const double y = wrap(x);
    if (t == 0.0) return (y > 0.0 && y < 0.5) ? 0.0 : -a;
    const double shock = 0.5 - 0.5 * a * t;
    if (y >= 0.0) {
        return y < shock ? 0.0 : -a;
    }
    // fan from x = 0: characteristics y = u t for u in [-a, 0]
    if (y >= -a * t) return y / t;
    return -a;
}

GridFunction exact_burgers_riemann(double a, double t, int n_cells) {
    return GridFunction::sample([&](double x) { return exact_burgers_riemann_value(a, t, x); },
                                n_cells);
}

namespace {

double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

// Semidiscrete minmod-limited upwind divided differences for the two
// diagonal waves (speeds +lambda and -lambda).
void transport_rhs(const std::vector<double>& wp, const std::vector<double>& wm, double lambda,
                   double dx, int order, std::vector<double>& dwp, std::vector<double>& dwm) {
    const int n = static_cast<int>(wp.size());
    auto idx = [n](int i) { return ((i % n) + n) % n; };
    std::vector<double> fp(n), fm(n);  // fp[i] = flux of w+ at interface i-1/2, fm likewise
    for (int i = 0; i < n; ++i) {
        if (order == 1) {
            fp[i] = lambda * wp[idx(i - 1)];
            fm[i] = -lambda * wm[i];
        } else {
            const double sl = minmod(wp[idx(i - 1)] - wp[idx(i - 2)], wp[i] - wp[idx(i - 1)]);
            fp[i] = lambda * (wp[idx(i - 1)] + 0.5 * sl);
            const double sr = minmod(wm[i] - wm[idx(i - 1)], wm[idx(i + 1)] - wm[i]);
            fm[i] = -lambda * (wm[i] - 0.5 * sr);
        }
    }
    for (int i = 0; i < n; ++i) {
        dwp[i] = -(fp[idx(i + 1)] - fp[i]) / dx;
        dwm[i] = -(fm[idx(i + 1)] - fm[i]) / dx;
    }
}

}  // namespace

FvResult fv_relaxation_solve(const InitialCondition& u0, const FluxDescriptor& flux,
                             const FvConfig& cfg, double T) {
    if (cfg.n_cells < 4) throw ConfigError("fv: need at least 4 cells");
    if (cfg.order != 1 && cfg.order != 2) throw ConfigError("fv: order must be 1 or 2");
    if (!(cfg.lambda > 0.0) || !(cfg.epsilon > 0.0)) {
        throw ConfigError("fv: lambda and epsilon must be positive");
    }
    const int n = cfg.n_cells;
    const double dx = kDomainLength / n;
    double dt = cfg.cfl * dx / cfg.lambda;
    if (cfg.dt_override > 0.0) dt = cfg.dt_override;
    if (dt > dx / (2.0 * cfg.lambda) + 1e-15) {
        throw ConfigError("fv: dt violates the transport CFL bound dx/(2 lambda)");
    }

    std::vector<double> u(n), v(n), wp(n), wm(n);
    for (int i = 0; i < n; ++i) {
        const double x = -1.0 + (i + 0.5) * dx;
        u[i] = u0.eval(x);
        v[i] = flux.value(u[i]);  // start on the relaxation equilibrium
    }

    FvResult result;
    auto store = [&](double t) {
        Eigen::VectorXd vals(n);
        for (int i = 0; i < n; ++i) vals[i] = u[i];
        result.times.push_back(t);
        result.frames.emplace_back(std::move(vals));
    };
    store(0.0);

    const long long n_steps = static_cast<long long>(std::ceil(T / dt - 1e-12));
    std::vector<double> dwp(n), dwm(n), wp1(n), wm1(n);
    double t = 0.0;
    for (long long k = 1; k <= n_steps; ++k) {
        const double step_dt = std::min(dt, T - t);
        for (int i = 0; i < n; ++i) {
            wp[i] = v[i] + cfg.lambda * u[i];
            wm[i] = v[i] - cfg.lambda * u[i];
        }
        transport_rhs(wp, wm, cfg.lambda, dx, cfg.order, dwp, dwm);
        if (cfg.order == 1) {
            for (int i = 0; i < n; ++i) {
                wp[i] += step_dt * dwp[i];
                wm[i] += step_dt * dwm[i];
            }
        } else {
            for (int i = 0; i < n; ++i) {
                wp1[i] = wp[i] + step_dt * dwp[i];
                wm1[i] = wm[i] + step_dt * dwm[i];
            }
            transport_rhs(wp1, wm1, cfg.lambda, dx, cfg.order, dwp, dwm);
            for (int i = 0; i < n; ++i) {
                wp[i] = 0.5 * (wp[i] + wp1[i] + step_dt * dwp[i]);
                wm[i] = 0.5 * (wm[i] + wm1[i] + step_dt * dwm[i]);
            }
        }
        // exact implicit relaxation: u unchanged, v pulled toward f(u)
        for (int i = 0; i < n; ++i) {
            u[i] = (wp[i] - wm[i]) / (2.0 * cfg.lambda);
            v[i] = 0.5 * (wp[i] + wm[i]);
            v[i] = (cfg.epsilon * v[i] + step_dt * flux.value(u[i])) / (cfg.epsilon + step_dt);
        }
        t += step_dt;
        if (k % cfg.store_stride == 0 || k == n_steps) store(t);
    }
    return result;
}

namespace {

struct ShockScan {
    int interface = -1;  // between cells i and i+1
    double windowed_jump = 0.0;
};

ShockScan scan_for_shock(const GridFunction& g, double jump_threshold) {
    const int n = g.n_cells();
    // window sized to cover the viscous width of a relaxed shock
    const int w = std::max(3, n / 20);
    ShockScan found;
    double best_drop = 0.0;
    for (int i = 0; i < n; ++i) {
        double left = g.values[i];
        double right = g.values[(i + 1) % n];
        for (int k = 1; k <= w; ++k) {
            left = std::max(left, g.values[(i - k + n) % n]);
            right = std::min(right, g.values[(i + 1 + k) % n]);
        }
        if (left - right <= jump_threshold) continue;
        const double drop = g.values[i] - g.values[(i + 1) % n];
        if (found.interface < 0 || drop > best_drop) {
            best_drop = drop;
            found.interface = i;
            found.windowed_jump = left - right;
        }
    }
    return found;
}

}  // namespace

double shock_location(const GridFunction& g, double jump_threshold) {
    const ShockScan found = scan_for_shock(g, jump_threshold);
    if (found.interface < 0) {
        throw SolverError("shock_location: no jump exceeds the threshold");
    }
    return wrap(g.center(found.interface) + 0.5 * g.dx());
}

double jump_magnitude(const GridFunction& g, double jump_threshold) {
    const ShockScan found = scan_for_shock(g, jump_threshold);
    if (found.interface < 0) {
        throw SolverError("jump_magnitude: no jump exceeds the threshold");
    }
    return found.windowed_jump;
}

double shock_location_centroid(const GridFunction& g, double jump_threshold) {
    const ShockScan found = scan_for_shock(g, jump_threshold);
    if (found.interface < 0) {
        throw SolverError("shock_location_centroid: no jump exceeds the threshold");
    }
    const int n = g.n_cells();
    const int w = std::max(3, n / 20);
    const double base = g.center(found.interface) + 0.5 * g.dx();
    double num = 0.0, den = 0.0;
    for (int k = -w; k <= w; ++k) {
        const int i = ((found.interface + k) % n + n) % n;
        const double drop = g.values[i] - g.values[(i + 1) % n];
        if (drop <= 0.0) continue;
        num += drop * (base + k * g.dx());  // unwrapped interface position
        den += drop;
    }
    return wrap(num / den);
}

double shock_speed_estimate(const std::vector<double>& times,
                            const std::vector<GridFunction>& frames, double jump_threshold) {
    if (times.size() != frames.size() || times.size() < 2) {
        throw std::invalid_argument("shock_speed_estimate: need at least two frames");
    }
    std::vector<double> pos(times.size());
    pos[0] = shock_location(frames[0], jump_threshold);
    for (std::size_t k = 1; k < frames.size(); ++k) {
        const double raw = shock_location(frames[k], jump_threshold);
        // unwrap onto the branch closest to the previous position
        double p = raw;
        while (p - pos[k - 1] > 1.0) p -= kDomainLength;
        while (p - pos[k - 1] < -1.0) p += kDomainLength;
        pos[k] = p;
    }
    const double m = static_cast<double>(times.size());
    double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        st += times[k];
        sx += pos[k];
        stt += times[k] * times[k];
        stx += times[k] * pos[k];
    }
    const double denom = m * stt - st * st;
    if (std::abs(denom) < 1e-300) {
        throw std::invalid_argument("shock_speed_estimate: degenerate time samples");
    }
    return (m * stx - st * sx) / denom;
}

}  // namespace rxm
