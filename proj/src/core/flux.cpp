// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/flux.hpp"

#include <cmath>
#include <numbers>

#include "core/torus.hpp"

namespace rxm {

FluxDescriptor FluxDescriptor::linear(double a) {
    return {[a](double u) { return a * u; }, [a](double) { return a; }, "linear"};
}

FluxDescriptor FluxDescriptor::burgers() {
    return {[](double u) { return 0.5 * u * u; }, [](double u) { return u; }, "burgers"};
}

InitialCondition InitialCondition::sine() {
    return {[](double x) { return std::sin(std::numbers::pi * x); }, {}, "sine"};
}

InitialCondition InitialCondition::shifted_sine() {
    return {[](double x) { return 0.5 + std::sin(std::numbers::pi * x); }, {}, "shifted_sine"};
}

InitialCondition InitialCondition::gauss_bump() {
    return {[](double x) {
                const double y = wrap(x);
                if (y <= -0.5 || y >= 0.5) return 0.0;
                return std::exp(-4.0 * y * y) - std::exp(-1.0);
            },
            {-0.5, 0.5},
            "gauss_bump"};
}

InitialCondition InitialCondition::step(double a) {
    return {[a](double x) {
                const double y = wrap(x);
                return a * (((y > 0.0 && y < 0.5) ? 1.0 : 0.0) - 1.0);
            },
            {0.0, 0.5},
            "step"};
}

InitialCondition InitialCondition::combined(double a) {
    return {[a](double x) {
                const double y = wrap(x);
                const double chi = (y > 0.0 && y < 0.5) ? 1.0 : 0.0;
                return std::sin(std::numbers::pi * y) + a * (chi - 1.0);
            },
            {0.0, 0.5},
            "combined"};
}

SubcharacteristicReport check_subcharacteristic(const InitialCondition& u0,
                                                const FluxDescriptor& flux, double lambda,
                                                int samples) {
    SubcharacteristicReport rep;
    for (int i = 0; i < samples; ++i) {
        const double x = -1.0 + 2.0 * (i + 0.5) / samples;
        rep.max_speed = std::max(rep.max_speed, std::abs(flux.derivative(u0.eval(x))));
    }
    // discontinuity sides carry the extreme values for piecewise data
    for (double b : u0.breakpoints) {
        for (double s : {-1e-9, 1e-9}) {
            rep.max_speed = std::max(rep.max_speed, std::abs(flux.derivative(u0.eval(b + s))));
        }
    }
    rep.margin = lambda - rep.max_speed;
    rep.pass = rep.margin >= 0.0;
    return rep;
}

}  // namespace rxm
