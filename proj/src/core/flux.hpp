// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace rxm {

/// Flux of the conservation law together with its derivative.
struct FluxDescriptor {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    std::string label;

    static FluxDescriptor linear(double a);
    static FluxDescriptor burgers();
};

/// Initial profile on the torus. Breakpoints mark discontinuities or kinks so
/// projections can split quadrature intervals there.
struct InitialCondition {
    std::function<double(double)> eval;
    std::vector<double> breakpoints;
    std::string label;

    static InitialCondition sine();                //  sin(pi x)
    static InitialCondition shifted_sine();        //  1/2 + sin(pi x)
    static InitialCondition gauss_bump();          //  e^{-4x^2} - e^{-1} on (-1/2, 1/2)
    static InitialCondition step(double a);        //  a (chi_[0,1/2] - 1)
    static InitialCondition combined(double a);    //  sin(pi x) + a (chi_[0,1/2] - 1)
};

struct SubcharacteristicReport {
    bool pass = false;
    double max_speed = 0.0;  // max |f'(u0)| over the sample
    double margin = 0.0;     // lambda - max_speed
};

/// Samples u0 on a dense grid and checks lambda >= max |f'(u0)|.
SubcharacteristicReport check_subcharacteristic(const InitialCondition& u0,
                                                const FluxDescriptor& flux, double lambda,
                                                int samples = 10000);

}  // namespace rxm
