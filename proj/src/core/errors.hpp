// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rxm {

/// Invalid or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Failure while time stepping (singular operator, non-finite state, ...).
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, int step = -1, double t = 0.0)
        : std::runtime_error(what), step(step), t(t) {}
    int step;
    double t;
};

}  // namespace rxm
