// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "core/basis.hpp"
#include "core/circulant.hpp"
#include "core/flux.hpp"
#include "core/grid_function.hpp"
#include "core/mass_operator.hpp"
#include "core/quadrature.hpp"

namespace rxm {

enum class Scheme { semi_implicit, explicit_euler };

/// When to apply the rank-1 regularization of the mass operator.
enum class RegularizationMode { always, adaptive };

struct SolverConfig {
    double lambda = 1.0;      // relaxation speed
    double epsilon = 1e-3;    // relaxation parameter
    double rho = 1e-3;        // rank-1 regularization strength
    double dt = 5e-4;         // time step
    int n_basis = 40;
    Scheme scheme = Scheme::semi_implicit;
    QuadratureRule quad{};
    double sigma_tol = 1e-10;           // relative singularity tolerance
    int snapshot_stride = 10;
    RegularizationMode reg_mode = RegularizationMode::always;
    double adaptive_reg_tol = 1e-6;     // spectrum threshold for adaptive mode
    bool allow_subchar_violation = false;

    void validate() const;  // throws ConfigError
};

/// Expansion coefficients of the two diagonal wave families at time t.
struct CoefficientState {
    double t = 0.0;
    Eigen::VectorXd alpha_plus;
    Eigen::VectorXd alpha_minus;
};

struct Trajectory {
    SolverConfig config;
    int stride = 1;
    std::vector<CoefficientState> states;  // at stride multiples, initial state included
};

struct IntegrationResult {
    Trajectory trajectory;
    CoefficientState final_state;
    std::vector<std::string> warnings;
    double max_sup_norm = 0.0;
};

/// Semi-discrete solver for the relaxed conservation law. The two wave
/// families are expanded in basis functions translated with speeds +-lambda,
/// which reduces the PDE to a coefficient system driven by circulant mass
/// operators and a projected nonlinear source.
class RelaxationSolver {
public:
    RelaxationSolver(BasisFamily family, FluxDescriptor flux, SolverConfig cfg);

    const BasisFamily& family() const { return family_; }
    const MassOperator& mass() const { return mass_; }
    const FluxDescriptor& flux() const { return flux_; }
    const SolverConfig& config() const { return cfg_; }

    /// L2 projection of the initial wave data onto the basis:
    /// solves M(0) alpha_pm = b_pm with b_pm_k = <phi_k, f(u0) +- lambda*u0>.
    CoefficientState project_initial(const InitialCondition& u0) const;

    /// Projected nonlinear source F_j(t, alpha) = <phi_j, f(u~(t, . + lambda t))>.
    Eigen::VectorXd assemble_flux_projection(const CoefficientState& s) const;

    CoefficientState step(const CoefficientState& s) const;
    CoefficientState step_semi_implicit(const CoefficientState& s) const;
    CoefficientState step_explicit(const CoefficientState& s) const;

    /// Marches round(T/dt) steps from the projected initial data. The observer
    /// (optional) sees every state including the initial one.
    IntegrationResult integrate(const InitialCondition& u0, double T,
                                const std::function<void(const CoefficientState&)>& observer = {}) const;

    /// Same march starting from a given state (used by the reduced solver).
    IntegrationResult integrate_from(CoefficientState state, double T,
                                     const std::function<void(const CoefficientState&)>& observer = {}) const;

    // Reconstructions. u~ and u are the same formula; both names are kept for
    // the two roles (source argument vs output field).
    double u_tilde(const CoefficientState& s, double x) const { return reconstruct_u(s, x); }
    double reconstruct_u(const CoefficientState& s, double x) const;
    double reconstruct_v(const CoefficientState& s, double x) const;
    double reconstruct_w_plus(const CoefficientState& s, double x) const;
    double reconstruct_w_minus(const CoefficientState& s, double x) const;
    GridFunction sample_u(const CoefficientState& s, int n_cells) const;

    /// Integral of the reconstructed u over the torus, exact in the
    /// coefficients (every basis function has the same integral).
    double total_mass(const CoefficientState& s) const;

private:
    BasisFamily family_;
    FluxDescriptor flux_;
    SolverConfig cfg_;
    MassOperator mass_;
    CirculantSolver m0_;

    double effective_rho(double t, const SpectrumReport* rep) const;
    CoefficientState step_impl(const CoefficientState& s, bool semi_implicit) const;
};

}  // namespace rxm
