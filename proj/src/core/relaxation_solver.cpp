// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/relaxation_solver.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"
#include "core/torus.hpp"

namespace rxm {

void SolverConfig::validate() const {
    if (!(lambda > 0.0)) throw ConfigError("config: lambda must be positive");
    if (!(epsilon > 0.0)) throw ConfigError("config: epsilon must be positive");
    if (rho < 0.0) throw ConfigError("config: rho must be nonnegative");
    if (!(dt > 0.0)) throw ConfigError("config: dt must be positive");
    if (n_basis < 2) throw ConfigError("config: n_basis must be at least 2");
    if (quad.nodes_per_interval < 1) throw ConfigError("config: quadrature nodes must be positive");
    if (!(sigma_tol > 0.0)) throw ConfigError("config: sigma_tol must be positive");
    if (snapshot_stride < 1) throw ConfigError("config: snapshot_stride must be positive");
}

RelaxationSolver::RelaxationSolver(BasisFamily family, FluxDescriptor flux, SolverConfig cfg)
    : family_(std::move(family)),
      flux_(std::move(flux)),
      cfg_(cfg),
      mass_(family_, cfg.lambda),
      m0_(mass_.matrix(0.0)) {
    cfg_.validate();
    if (family_.size() != cfg_.n_basis) {
        throw ConfigError("config: basis size does not match n_basis");
    }
}

CoefficientState RelaxationSolver::project_initial(const InitialCondition& u0) const {
    const int n = family_.size();
    const double d = family_.cell_width();
    const double lam = cfg_.lambda;
    const int nodes = cfg_.quad.nodes_per_interval;

    Eigen::VectorXd b_plus(n), b_minus(n);
    for (int k = 1; k <= n; ++k) {
        const double a = (k - 1) * d;
        // split the support at the middle knot and at discontinuities of u0
        std::vector<double> pts{a, a + d, a + 2.0 * d};
        for (double p : u0.breakpoints) {
            for (int z = -2; z <= 2; ++z) {
                const double q = p + z * kDomainLength;
                if (q > a + 1e-13 && q < a + 2.0 * d - 1e-13) pts.push_back(q);
            }
        }
        std::sort(pts.begin(), pts.end());
        double bp = 0.0, bm = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (pts[i + 1] - pts[i] < 1e-13) continue;
            bp += rxm::integrate(
                [&](double x) {
                    const double u = u0.eval(wrap(x));
                    return family_.eval(k, x) * (flux_.value(u) + lam * u);
                },
                pts[i], pts[i + 1], nodes);
            bm += rxm::integrate(
                [&](double x) {
                    const double u = u0.eval(wrap(x));
                    return family_.eval(k, x) * (flux_.value(u) - lam * u);
                },
                pts[i], pts[i + 1], nodes);
        }
        b_plus[k - 1] = bp;
        b_minus[k - 1] = bm;
    }

    CoefficientState s;
    s.t = 0.0;
    s.alpha_plus = m0_.solve(b_plus, cfg_.sigma_tol);
    s.alpha_minus = m0_.solve(b_minus, cfg_.sigma_tol);
    return s;
}

Eigen::VectorXd RelaxationSolver::assemble_flux_projection(const CoefficientState& s) const {
    const int n = family_.size();
    const double d = family_.cell_width();
    const double lam = cfg_.lambda;
    const int nodes = cfg_.quad.nodes_per_interval;

    // In the frame of the plus family the minus family is shifted by -2*lambda*t,
    // so its knots sit at a fixed offset inside every cell.
    const double s2 = 2.0 * lam * s.t;
    double off = std::fmod(-s2, d);
    if (off < 0.0) off += d;
    const bool interior = off > 1e-13 && off < d - 1e-13;

    auto u_shifted = [&](double x) {
        return (family_.expand(s.alpha_plus, 0.0, x) - family_.expand(s.alpha_minus, -s2, x)) /
               (2.0 * lam);
    };

    Eigen::VectorXd out(n);
    for (int j = 1; j <= n; ++j) {
        auto g = [&](double x) { return family_.eval(j, x) * flux_.value(u_shifted(x)); };
        const double a = (j - 1) * d;
        double acc = 0.0;
        for (int cell = 0; cell < 2; ++cell) {
            const double lo = a + cell * d;
            if (interior) {
                acc += rxm::integrate(g, lo, lo + off, nodes);
                acc += rxm::integrate(g, lo + off, lo + d, nodes);
            } else {
                acc += rxm::integrate(g, lo, lo + d, nodes);
            }
        }
        out[j - 1] = acc;
    }
    return out;
}

double RelaxationSolver::effective_rho(double t, const SpectrumReport* rep) const {
    if (!mass_.has_singular_times() || cfg_.rho == 0.0) return 0.0;
    if (cfg_.reg_mode == RegularizationMode::always) return cfg_.rho;
    SpectrumReport local;
    if (!rep) {
        local = mass_.matrix(t).eigenvalues();
        rep = &local;
    }
    return rep->min_abs <= cfg_.adaptive_reg_tol * rep->max_abs ? cfg_.rho : 0.0;
}

CoefficientState RelaxationSolver::step_impl(const CoefficientState& s, bool semi_implicit) const {
    const double dt = cfg_.dt;
    const double eps = cfg_.epsilon;
    const double tn = s.t;
    const double tnp = tn + dt;

    const Circulant Mn = mass_.matrix(tn);
    const Circulant Mnp = mass_.matrix(tnp);
    const Eigen::VectorXd mdot_am = mass_.matrix_dot(tn).matvec(s.alpha_minus);
    const Eigen::VectorXd m0_ap = m0_.matrix().matvec(s.alpha_plus);
    const Eigen::VectorXd mn_am = Mn.matvec(s.alpha_minus);

    const Eigen::VectorXd& e = mass_.null_right();
    const Eigen::VectorXd& f = mass_.null_left();

    const double rho_n = effective_rho(tn, nullptr);
    Eigen::VectorXd nn_am = mn_am;
    if (rho_n != 0.0) nn_am += rho_n * f * e.dot(s.alpha_minus);

    const Eigen::VectorXd flux_proj = assemble_flux_projection(s);

    const Eigen::VectorXd rhs1 = m0_ap - mn_am - dt * mdot_am;
    Eigen::VectorXd rhs2;
    if (semi_implicit) {
        rhs2 = eps / (eps + dt) * (m0_ap + nn_am + dt * mdot_am) +
               dt / (eps + dt) * (2.0 * flux_proj);
    } else {
        rhs2 = m0_ap + nn_am + dt * mdot_am -
               (2.0 * dt / eps) * (0.5 * (m0_ap + mn_am) - flux_proj);
    }

    // The block system
    //   [ M0  -M_{n+1} ] [a+]   [rhs1]
    //   [ M0   N_{n+1} ] [a-] = [rhs2]
    // decouples: (M_{n+1} + N_{n+1}) a- = rhs2 - rhs1, then M0 a+ = rhs1 + M_{n+1} a-.
    CirculantSolver corrected(Circulant(2.0 * Mnp.first_row()));
    const double rho_np = effective_rho(tnp, &corrected.spectrum());

    CoefficientState next;
    next.t = tnp;
    try {
        next.alpha_minus = rho_np != 0.0
                               ? corrected.solve_rank1(f, e, rho_np, rhs2 - rhs1, cfg_.sigma_tol)
                               : corrected.solve(rhs2 - rhs1, cfg_.sigma_tol);
    } catch (const SingularMatrixError& err) {
        std::ostringstream msg;
        msg << "step: singular mass operator at t=" << tnp << " (min |eigenvalue| "
            << err.min_abs << ")";
        if (auto ts = mass_.next_singular_time(tn)) {
            msg << "; nearest singular time t_l=" << *ts;
        }
        msg << "; set rho > 0 to regularize";
        throw SolverError(msg.str(), -1, tnp);
    }
    next.alpha_plus = m0_.solve(rhs1 + Mnp.matvec(next.alpha_minus), cfg_.sigma_tol);
    return next;
}

CoefficientState RelaxationSolver::step(const CoefficientState& s) const {
    return step_impl(s, cfg_.scheme == Scheme::semi_implicit);
}

CoefficientState RelaxationSolver::step_semi_implicit(const CoefficientState& s) const {
    return step_impl(s, true);
}

CoefficientState RelaxationSolver::step_explicit(const CoefficientState& s) const {
    return step_impl(s, false);
}

IntegrationResult RelaxationSolver::integrate(
    const InitialCondition& u0, double T,
    const std::function<void(const CoefficientState&)>& observer) const {
    const SubcharacteristicReport sub = check_subcharacteristic(u0, flux_, cfg_.lambda);
    if (!sub.pass && !cfg_.allow_subchar_violation) {
        std::ostringstream msg;
        msg << "integrate: subcharacteristic condition violated (max |f'(u0)| = " << sub.max_speed
            << " > lambda = " << cfg_.lambda << "); override to run anyway";
        throw ConfigError(msg.str());
    }
    return integrate_from(project_initial(u0), T, observer);
}

IntegrationResult RelaxationSolver::integrate_from(
    CoefficientState state, double T,
    const std::function<void(const CoefficientState&)>& observer) const {
    if (T < 0.0) throw ConfigError("integrate: horizon must be nonnegative");

    IntegrationResult result;
    result.trajectory.config = cfg_;
    result.trajectory.stride = cfg_.snapshot_stride;
    if (cfg_.dt > 0.5 * cfg_.epsilon * (1.0 + 1e-12)) {
        result.warnings.push_back("dt exceeds the epsilon/2 stability bound; expect growth");
    }

    const long long n_steps = std::llround(T / cfg_.dt);
    result.trajectory.states.push_back(state);
    if (observer) observer(state);
    result.max_sup_norm = std::max(state.alpha_plus.cwiseAbs().maxCoeff(),
                                   state.alpha_minus.cwiseAbs().maxCoeff());

    for (long long k = 1; k <= n_steps; ++k) {
        state = step(state);
        if (!state.alpha_plus.allFinite() || !state.alpha_minus.allFinite()) {
            const SpectrumReport rep = mass_.matrix(state.t).eigenvalues();
            std::ostringstream msg;
            msg << "integrate: non-finite state at step " << k << " (t=" << state.t
                << "); mass spectrum min/max = " << rep.min_abs << "/" << rep.max_abs;
            throw SolverError(msg.str(), static_cast<int>(k), state.t);
        }
        result.max_sup_norm = std::max({result.max_sup_norm,
                                        state.alpha_plus.cwiseAbs().maxCoeff(),
                                        state.alpha_minus.cwiseAbs().maxCoeff()});
        if (k % cfg_.snapshot_stride == 0) {
            result.trajectory.states.push_back(state);
        }
        if (observer) observer(state);
    }
    result.final_state = state;
    return result;
}

double RelaxationSolver::reconstruct_u(const CoefficientState& s, double x) const {
    const double shift = cfg_.lambda * s.t;
    return (family_.expand(s.alpha_plus, shift, x) - family_.expand(s.alpha_minus, -shift, x)) /
           (2.0 * cfg_.lambda);
}

double RelaxationSolver::reconstruct_v(const CoefficientState& s, double x) const {
    const double shift = cfg_.lambda * s.t;
    return 0.5 * (family_.expand(s.alpha_plus, shift, x) + family_.expand(s.alpha_minus, -shift, x));
}

double RelaxationSolver::reconstruct_w_plus(const CoefficientState& s, double x) const {
    return family_.expand(s.alpha_plus, cfg_.lambda * s.t, x);
}

double RelaxationSolver::reconstruct_w_minus(const CoefficientState& s, double x) const {
    return family_.expand(s.alpha_minus, -cfg_.lambda * s.t, x);
}

GridFunction RelaxationSolver::sample_u(const CoefficientState& s, int n_cells) const {
    return GridFunction::sample([&](double x) { return reconstruct_u(s, x); }, n_cells);
}

double RelaxationSolver::total_mass(const CoefficientState& s) const {
    const double phi_integral = family_.integral_per_function();
    return (s.alpha_plus.sum() - s.alpha_minus.sum()) * phi_integral / (2.0 * cfg_.lambda);
}

}  // namespace rxm
