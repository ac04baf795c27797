// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
// the measured quantities and its tolerance; the exit code is the number of
// failed criteria. Heavy full-order trajectories are cached on disk (keyed by
// name; all runs are deterministic) so the criteria can run independently.
//
// Usage: acceptance [--criterion K] [--cache DIR]

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include "core/comoving.hpp"
#include "core/csv_io.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/reference.hpp"
#include "core/rom.hpp"
#include "oracles.hpp"

using namespace rxm;
namespace fs = std::filesystem;

namespace {

fs::path g_cache = "acceptance_cache";

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// cached full-order runs
// ---------------------------------------------------------------------------

struct FullRun {
    RelaxationSolver solver;
    std::vector<CoefficientState> states;  // snapshot states, initial included
    CoefficientState final_state;

    Trajectory trajectory() const {
        Trajectory t;
        t.config = solver.config();
        t.stride = solver.config().snapshot_stride;
        t.states = states;
        return t;
    }
};

void save_states(const std::string& name, const std::vector<CoefficientState>& states) {
    const int n = static_cast<int>(states.front().alpha_plus.size());
    const int s = static_cast<int>(states.size());
    Eigen::MatrixXd times(1, s), plus(n, s), minus(n, s);
    for (int k = 0; k < s; ++k) {
        times(0, k) = states[k].t;
        plus.col(k) = states[k].alpha_plus;
        minus.col(k) = states[k].alpha_minus;
    }
    fs::create_directories(g_cache);
    write_matrix((g_cache / (name + "_times.mat")).string(), times);
    write_matrix((g_cache / (name + "_plus.mat")).string(), plus);
    write_matrix((g_cache / (name + "_minus.mat")).string(), minus);
}

bool load_states(const std::string& name, std::vector<CoefficientState>& states) {
    const fs::path tp = g_cache / (name + "_times.mat");
    if (!fs::exists(tp)) return false;
    const Eigen::MatrixXd times = read_matrix(tp.string());
    const Eigen::MatrixXd plus = read_matrix((g_cache / (name + "_plus.mat")).string());
    const Eigen::MatrixXd minus = read_matrix((g_cache / (name + "_minus.mat")).string());
    states.clear();
    for (Eigen::Index k = 0; k < times.cols(); ++k) {
        states.push_back({times(0, k), plus.col(k), minus.col(k)});
    }
    return true;
}

FullRun make_run(const std::string& cache_name, const FluxDescriptor& flux,
                 const InitialCondition& ic, const SolverConfig& cfg, double T) {
    RelaxationSolver solver(BasisFamily(cfg.n_basis), flux, cfg);
    std::vector<CoefficientState> states;
    if (!load_states(cache_name, states)) {
        const IntegrationResult res = solver.integrate(ic, T);
        states = res.trajectory.states;
        save_states(cache_name, states);
    }
    FullRun run{std::move(solver), std::move(states), {}};
    run.final_state = run.states.back();
    return run;
}

SolverConfig preset_solver_config(const char* preset) {
    const ExperimentConfig e = ExperimentConfig::preset(preset);
    return e.make_solver_config();
}

// the five shared runs
FullRun linear_run() {
    return make_run("linear_full", FluxDescriptor::linear(1.0), InitialCondition::sine(),
                    preset_solver_config("linear-relax"), 1.0);
}
FullRun smooth_run() {
    return make_run("smooth_full", FluxDescriptor::burgers(), InitialCondition::shifted_sine(),
                    preset_solver_config("burgers-smooth"), 1.0);
}
FullRun smooth_n40_run() {
    SolverConfig cfg = preset_solver_config("burgers-smooth");
    cfg.n_basis = 40;
    return make_run("smooth_n40", FluxDescriptor::burgers(), InitialCondition::shifted_sine(),
                    cfg, 1.0);
}
FullRun strong_run() {
    return make_run("strong_full", FluxDescriptor::burgers(), InitialCondition::step(1.0),
                    preset_solver_config("burgers-strong"), 0.6);
}

FvResult smooth_fv(double T = 1.0) {
    FvConfig fv;
    fv.lambda = 2.0;
    fv.epsilon = 1e-3;
    fv.n_cells = 320;
    fv.order = 2;
    return fv_relaxation_solve(InitialCondition::shifted_sine(), FluxDescriptor::burgers(), fv, T);
}

GridFunction sample_run(const FullRun& run, const CoefficientState& s, int cells) {
    return run.solver.sample_u(s, cells);
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    template <typename T>
    Outcome& operator<<(const T& v) {
        detail << v;
        return *this;
    }
    void require(bool ok) { pass = pass && ok; }
};

Outcome criterion_1_linear_exactness() {
    Outcome out;
    const double t0 = now_seconds();
    FullRun run = linear_run();
    const Eigen::VectorXd& a0 = run.states.front().alpha_plus;

    double max_drift = 0.0, max_minus = 0.0;
    for (const auto& s : run.states) {
        max_drift = std::max(max_drift, (s.alpha_plus - a0).cwiseAbs().maxCoeff());
        max_minus = std::max(max_minus, s.alpha_minus.cwiseAbs().maxCoeff());
    }
    out.require(max_drift <= 1e-8);
    out.require(max_minus <= 1e-8);

    // reconstructed u(T) against the advected initial interpolant
    const BasisFamily& fam = run.solver.family();
    const CoefficientState& sf = run.final_state;
    double linf = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double x = -1.0 + 2.0 * (i + 0.5) / 2000.0;
        const double interpolant = fam.expand(a0 / 2.0, sf.t, x);  // 2 lambda = 2
        linf = std::max(linf, std::abs(run.solver.reconstruct_u(sf, x) - interpolant));
    }
    out.require(linf <= 1e-8);
    const double wall = now_seconds() - t0;
    out.require(wall < 30.0);
    out << "max|dalpha+|=" << max_drift << " max|alpha-|=" << max_minus
        << " (tol 1e-8); Linf(u vs advected interpolant)=" << linf << " (tol 1e-8); wall="
        << wall << "s (<30s)";
    return out;
}

Outcome criterion_2_linear_relax_reproduction() {
    Outcome out;
    FullRun run = linear_run();

    // full order against the exact advection solution
    const GridFunction u_full = sample_run(run, run.final_state, 2000);
    const GridFunction exact =
        exact_linear_advection(InitialCondition::sine(), 1.0, run.final_state.t, 2000);
    const double linf_full = error_norms(u_full, exact).linf;
    out.require(linf_full <= 0.05);

    // rank-2 POD reproduces the full solution
    const Trajectory traj = run.trajectory();
    const SnapshotSet set = collect_snapshots({&traj});
    ReducedRelaxationSolver reduced(run.solver, pod(set, 2));
    const ReducedIntegrationResult rred = reduced.integrate(InitialCondition::sine(), 1.0);
    const GridFunction u_red = reduced.sample_u(rred.final_state, 2000);
    const double l2_red_full = error_norms(u_red, u_full).l2;
    out.require(l2_red_full <= 1e-3);

    // rank-1 with an all-zero basis function: the failure mode
    ReducedRelaxationSolver degenerate(run.solver, ReducedBasisPair::zero(40, 1));
    const ReducedIntegrationResult rzero = degenerate.integrate(InitialCondition::sine(), 1.0);
    const GridFunction u_zero = degenerate.sample_u(rzero.final_state, 2000);
    const double linf_zero = error_norms(u_zero, exact).linf;
    out.require(linf_zero > 0.5);

    out << "Linf(full vs exact)=" << linf_full << " (tol 0.05); L2(r=2 vs full)=" << l2_red_full
        << " (tol 1e-3); Linf(r=1 zero basis vs exact)=" << linf_zero << " (> 0.5)";
    return out;
}

Outcome criterion_3_riccati() {
    Outcome out;
    const double t0 = now_seconds();
    const int n = 100, rank = 30;
    const double T = 0.5, dt = 1e-3;
    RiccatiParams p{2.0, 1.0, 1.0, InitialCondition::gauss_bump(), -0.5, 0.5};
    ComovingSourceSolver solver(BasisFamily(n), p.lambda, {p.gamma, p.delta});

    const ScalarTrajectory full = solver.integrate(p.w0, T, dt, 5);
    const Eigen::Index last = full.coefficients.cols() - 1;
    const GridFunction u_full = solver.sample(full.coefficients.col(last), T, 2000);
    const GridFunction exact = exact_riccati(p, T, 2000);
    const double l2_full = error_norms(u_full, exact).l2;
    out.require(l2_full <= 0.05);

    const ReducedBasis basis = pod_single(full.coefficients, rank);
    const ScalarTrajectory red = solver.integrate_reduced(p.w0, T, dt, basis, 5);
    const GridFunction u_red =
        solver.sample(red.coefficients.col(red.coefficients.cols() - 1), T, 2000);
    const double l2_red = error_norms(u_red, exact).l2;
    out.require(l2_red <= 2.0 * l2_full);

    const double wall = now_seconds() - t0;
    out.require(wall < 120.0);
    out << "L2(full N=100 vs exact)=" << l2_full << " (tol 0.05); L2(reduced r=30 vs exact)="
        << l2_red << " (tol 2x full = " << 2.0 * l2_full << "); wall=" << wall << "s (<2min)";
    return out;
}

Outcome criterion_4_burgers_smooth_vs_fv() {
    Outcome out;
    const double t0 = now_seconds();
    FullRun run = smooth_run();
    const FvResult fv = smooth_fv();

    const GridFunction u_full = sample_run(run, run.final_state, 320);
    const GridFunction& u_fv = fv.final_frame();

    const double thresh = 0.3;  // the developed shock jump is about 1.2
    const double jump_full = jump_magnitude(u_full, thresh);
    const double jump_fv = jump_magnitude(u_fv, thresh);
    const double jump_rel = std::abs(jump_full - jump_fv) / jump_fv;
    out.require(jump_rel <= 0.10);

    const double l1 = error_norms(u_full, u_fv).l1;
    out.require(l1 <= 0.05);

    // a coarse basis shows bounded oscillatory overshoot at the shock
    FullRun coarse = smooth_n40_run();
    const GridFunction u_coarse = sample_run(coarse, coarse.final_state, 320);
    const double overshoot = u_coarse.values.maxCoeff() - u_fv.values.maxCoeff();
    out.require(overshoot > 0.02 * jump_fv);

    const double wall = now_seconds() - t0;
    out.require(wall < 600.0);
    out << "jump(full)=" << jump_full << " jump(fv)=" << jump_fv << " rel diff=" << jump_rel
        << " (tol 0.10); L1(full vs fv)=" << l1 << " (tol 0.05); N=40 overshoot=" << overshoot
        << " (> " << 0.02 * jump_fv << "); wall=" << wall << "s (<10min)";
    return out;
}

Outcome criterion_5_shock_speed() {
    Outcome out;
    FullRun run = strong_run();
    const double thresh = 0.5;

    std::vector<double> times;
    std::vector<GridFunction> frames;
    for (const auto& s : run.states) {
        times.push_back(s.t);
        frames.push_back(sample_run(run, s, 400));
    }
    const double speed_full = shock_speed_estimate(times, frames, thresh);

    FvConfig fvc;
    fvc.lambda = 2.0;
    fvc.epsilon = 1e-3;
    fvc.n_cells = 320;
    fvc.order = 2;
    const FvResult fv =
        fv_relaxation_solve(InitialCondition::step(1.0), FluxDescriptor::burgers(), fvc, 0.6);
    const double speed_fv = shock_speed_estimate(fv.times, fv.frames, thresh);

    // stated target: s = -a/4 = -0.25 within 5% (full) and 2% (fv). The
    // Rankine-Hugoniot speed for states (0, -a) under f(u) = u^2/2 is -a/2;
    // the measured values land there, so this criterion records the
    // discrepancy rather than hiding it.
    const bool full_ok = std::abs(speed_full - (-0.25)) <= 0.05 * 0.25;
    const bool fv_ok = std::abs(speed_fv - (-0.25)) <= 0.02 * 0.25;
    out.require(full_ok);
    out.require(fv_ok);
    out << "measured speed(full)=" << speed_full << " speed(fv)=" << speed_fv
        << " vs stated target -0.25 (5%/2%); Rankine-Hugoniot value for these states is -a/2 = "
           "-0.5";
    return out;
}

Outcome criterion_6_singularity_structure() {
    Outcome out;
    const double lambda = 2.0, T = 1.0;
    std::ostringstream detail;
    for (int n : {8, 16, 160}) {
        MassOperator op(BasisFamily(n), lambda);
        const SingularTimeTable table = op.singular_times(T);
        const std::size_t expected_count =
            static_cast<std::size_t>(std::floor(T * lambda * n - 0.5) + 1);
        out.require(table.entries.size() == expected_count);

        int bad_nullity = 0;
        for (const auto& entry : table.entries) {
            const SpectrumReport rep = op.matrix(entry.t).eigenvalues();
            int small = 0;
            for (const auto& ev : rep.eigenvalues) {
                if (std::abs(ev) <= 1e-10 * rep.max_abs) ++small;
            }
            if (small != 1) ++bad_nullity;
        }
        out.require(bad_nullity == 0);

        // dense SVD cross-check of the normalized smallest singular value
        if (n <= 16) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(op.matrix(table.entries[0].t).dense());
            const auto& sv = svd.singularValues();
            out.require(sv[n - 1] <= 1e-10 * sv[0]);
            out.require(sv[n - 2] > 1e-10 * sv[0]);
        }

        // 1000 samples away from the singular lattice stay nonsingular
        const double spacing = 1.0 / (lambda * n);
        int singular_hits = 0;
        for (int k = 0; k < 1000; ++k) {
            const double t = (k + 0.3) * T / 1000.0;
            const double phase = std::abs(std::remainder(t - 0.5 * spacing, spacing));
            if (phase < 1e-6) continue;
            if (op.matrix(t).is_singular(1e-10)) ++singular_hits;
        }
        out.require(singular_hits == 0);
        detail << "N=" << n << ": " << table.entries.size() << " singular times, nullity 1 at "
               << "each, scan clean; ";
    }
    out << detail.str();
    return out;
}

Outcome criterion_7_circulant_identities() {
    Outcome out;
    // eigenvalue formula against dense eigendecompositions
    double worst_eig = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 3 + rep % 14;
        const Circulant c(oracle::random_vector(n));
        const SpectrumReport spec = c.eigenvalues();
        Eigen::EigenSolver<Eigen::MatrixXd> es(c.dense());
        std::vector<bool> used(n, false);
        for (const auto& ev : spec.eigenvalues) {
            double best = 1e300;
            int best_i = 0;
            for (int i = 0; i < n; ++i) {
                if (used[i]) continue;
                const double d = std::abs(std::complex<double>(es.eigenvalues()[i]) - ev);
                if (d < best) {
                    best = d;
                    best_i = i;
                }
            }
            used[best_i] = true;
            worst_eig = std::max(worst_eig, best / (1.0 + spec.max_abs));
        }
    }
    out.require(worst_eig <= 1e-10);

    // period identity of the mass operator
    MassOperator op(BasisFamily(12), 1.3);
    double worst_period = 0.0;
    for (double frac : {0.0, 0.17, 0.45, 0.83}) {
        const double t = frac * op.period();
        const Circulant base = op.matrix(t);
        for (int k = 1; k <= 24; ++k) {
            const Eigen::VectorXd diff =
                op.matrix(t + k * op.period()).first_row() - base.rotated(k).first_row();
            worst_period = std::max(worst_period, diff.cwiseAbs().maxCoeff());
        }
    }
    out.require(worst_period <= 1e-12);

    // Sherman-Morrison vs dense solves
    double worst_sm = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 4 + rep % 10;
        Eigen::VectorXd c = oracle::random_vector(n);
        c[0] += 3.0;
        const Circulant m(c);
        const Eigen::VectorXd u = oracle::random_vector(n);
        const Eigen::VectorXd w = oracle::random_vector(n);
        const Eigen::VectorXd rhs = oracle::random_vector(n);
        const Eigen::VectorXd got = m.solve_rank1(u, w, 0.4, rhs);
        const Eigen::VectorXd want =
            (oracle::dense_circulant(c) + 0.4 * u * w.transpose()).partialPivLu().solve(rhs);
        worst_sm = std::max(worst_sm, (got - want).cwiseAbs().maxCoeff());
    }
    out.require(worst_sm <= 1e-9);

    out << "eigen formula vs dense: " << worst_eig << " (tol 1e-10); period identity: "
        << worst_period << " (tol 1e-12); Sherman-Morrison vs dense: " << worst_sm
        << " (tol 1e-9)";
    return out;
}

Outcome criterion_8_dense_oracle_steps() {
    Outcome out;
    double worst = 0.0;
    for (int n : {4, 8}) {
        BasisFamily fam(n);
        MassOperator mass(fam, 1.0);
        for (Scheme scheme : {Scheme::semi_implicit, Scheme::explicit_euler}) {
            SolverConfig cfg;
            cfg.lambda = 1.0;
            cfg.epsilon = 1e-3;
            cfg.rho = 1e-3;
            cfg.dt = 5e-4;
            cfg.n_basis = n;
            cfg.scheme = scheme;
            RelaxationSolver solver(fam, FluxDescriptor::burgers(), cfg);
            CoefficientState s = solver.project_initial(InitialCondition::sine());
            for (int k = 0; k < 100; ++k) {
                const CoefficientState oracle_next = oracle::dense_step(
                    fam, FluxDescriptor::burgers(), cfg, mass.null_right(), s,
                    scheme == Scheme::semi_implicit);
                s = solver.step(s);
                worst = std::max(worst,
                                 (s.alpha_plus - oracle_next.alpha_plus).cwiseAbs().maxCoeff());
                worst = std::max(
                    worst, (s.alpha_minus - oracle_next.alpha_minus).cwiseAbs().maxCoeff());
            }
        }
    }
    out.require(worst <= 1e-10);
    out << "max per-step deviation from the dense 2Nx2N solve over 100 steps, N in {4,8}, both "
           "schemes: "
        << worst << " (tol 1e-10)";
    return out;
}

Outcome criterion_9_mass_conservation() {
    Outcome out;
    FullRun lin = linear_run();
    double drift_lin = 0.0;
    const double m_lin = lin.solver.total_mass(lin.states.front());
    for (const auto& s : lin.states) {
        drift_lin = std::max(drift_lin, std::abs(lin.solver.total_mass(s) - m_lin));
    }
    const double rel_lin = drift_lin / (1.0 + std::abs(m_lin));
    out.require(rel_lin <= 1e-6);

    FullRun smooth = smooth_run();
    double drift_bur = 0.0;
    const double m_bur = smooth.solver.total_mass(smooth.states.front());
    for (const auto& s : smooth.states) {
        drift_bur = std::max(drift_bur, std::abs(smooth.solver.total_mass(s) - m_bur));
    }
    const double rel_bur = drift_bur / (1.0 + std::abs(m_bur));
    out.require(rel_bur <= 1e-3);

    out << "relative mass drift: linear " << rel_lin << " (tol 1e-6), burgers " << rel_bur
        << " (tol 1e-3)";
    return out;
}

Outcome criterion_10_cfl() {
    Outcome out;
    SolverConfig cfg = preset_solver_config("burgers-smooth");
    cfg.scheme = Scheme::explicit_euler;
    cfg.dt = 10.0 * cfg.epsilon;
    RelaxationSolver loose(BasisFamily(cfg.n_basis), FluxDescriptor::burgers(), cfg);

    double sup_before_half = 0.0;
    bool blew_up = false;
    try {
        loose.integrate(InitialCondition::shifted_sine(), 0.5,
                        [&](const CoefficientState& s) {
                            sup_before_half =
                                std::max({sup_before_half, s.alpha_plus.cwiseAbs().maxCoeff(),
                                          s.alpha_minus.cwiseAbs().maxCoeff()});
                        });
    } catch (const SolverError&) {
        blew_up = true;  // non-finite state aborted the march
    }
    out.require(blew_up || sup_before_half > 1e3);
    out.require(sup_before_half > 1e3);

    // the same explicit scheme at dt = eps/2 stays bounded over the full horizon
    SolverConfig tight = preset_solver_config("burgers-smooth");
    tight.scheme = Scheme::explicit_euler;
    FullRun stable = make_run("smooth_explicit", FluxDescriptor::burgers(),
                              InitialCondition::shifted_sine(), tight, 1.0);
    double sup_stable = 0.0;
    for (const auto& s : stable.states) {
        sup_stable = std::max({sup_stable, s.alpha_plus.cwiseAbs().maxCoeff(),
                               s.alpha_minus.cwiseAbs().maxCoeff()});
    }
    out.require(sup_stable < 1e3);
    out.require(std::isfinite(sup_stable));

    // the semi-implicit run of criterion 4 is bounded as well
    FullRun semi = smooth_run();
    double sup_semi = 0.0;
    for (const auto& s : semi.states) {
        sup_semi = std::max({sup_semi, s.alpha_plus.cwiseAbs().maxCoeff(),
                             s.alpha_minus.cwiseAbs().maxCoeff()});
    }
    out.require(sup_semi < 1e3);

    out << "explicit dt=10eps: sup|alpha|=" << sup_before_half << " before T/2"
        << (blew_up ? " (aborted non-finite)" : "") << " (> 1e3); explicit dt=eps/2 sup="
        << sup_stable << ", semi-implicit dt=eps/2 sup=" << sup_semi << " (both < 1e3)";
    return out;
}

Outcome criterion_11_epsilon_refinement() {
    Outcome out;
    const double T = 0.3, a = 1.0;
    const GridFunction exact = exact_burgers_riemann(a, T, 2000);
    std::vector<double> errors;
    for (double eps : {4e-3, 2e-3, 1e-3}) {
        SolverConfig cfg = preset_solver_config("burgers-strong");
        cfg.epsilon = eps;
        cfg.rho = eps;
        // fixed step across the sweep: keeps every run inside the dt <= C eps
        // stability region of this datum and isolates the epsilon effect
        cfg.dt = 1e-4;
        std::ostringstream name;
        name << "strong_eps" << static_cast<int>(eps * 1e4);
        FullRun run = make_run(name.str(), FluxDescriptor::burgers(), InitialCondition::step(a),
                               cfg, T);
        const GridFunction u = sample_run(run, run.final_state, 2000);
        errors.push_back(error_norms(u, exact).l1);
    }
    out.require(errors[1] < errors[0]);
    out.require(errors[2] < errors[1]);
    out << "L1 error vs exact riemann at T=0.3 (dt=1e-4) for eps {4e-3, 2e-3, 1e-3}: "
        << errors[0] << " > " << errors[1] << " > " << errors[2] << " (monotone decrease)";
    return out;
}

Outcome criterion_12_generalization() {
    Outcome out;
    FullRun smooth = smooth_run();
    FullRun strong = strong_run();
    const Trajectory t_smooth = smooth.trajectory();
    const Trajectory t_strong = strong.trajectory();

    // qualitative singular-value ordering: the smooth run decays faster
    const SnapshotSet set_smooth = collect_snapshots({&t_smooth});
    const SnapshotSet set_strong = collect_snapshots({&t_strong});
    const ReducedBasisPair pod_smooth = pod(set_smooth, 40);
    const ReducedBasisPair pod_strong = pod(set_strong, 40);
    const double rel_smooth =
        pod_smooth.singular_values_plus[39] / pod_smooth.singular_values_plus[0];
    const double rel_strong =
        pod_strong.singular_values_plus[39] / pod_strong.singular_values_plus[0];
    out.require(rel_smooth < rel_strong);

    // combined training basis, unseen initial condition
    const SnapshotSet combined = collect_snapshots({&t_smooth, &t_strong});
    const ReducedBasisPair basis = pod(combined, 80);

    const double a = 0.2, T = 0.3;
    SolverConfig cfg = preset_solver_config("burgers-mixed");
    RelaxationSolver full(BasisFamily(cfg.n_basis), FluxDescriptor::burgers(), cfg);
    ReducedRelaxationSolver reduced(full, basis);
    const ReducedIntegrationResult rres = reduced.integrate(InitialCondition::combined(a), T);
    const GridFunction u_red = reduced.sample_u(rres.final_state, 320);

    FvConfig fvc;
    fvc.lambda = 2.0;
    fvc.epsilon = 1e-3;
    fvc.n_cells = 320;
    fvc.order = 2;
    const FvResult fv =
        fv_relaxation_solve(InitialCondition::combined(a), FluxDescriptor::burgers(), fvc, T);

    const double l1 = error_norms(u_red, fv.final_frame()).l1;
    out.require(l1 <= 0.1);

    const double thresh = 0.5 * a;
    const double loc_red = shock_location_centroid(u_red, thresh);
    const double loc_fv = shock_location_centroid(fv.final_frame(), thresh);
    const double dx = 2.0 / cfg.n_basis;
    const double loc_diff = std::abs(wrap(loc_red - loc_fv));
    out.require(loc_diff <= 2.0 * dx);

    out << "sigma40/sigma1 measured: smooth=" << rel_smooth << ", step=" << rel_strong
        << " (required smooth < step); L1(reduced r=80 vs fv)=" << l1
        << " (tol 0.1); shock location diff=" << loc_diff << " (tol " << 2.0 * dx << ")";
    return out;
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "linear-exactness", criterion_1_linear_exactness},
    {2, "linear-relax-reproduction", criterion_2_linear_relax_reproduction},
    {3, "riccati-source", criterion_3_riccati},
    {4, "burgers-smooth-vs-fv", criterion_4_burgers_smooth_vs_fv},
    {5, "shock-speed", criterion_5_shock_speed},
    {6, "singularity-structure", criterion_6_singularity_structure},
    {7, "circulant-identities", criterion_7_circulant_identities},
    {8, "dense-oracle-steps", criterion_8_dense_oracle_steps},
    {9, "mass-conservation", criterion_9_mass_conservation},
    {10, "cfl-restriction", criterion_10_cfl},
    {11, "epsilon-refinement", criterion_11_epsilon_refinement},
    {12, "generalization", criterion_12_generalization},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--cache") == 0 && i + 1 < argc) {
            g_cache = argv[++i];
        } else {
            std::cerr << "usage: acceptance [--criterion K] [--cache DIR]\n";
            return 64;
        }
    }

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const double t0 = now_seconds();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out << "exception: " << e.what();
        }
        const double wall = now_seconds() - t0;
        std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << "C" << c.id << " " << c.name << ": "
                  << out.detail.str() << " [" << wall << "s]" << std::endl;
        if (!out.pass) ++failures;
    }
    return failures;
}
