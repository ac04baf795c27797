// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "core/comoving.hpp"
#include "core/csv_io.hpp"
#include "core/errors.hpp"
#include "core/reference.hpp"
#include "core/rom.hpp"
#include "core/torus.hpp"

namespace rxm {
namespace {

constexpr const char* kPresetNames[] = {"riccati", "linear-relax", "burgers-smooth",
                                        "burgers-strong", "burgers-mixed"};

std::string to_string(FluxKind f) { return f == FluxKind::linear ? "linear" : "burgers"; }

std::string to_string(IcKind ic) {
    switch (ic) {
        case IcKind::sine: return "sine";
        case IcKind::shifted_sine: return "shifted_sine";
        case IcKind::gauss_bump: return "gauss_bump";
        case IcKind::step: return "step";
        case IcKind::combined: return "combined";
    }
    return "?";
}

std::string to_string(SolverKind s) { return s == SolverKind::relaxation ? "relaxation" : "comoving"; }
std::string to_string(Scheme s) { return s == Scheme::semi_implicit ? "semi_implicit" : "explicit"; }
std::string to_string(RegularizationMode m) {
    return m == RegularizationMode::always ? "always" : "adaptive";
}

double parse_double(const std::string& v, const std::string& key, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value '" + v + "' for key '" + key + "'" + where);
    }
}

int parse_int(const std::string& v, const std::string& key, const std::string& where) {
    const double x = parse_double(v, key, where);
    if (std::abs(x - std::llround(x)) > 1e-9) {
        throw ConfigError("expected integer value for key '" + key + "'" + where);
    }
    return static_cast<int>(std::llround(x));
}

bool parse_bool(const std::string& v, const std::string& key, const std::string& where) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("invalid boolean value '" + v + "' for key '" + key + "'" + where);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> ExperimentConfig::preset_names() {
    return {std::begin(kPresetNames), std::end(kPresetNames)};
}

ExperimentConfig ExperimentConfig::preset(const std::string& name) {
    ExperimentConfig c;
    c.preset_name = name;
    if (name == "riccati") {
        c.solver = SolverKind::comoving;
        c.flux = FluxKind::linear;
        c.ic = IcKind::gauss_bump;
        c.lambda = 1.0;
        c.time_horizon = 0.5;
        c.n_basis = 100;
        c.rank = 30;
        c.snapshot_stride = 5;
        c.comoving_dt = 1e-3;
        c.source_gamma = 2.0;
        c.source_delta = 1.0;
    } else if (name == "linear-relax") {
        c.solver = SolverKind::relaxation;
        c.flux = FluxKind::linear;
        c.ic = IcKind::sine;
        c.lambda = 1.0;
        c.epsilon = 1e-3;
        c.rho = 1e-3;
        c.dt = 5e-4;
        c.time_horizon = 1.0;
        c.n_basis = 40;
        c.rank = 2;
        c.fv_cells = 200;
    } else if (name == "burgers-smooth") {
        c.flux = FluxKind::burgers;
        c.ic = IcKind::shifted_sine;
        c.lambda = 2.0;
        c.epsilon = 1e-3;
        c.rho = 1e-3;
        c.dt = 5e-4;
        c.time_horizon = 1.0;
        c.n_basis = 160;
        c.rank = 40;
        c.fv_cells = 320;
    } else if (name == "burgers-strong") {
        c.flux = FluxKind::burgers;
        c.ic = IcKind::step;
        c.ic_amplitude = 1.0;
        c.lambda = 2.0;
        c.epsilon = 1e-3;
        c.rho = 1e-3;
        c.dt = 1e-4;
        c.time_horizon = 0.6;
        c.n_basis = 160;
        c.rank = 80;
        c.fv_cells = 320;
    } else if (name == "burgers-mixed") {
        c.flux = FluxKind::burgers;
        c.ic = IcKind::combined;
        c.ic_amplitude = 0.2;
        c.lambda = 2.0;
        c.epsilon = 1e-3;
        c.rho = 1e-3;
        c.dt = 1e-4;
        c.time_horizon = 0.3;
        c.n_basis = 160;
        c.rank = 80;
        c.fv_cells = 320;
        c.training = {"burgers-smooth", "burgers-strong"};
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return c;
}

void ExperimentConfig::set(const std::string& key, const std::string& value,
                           const std::string& where) {
    if (key == "preset") {
        *this = preset(value);
    } else if (key == "solver") {
        if (value == "relaxation") solver = SolverKind::relaxation;
        else if (value == "comoving") solver = SolverKind::comoving;
        else throw ConfigError("invalid solver '" + value + "'" + where);
    } else if (key == "flux") {
        if (value == "linear") flux = FluxKind::linear;
        else if (value == "burgers") flux = FluxKind::burgers;
        else throw ConfigError("invalid flux '" + value + "'" + where);
    } else if (key == "initial_condition") {
        if (value == "sine") ic = IcKind::sine;
        else if (value == "shifted_sine") ic = IcKind::shifted_sine;
        else if (value == "gauss_bump") ic = IcKind::gauss_bump;
        else if (value == "step") ic = IcKind::step;
        else if (value == "combined") ic = IcKind::combined;
        else throw ConfigError("invalid initial_condition '" + value + "'" + where);
    } else if (key == "ic_amplitude") {
        ic_amplitude = parse_double(value, key, where);
    } else if (key == "lambda") {
        lambda = parse_double(value, key, where);
    } else if (key == "epsilon") {
        epsilon = parse_double(value, key, where);
    } else if (key == "rho") {
        rho = parse_double(value, key, where);
    } else if (key == "dt") {
        dt = parse_double(value, key, where);
    } else if (key == "time_horizon") {
        time_horizon = parse_double(value, key, where);
    } else if (key == "n_basis") {
        n_basis = parse_int(value, key, where);
    } else if (key == "scheme") {
        if (value == "semi_implicit") scheme = Scheme::semi_implicit;
        else if (value == "explicit") scheme = Scheme::explicit_euler;
        else throw ConfigError("invalid scheme '" + value + "'" + where);
    } else if (key == "rank") {
        rank = parse_int(value, key, where);
    } else if (key == "snapshot_stride") {
        snapshot_stride = parse_int(value, key, where);
    } else if (key == "fv_cells") {
        fv_cells = parse_int(value, key, where);
    } else if (key == "fv_order") {
        fv_order = parse_int(value, key, where);
    } else if (key == "quad_nodes") {
        quad_nodes = parse_int(value, key, where);
    } else if (key == "sigma_tol") {
        sigma_tol = parse_double(value, key, where);
    } else if (key == "reg_mode") {
        if (value == "always") reg_mode = RegularizationMode::always;
        else if (value == "adaptive") reg_mode = RegularizationMode::adaptive;
        else throw ConfigError("invalid reg_mode '" + value + "'" + where);
    } else if (key == "allow_subchar_violation") {
        allow_subchar_violation = parse_bool(value, key, where);
    } else if (key == "degenerate_basis") {
        degenerate_basis = parse_bool(value, key, where);
    } else if (key == "output_points") {
        output_points = parse_int(value, key, where);
    } else if (key == "output_times") {
        output_times.clear();
        std::string item;
        std::istringstream in(value);
        while (std::getline(in, item, ';')) {
            item = trim(item);
            if (!item.empty()) output_times.push_back(parse_double(item, key, where));
        }
    } else if (key == "seed") {
        seed = static_cast<unsigned>(parse_int(value, key, where));
    } else if (key == "output_dir") {
        output_dir = value;
    } else if (key == "source_gamma") {
        source_gamma = parse_double(value, key, where);
    } else if (key == "source_delta") {
        source_delta = parse_double(value, key, where);
    } else if (key == "comoving_dt") {
        comoving_dt = parse_double(value, key, where);
    } else {
        throw ConfigError("unknown key '" + key + "'" + where);
    }
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    bool saw_key = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = " (" + path + ":" + std::to_string(line_no) + ")";
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value'" + where);
        }
        const std::string key = trim(line.substr(0, eq));
        // loading a preset resets the whole configuration, so it must come first
        if (key == "preset" && saw_key) {
            throw ConfigError("'preset' must be the first key" + where);
        }
        cfg.set(key, trim(line.substr(eq + 1)), where);
        saw_key = true;
    }
    return cfg;
}

void ExperimentConfig::validate() const {
    if (!lambda) throw ConfigError("missing required field: lambda");
    if (!time_horizon) throw ConfigError("missing required field: time_horizon");
    if (!n_basis) throw ConfigError("missing required field: n_basis");
    if (solver == SolverKind::relaxation) {
        if (!epsilon) throw ConfigError("missing required field: epsilon");
        if (!dt) throw ConfigError("missing required field: dt");
        if (!(*epsilon > 0.0)) throw ConfigError("epsilon must be positive");
        if (!(*dt > 0.0)) throw ConfigError("dt must be positive");
    } else {
        if (!(comoving_dt > 0.0)) throw ConfigError("comoving_dt must be positive");
    }
    if (!(*lambda > 0.0)) throw ConfigError("lambda must be positive");
    if (!(*time_horizon >= 0.0)) throw ConfigError("time_horizon must be nonnegative");
    if (*n_basis < 2) throw ConfigError("n_basis must be at least 2");
    if (rank && (*rank < 1 || *rank > *n_basis)) {
        throw ConfigError("rank must be in [1, n_basis]");
    }
    if (snapshot_stride < 1) throw ConfigError("snapshot_stride must be positive");
    if (fv_cells < 4) throw ConfigError("fv_cells must be at least 4");
    if (fv_order != 1 && fv_order != 2) throw ConfigError("fv_order must be 1 or 2");
    if (quad_nodes < 1 || quad_nodes > 32) throw ConfigError("quad_nodes must be in [1, 32]");
    if (!(sigma_tol > 0.0)) throw ConfigError("sigma_tol must be positive");
    if (output_points < 8) throw ConfigError("output_points must be at least 8");
    for (double t : output_times) {
        if (t < 0.0 || t > *time_horizon + 1e-12) {
            throw ConfigError("output_times must lie within [0, time_horizon]");
        }
    }
}

std::string ExperimentConfig::echo() const {
    std::ostringstream out;
    auto opt = [](const auto& v) { return v ? format_g17(static_cast<double>(*v)) : "unset"; };
    out << "preset = " << (preset_name.empty() ? "(none)" : preset_name) << "\n"
        << "solver = " << to_string(solver) << "\n"
        << "flux = " << to_string(flux) << "\n"
        << "initial_condition = " << to_string(ic) << "\n"
        << "ic_amplitude = " << format_g17(ic_amplitude) << "\n"
        << "lambda = " << opt(lambda) << "\n"
        << "epsilon = " << opt(epsilon) << "\n"
        << "rho = " << (rho ? format_g17(*rho) : opt(epsilon) + " (default epsilon)") << "\n"
        << "dt = " << opt(dt) << "\n"
        << "time_horizon = " << opt(time_horizon) << "\n"
        << "n_basis = " << opt(n_basis) << "\n"
        << "scheme = " << to_string(scheme) << "\n"
        << "rank = " << opt(rank) << "\n"
        << "snapshot_stride = " << snapshot_stride << "\n"
        << "fv_cells = " << fv_cells << "\n"
        << "fv_order = " << fv_order << "\n"
        << "quad_nodes = " << quad_nodes << "\n"
        << "sigma_tol = " << format_g17(sigma_tol) << "\n"
        << "reg_mode = " << to_string(reg_mode) << "\n"
        << "allow_subchar_violation = " << (allow_subchar_violation ? "true" : "false") << "\n"
        << "degenerate_basis = " << (degenerate_basis ? "true" : "false") << "\n"
        << "output_points = " << output_points << "\n";
    out << "output_times =";
    if (output_times.empty()) {
        out << " 0; " << opt(time_horizon) << " (default)";
    } else {
        for (std::size_t i = 0; i < output_times.size(); ++i) {
            out << (i ? "; " : " ") << format_g17(output_times[i]);
        }
    }
    out << "\nseed = " << seed << "\n"
        << "source_gamma = " << format_g17(source_gamma) << "\n"
        << "source_delta = " << format_g17(source_delta) << "\n"
        << "comoving_dt = " << format_g17(comoving_dt) << "\n";
    if (!training.empty()) {
        out << "training =";
        for (std::size_t i = 0; i < training.size(); ++i) out << (i ? "; " : " ") << training[i];
        out << "\n";
    }
    return out.str();
}

BasisFamily ExperimentConfig::make_family() const { return BasisFamily(*n_basis); }

FluxDescriptor ExperimentConfig::make_flux() const {
    return flux == FluxKind::linear ? FluxDescriptor::linear(*lambda) : FluxDescriptor::burgers();
}

InitialCondition ExperimentConfig::make_ic() const {
    switch (ic) {
        case IcKind::sine: {
            const double a = ic_amplitude;
            if (a == 1.0) return InitialCondition::sine();
            return {[a](double x) { return a * std::sin(std::numbers::pi * x); }, {}, "sine"};
        }
        case IcKind::shifted_sine: return InitialCondition::shifted_sine();
        case IcKind::gauss_bump: return InitialCondition::gauss_bump();
        case IcKind::step: return InitialCondition::step(ic_amplitude);
        case IcKind::combined: return InitialCondition::combined(ic_amplitude);
    }
    throw ConfigError("unreachable initial condition kind");
}

SolverConfig ExperimentConfig::make_solver_config() const {
    SolverConfig s;
    s.lambda = *lambda;
    s.epsilon = epsilon.value_or(1e-3);
    s.rho = rho.value_or(s.epsilon);
    s.dt = dt.value_or(s.epsilon / 2.0);
    s.n_basis = *n_basis;
    s.scheme = scheme;
    s.quad.nodes_per_interval = quad_nodes;
    s.sigma_tol = sigma_tol;
    s.snapshot_stride = snapshot_stride;
    s.reg_mode = reg_mode;
    s.allow_subchar_violation = allow_subchar_violation;
    return s;
}

// ---------------------------------------------------------------------------
// experiment runners
// ---------------------------------------------------------------------------

namespace {

namespace fs = std::filesystem;

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + dir);
}

std::string time_suffix(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "_t%.3f", t);
    return buf;
}

std::vector<double> resolved_output_times(const ExperimentConfig& cfg) {
    if (!cfg.output_times.empty()) return cfg.output_times;
    return {0.0, *cfg.time_horizon};
}

/// Exact reference at time t when the setup admits one.
std::optional<GridFunction> exact_solution(const ExperimentConfig& cfg, double t, int n_cells) {
    if (cfg.solver == SolverKind::comoving) {
        if (cfg.ic != IcKind::gauss_bump) return std::nullopt;
        RiccatiParams p{cfg.source_gamma, cfg.source_delta, *cfg.lambda,
                        InitialCondition::gauss_bump(), -0.5, 0.5};
        return exact_riccati(p, t, n_cells);
    }
    if (cfg.flux == FluxKind::linear) {
        InitialCondition u0 = cfg.make_ic();
        return exact_linear_advection(u0, *cfg.lambda, t, n_cells);
    }
    if (cfg.flux == FluxKind::burgers && cfg.ic == IcKind::step) {
        if (t < burgers_riemann_horizon(cfg.ic_amplitude)) {
            return exact_burgers_riemann(cfg.ic_amplitude, t, n_cells);
        }
    }
    return std::nullopt;
}

/// Jump detection threshold used for shock measurements, when the initial
/// condition carries a discontinuity (half the initial jump size).
std::optional<double> shock_threshold(const ExperimentConfig& cfg) {
    if (cfg.ic == IcKind::step || cfg.ic == IcKind::combined) {
        return 0.5 * std::abs(cfg.ic_amplitude);
    }
    return std::nullopt;
}

void compare_against(RunReport& rep, const std::string& tag, const GridFunction& got,
                     const GridFunction& want) {
    const ErrorNorms norms = error_norms(got, want);
    rep.metrics["l1_" + tag] = norms.l1;
    rep.metrics["l2_" + tag] = norms.l2;
    rep.metrics["linf_" + tag] = norms.linf;
}

std::string make_report_text(const std::string& kind, const ExperimentConfig& cfg,
                             const RunReport& rep) {
    std::ostringstream out;
    out << "# relaxmor run report\n"
        << "kind = " << kind << "\n\n"
        << "## configuration\n"
        << cfg.echo() << "\n## warnings\n";
    if (rep.warnings.empty()) out << "(none)\n";
    for (const auto& w : rep.warnings) out << "- " << w << "\n";
    out << "\n## metrics\n";
    for (const auto& [k, v] : rep.metrics) out << k << " = " << format_g17(v) << "\n";
    out << "\n## artifacts\n";
    for (const auto& a : rep.artifacts) out << "- " << a << "\n";
    return out.str();
}

void finish_report(RunReport& rep, const std::string& kind, const ExperimentConfig& cfg,
                   const std::string& out_dir) {
    rep.text = make_report_text(kind, cfg, rep);
    write_text(out_dir + "/report.txt", rep.text);
    rep.artifacts.push_back("report.txt");
}

Eigen::MatrixXd stack_states(const Trajectory& traj, bool plus) {
    const int n = static_cast<int>(traj.states.front().alpha_plus.size());
    Eigen::MatrixXd m(n, static_cast<Eigen::Index>(traj.states.size()));
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        m.col(static_cast<Eigen::Index>(k)) =
            plus ? traj.states[k].alpha_plus : traj.states[k].alpha_minus;
    }
    return m;
}

RunReport run_full_comoving(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunReport rep;
    const auto t0 = std::chrono::steady_clock::now();
    BasisFamily fam = cfg.make_family();
    ComovingSourceSolver solver(fam, *cfg.lambda, {cfg.source_gamma, cfg.source_delta},
                                QuadratureRule{cfg.quad_nodes, 16});
    InitialCondition ic = cfg.make_ic();
    const double T = *cfg.time_horizon;

    ScalarTrajectory traj = solver.integrate(ic, T, cfg.comoving_dt, cfg.snapshot_stride);
    rep.metrics["wall_solve_seconds"] = seconds_since(t0);

    std::vector<double> mass_t, mass_v;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        mass_t.push_back(traj.times[k]);
        mass_v.push_back(traj.coefficients.col(static_cast<Eigen::Index>(k)).sum() *
                         fam.integral_per_function());
    }
    write_csv(out_dir + "/mass.csv", {"t", "mass"}, {mass_t, mass_v});
    rep.artifacts.push_back("mass.csv");

    for (double t_out : resolved_output_times(cfg)) {
        // nearest stored column
        std::size_t best = 0;
        for (std::size_t k = 1; k < traj.times.size(); ++k) {
            if (std::abs(traj.times[k] - t_out) < std::abs(traj.times[best] - t_out)) best = k;
        }
        const GridFunction g = solver.sample(traj.coefficients.col(static_cast<Eigen::Index>(best)),
                                             traj.times[best], cfg.output_points);
        const std::string name = "solution_full" + time_suffix(t_out) + ".csv";
        write_grid_csv(out_dir + "/" + name, g);
        rep.artifacts.push_back(name);
    }

    write_matrix(out_dir + "/snapshots.mat", traj.coefficients);
    rep.artifacts.push_back("snapshots.mat");

    const Eigen::Index last = traj.coefficients.cols() - 1;
    const GridFunction final_u =
        solver.sample(traj.coefficients.col(last), traj.times.back(), cfg.output_points);
    if (auto exact = exact_solution(cfg, traj.times.back(), cfg.output_points)) {
        compare_against(rep, "full_vs_exact", final_u, *exact);
    }
    rep.metrics["wall_total_seconds"] = seconds_since(t0);
    finish_report(rep, "run-full", cfg, out_dir);
    return rep;
}

}  // namespace

RunReport run_full(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    ensure_dir(out_dir);
    if (cfg.solver == SolverKind::comoving) return run_full_comoving(cfg, out_dir);

    RunReport rep;
    const auto t0 = std::chrono::steady_clock::now();
    BasisFamily fam = cfg.make_family();
    FluxDescriptor fx = cfg.make_flux();
    InitialCondition ic = cfg.make_ic();
    const SolverConfig scfg = cfg.make_solver_config();
    RelaxationSolver solver(fam, fx, scfg);
    const double T = *cfg.time_horizon;

    const SubcharacteristicReport sub = check_subcharacteristic(ic, fx, scfg.lambda);
    rep.metrics["subchar_margin"] = sub.margin;

    const std::vector<double> out_times = resolved_output_times(cfg);
    std::vector<long long> want_steps;
    for (double t : out_times) want_steps.push_back(std::llround(t / scfg.dt));
    std::map<long long, CoefficientState> captured;
    long long counter = -1;
    auto observer = [&](const CoefficientState& s) {
        ++counter;
        if (std::find(want_steps.begin(), want_steps.end(), counter) != want_steps.end()) {
            captured[counter] = s;
        }
    };

    IntegrationResult res = solver.integrate(ic, T, observer);
    rep.warnings = res.warnings;
    rep.metrics["wall_solve_seconds"] = seconds_since(t0);
    rep.metrics["sup_alpha"] = res.max_sup_norm;

    for (std::size_t i = 0; i < out_times.size(); ++i) {
        auto it = captured.find(want_steps[i]);
        if (it == captured.end()) continue;
        const GridFunction g = solver.sample_u(it->second, cfg.output_points);
        const std::string name = "solution_full" + time_suffix(out_times[i]) + ".csv";
        write_grid_csv(out_dir + "/" + name, g);
        rep.artifacts.push_back(name);
    }

    std::vector<double> mass_t, mass_v;
    for (const auto& s : res.trajectory.states) {
        mass_t.push_back(s.t);
        mass_v.push_back(solver.total_mass(s));
    }
    write_csv(out_dir + "/mass.csv", {"t", "mass"}, {mass_t, mass_v});
    rep.artifacts.push_back("mass.csv");
    const double m0 = mass_v.front();
    double drift = 0.0;
    for (double m : mass_v) drift = std::max(drift, std::abs(m - m0));
    rep.metrics["mass_drift_rel"] = drift / (1.0 + std::abs(m0));

    write_matrix(out_dir + "/snapshots_plus.mat", stack_states(res.trajectory, true));
    write_matrix(out_dir + "/snapshots_minus.mat", stack_states(res.trajectory, false));
    rep.artifacts.push_back("snapshots_plus.mat");
    rep.artifacts.push_back("snapshots_minus.mat");

    const GridFunction final_u = solver.sample_u(res.final_state, cfg.output_points);
    if (auto exact = exact_solution(cfg, res.final_state.t, cfg.output_points)) {
        compare_against(rep, "full_vs_exact", final_u, *exact);
    }
    if (auto thresh = shock_threshold(cfg)) {
        std::vector<double> frame_times;
        std::vector<GridFunction> frames;
        for (const auto& s : res.trajectory.states) {
            frame_times.push_back(s.t);
            frames.push_back(solver.sample_u(s, cfg.output_points));
        }
        try {
            rep.metrics["shock_speed_full"] = shock_speed_estimate(frame_times, frames, *thresh);
            rep.metrics["shock_position_full"] = shock_location(frames.back(), *thresh);
            rep.metrics["jump_full"] = jump_magnitude(frames.back(), *thresh);
        } catch (const SolverError&) {
            rep.warnings.push_back("no trackable shock found for speed estimate");
        }
    }

    rep.metrics["wall_total_seconds"] = seconds_since(t0);
    finish_report(rep, "run-full", cfg, out_dir);
    return rep;
}

RunReport run_pod(const ExperimentConfig& cfg, const std::vector<std::string>& training_dirs,
                  const std::string& out_dir) {
    cfg.validate();
    if (!cfg.rank) throw ConfigError("missing required field: rank");
    if (training_dirs.empty()) throw ConfigError("run-pod: need at least one training directory");
    ensure_dir(out_dir);

    RunReport rep;
    const auto t0 = std::chrono::steady_clock::now();

    auto load_concat = [&](const std::string& file) {
        Eigen::MatrixXd all;
        for (const auto& dir : training_dirs) {
            Eigen::MatrixXd m = read_matrix(dir + "/" + file);
            if (m.rows() != *cfg.n_basis) {
                throw ConfigError("run-pod: snapshot rows of " + dir + "/" + file +
                                  " do not match n_basis");
            }
            if (all.size() == 0) {
                all = m;
            } else {
                Eigen::MatrixXd joined(all.rows(), all.cols() + m.cols());
                joined << all, m;
                all = std::move(joined);
            }
        }
        return all;
    };

    std::vector<double> idx_col, sigma_col, rel_col, family_col;
    auto append_family = [&](const Eigen::VectorXd& sv, double family_id) {
        const double top = sv.size() > 0 ? sv[0] : 0.0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            idx_col.push_back(static_cast<double>(i + 1));
            family_col.push_back(family_id);
            sigma_col.push_back(sv[i]);
            rel_col.push_back(top > 0.0 ? sv[i] / top : 0.0);
        }
    };

    if (cfg.solver == SolverKind::comoving) {
        const Eigen::MatrixXd snaps = load_concat("snapshots.mat");
        const ReducedBasis basis = pod_single(snaps, *cfg.rank);
        write_matrix(out_dir + "/basis.mat", basis.v);
        rep.artifacts.push_back("basis.mat");
        append_family(basis.singular_values, 0.0);
        rep.metrics["snapshot_count"] = static_cast<double>(snaps.cols());
    } else {
        SnapshotSet set;
        set.plus = load_concat("snapshots_plus.mat");
        set.minus = load_concat("snapshots_minus.mat");
        const ReducedBasisPair basis = pod(set, *cfg.rank);
        write_matrix(out_dir + "/basis_plus.mat", basis.v_plus);
        write_matrix(out_dir + "/basis_minus.mat", basis.v_minus);
        rep.artifacts.push_back("basis_plus.mat");
        rep.artifacts.push_back("basis_minus.mat");
        append_family(basis.singular_values_plus, +1.0);
        append_family(basis.singular_values_minus, -1.0);
        rep.metrics["snapshot_count"] = static_cast<double>(set.count());
        const Eigen::VectorXd& sv = basis.singular_values_plus;
        if (sv.size() >= 40 && sv[0] > 0.0) {
            rep.metrics["sigma_rel_plus_40"] = sv[39] / sv[0];
        }
    }
    write_csv(out_dir + "/singular_values.csv", {"index", "family", "sigma", "sigma_rel"},
              {idx_col, family_col, sigma_col, rel_col});
    rep.artifacts.push_back("singular_values.csv");
    rep.metrics["rank"] = static_cast<double>(*cfg.rank);
    rep.metrics["wall_total_seconds"] = seconds_since(t0);
    finish_report(rep, "run-pod", cfg, out_dir);
    return rep;
}

namespace {

ReducedBasisPair load_basis_pair(const ExperimentConfig& cfg, const std::string& basis_dir) {
    if (cfg.degenerate_basis) {
        return ReducedBasisPair::zero(*cfg.n_basis, cfg.rank.value_or(1));
    }
    if (basis_dir.empty()) throw ConfigError("run-reduced: basis directory required");
    ReducedBasisPair basis;
    basis.v_plus = read_matrix(basis_dir + "/basis_plus.mat");
    basis.v_minus = read_matrix(basis_dir + "/basis_minus.mat");
    if (basis.v_plus.rows() != *cfg.n_basis || basis.v_minus.rows() != *cfg.n_basis) {
        throw ConfigError("run-reduced: basis dimension does not match n_basis");
    }
    if (cfg.rank && *cfg.rank < basis.v_plus.cols()) {
        basis.v_plus = basis.v_plus.leftCols(*cfg.rank).eval();
        basis.v_minus = basis.v_minus.leftCols(*cfg.rank).eval();
    } else if (cfg.rank && *cfg.rank > basis.v_plus.cols()) {
        throw ConfigError("run-reduced: requested rank exceeds stored basis rank");
    }
    basis.singular_values_plus = Eigen::VectorXd::Zero(basis.v_plus.cols());
    basis.singular_values_minus = Eigen::VectorXd::Zero(basis.v_minus.cols());
    return basis;
}

}  // namespace

RunReport run_reduced(const ExperimentConfig& cfg, const std::string& basis_dir,
                      const std::string& out_dir) {
    cfg.validate();
    ensure_dir(out_dir);
    RunReport rep;
    const auto t0 = std::chrono::steady_clock::now();
    const double T = *cfg.time_horizon;

    if (cfg.solver == SolverKind::comoving) {
        BasisFamily fam = cfg.make_family();
        ComovingSourceSolver solver(fam, *cfg.lambda, {cfg.source_gamma, cfg.source_delta},
                                    QuadratureRule{cfg.quad_nodes, 16});
        ReducedBasis basis;
        if (cfg.degenerate_basis) {
            basis.v = Eigen::MatrixXd::Zero(*cfg.n_basis, cfg.rank.value_or(1));
        } else {
            if (basis_dir.empty()) throw ConfigError("run-reduced: basis directory required");
            basis.v = read_matrix(basis_dir + "/basis.mat");
            if (basis.v.rows() != *cfg.n_basis) {
                throw ConfigError("run-reduced: basis dimension does not match n_basis");
            }
            if (cfg.rank && *cfg.rank <= basis.v.cols()) basis.v = basis.v.leftCols(*cfg.rank).eval();
        }
        ScalarTrajectory traj =
            solver.integrate_reduced(cfg.make_ic(), T, cfg.comoving_dt, basis, cfg.snapshot_stride);
        const Eigen::Index last = traj.coefficients.cols() - 1;
        const GridFunction u_red =
            solver.sample(traj.coefficients.col(last), traj.times.back(), cfg.output_points);
        write_grid_csv(out_dir + "/solution_reduced" + time_suffix(traj.times.back()) + ".csv", u_red);
        rep.artifacts.push_back("solution_reduced" + time_suffix(traj.times.back()) + ".csv");

        std::vector<double> xs, ur, ue;
        std::optional<GridFunction> exact = exact_solution(cfg, traj.times.back(), cfg.output_points);
        for (int i = 0; i < u_red.n_cells(); ++i) {
            xs.push_back(u_red.center(i));
            ur.push_back(u_red.values[i]);
            if (exact) ue.push_back(exact->values[i]);
        }
        if (exact) {
            write_csv(out_dir + "/compare.csv", {"x", "u_reduced", "u_exact"}, {xs, ur, ue});
            compare_against(rep, "reduced_vs_exact", u_red, *exact);
        } else {
            write_csv(out_dir + "/compare.csv", {"x", "u_reduced"}, {xs, ur});
        }
        rep.artifacts.push_back("compare.csv");
        rep.metrics["wall_total_seconds"] = seconds_since(t0);
        finish_report(rep, "run-reduced", cfg, out_dir);
        return rep;
    }

    BasisFamily fam = cfg.make_family();
    FluxDescriptor fx = cfg.make_flux();
    InitialCondition ic = cfg.make_ic();
    RelaxationSolver full(fam, fx, cfg.make_solver_config());
    ReducedBasisPair basis = load_basis_pair(cfg, basis_dir);

    const bool degenerate = basis.v_plus.norm() == 0.0 && basis.v_minus.norm() == 0.0;
    if (degenerate) {
        rep.warnings.push_back("degenerate (all-zero) basis: the reduced solution is identically zero");
        rep.metrics["degenerate_basis_used"] = 1.0;
    }

    ReducedRelaxationSolver reduced(full, basis);
    ReducedIntegrationResult res = reduced.integrate(ic, T);
    rep.warnings.insert(rep.warnings.end(), res.warnings.begin(), res.warnings.end());
    rep.metrics["wall_solve_seconds"] = seconds_since(t0);

    const GridFunction u_red = reduced.sample_u(res.final_state, cfg.output_points);
    const std::string sol_name = "solution_reduced" + time_suffix(res.final_state.t) + ".csv";
    write_grid_csv(out_dir + "/" + sol_name, u_red);
    rep.artifacts.push_back(sol_name);

    std::vector<double> xs, ur;
    for (int i = 0; i < u_red.n_cells(); ++i) {
        xs.push_back(u_red.center(i));
        ur.push_back(u_red.values[i]);
    }
    std::vector<std::string> header{"x", "u_reduced"};
    std::vector<std::vector<double>> columns{xs, ur};

    if (cfg.flux == FluxKind::burgers) {
        FvConfig fv;
        fv.lambda = *cfg.lambda;
        fv.epsilon = cfg.epsilon.value_or(1e-3);
        fv.n_cells = cfg.fv_cells;
        fv.order = cfg.fv_order;
        const FvResult fv_res = fv_relaxation_solve(ic, fx, fv, T);
        GridFunction fv_on_out =
            GridFunction::sample([&](double x) { return fv_res.final_frame().interpolate(x); },
                                 cfg.output_points);
        header.push_back("u_fv");
        columns.push_back(std::vector<double>(fv_on_out.values.data(),
                                              fv_on_out.values.data() + fv_on_out.n_cells()));
        compare_against(rep, "reduced_vs_fv", u_red, fv_res.final_frame());
        if (auto thresh = shock_threshold(cfg)) {
            try {
                rep.metrics["shock_position_reduced"] = shock_location(u_red, *thresh);
                rep.metrics["shock_position_fv"] = shock_location(fv_res.final_frame(), *thresh);
            } catch (const SolverError&) {
                rep.warnings.push_back("no trackable shock found in reduced/fv comparison");
            }
        }
        rep.metrics["wall_fv_seconds"] = seconds_since(t0) - rep.metrics["wall_solve_seconds"];
    }
    if (auto exact = exact_solution(cfg, res.final_state.t, cfg.output_points)) {
        header.push_back("u_exact");
        columns.push_back(std::vector<double>(exact->values.data(),
                                              exact->values.data() + exact->n_cells()));
        compare_against(rep, "reduced_vs_exact", u_red, *exact);
    }
    write_csv(out_dir + "/compare.csv", header, columns);
    rep.artifacts.push_back("compare.csv");

    rep.metrics["wall_total_seconds"] = seconds_since(t0);
    finish_report(rep, "run-reduced", cfg, out_dir);
    return rep;
}

RunReport run_compare_fv(const ExperimentConfig& cfg, const std::string& out_dir,
                         const std::string& basis_dir) {
    cfg.validate();
    if (cfg.solver == SolverKind::comoving) {
        throw ConfigError("compare-fv: only available for the relaxation solver");
    }
    ensure_dir(out_dir);
    RunReport rep;
    const auto t0 = std::chrono::steady_clock::now();

    BasisFamily fam = cfg.make_family();
    FluxDescriptor fx = cfg.make_flux();
    InitialCondition ic = cfg.make_ic();
    RelaxationSolver full(fam, fx, cfg.make_solver_config());
    const double T = *cfg.time_horizon;

    IntegrationResult res = full.integrate(ic, T);
    rep.warnings = res.warnings;
    rep.metrics["wall_solve_seconds"] = seconds_since(t0);

    FvConfig fv;
    fv.lambda = *cfg.lambda;
    fv.epsilon = cfg.epsilon.value_or(1e-3);
    fv.n_cells = cfg.fv_cells;
    fv.order = cfg.fv_order;
    const FvResult fv_res = fv_relaxation_solve(ic, fx, fv, T);
    rep.metrics["wall_fv_seconds"] = seconds_since(t0) - rep.metrics["wall_solve_seconds"];

    // join on the FV grid
    const int n = fv.n_cells;
    const GridFunction u_full = full.sample_u(res.final_state, n);
    const GridFunction& u_fv = fv_res.final_frame();

    std::vector<double> xs, col_full, col_fv;
    for (int i = 0; i < n; ++i) {
        xs.push_back(u_full.center(i));
        col_full.push_back(u_full.values[i]);
        col_fv.push_back(u_fv.values[i]);
    }
    std::vector<std::string> header{"x", "u_full"};
    std::vector<std::vector<double>> columns{xs, col_full};

    std::optional<GridFunction> u_red;
    if (!basis_dir.empty() || cfg.degenerate_basis) {
        ReducedRelaxationSolver reduced(full, load_basis_pair(cfg, basis_dir));
        ReducedIntegrationResult rres = reduced.integrate(ic, T);
        u_red = reduced.sample_u(rres.final_state, n);
        header.push_back("u_reduced");
        columns.push_back(std::vector<double>(u_red->values.data(), u_red->values.data() + n));
        compare_against(rep, "reduced_vs_fv", *u_red, u_fv);
        compare_against(rep, "reduced_vs_full", *u_red, u_full);
    }
    header.push_back("u_fv");
    columns.push_back(col_fv);

    if (auto exact = exact_solution(cfg, T, n)) {
        header.push_back("u_exact");
        columns.push_back(std::vector<double>(exact->values.data(), exact->values.data() + n));
        compare_against(rep, "full_vs_exact", u_full, *exact);
        compare_against(rep, "fv_vs_exact", u_fv, *exact);
    }
    write_csv(out_dir + "/compare.csv", header, columns);
    rep.artifacts.push_back("compare.csv");

    compare_against(rep, "full_vs_fv", u_full, u_fv);
    if (auto thresh = shock_threshold(cfg)) {
        try {
            rep.metrics["jump_full"] = jump_magnitude(u_full, *thresh);
            rep.metrics["jump_fv"] = jump_magnitude(u_fv, *thresh);
            rep.metrics["shock_speed_fv"] =
                shock_speed_estimate(fv_res.times, fv_res.frames, *thresh);
            rep.metrics["shock_position_full"] = shock_location(u_full, *thresh);
            rep.metrics["shock_position_fv"] = shock_location(u_fv, *thresh);
        } catch (const SolverError&) {
            rep.warnings.push_back("no trackable shock found for jump/speed metrics");
        }
    }

    rep.metrics["wall_total_seconds"] = seconds_since(t0);
    finish_report(rep, "compare-fv", cfg, out_dir);
    return rep;
}

}  // namespace rxm
