// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/relaxation_solver.hpp"

namespace rxm {

enum class FluxKind { linear, burgers };
enum class IcKind { sine, shifted_sine, gauss_bump, step, combined };
enum class SolverKind { relaxation, comoving };

/// Fully resolved description of one experiment run. Presets fill every
/// field; hand-written configs must provide the required ones.
struct ExperimentConfig {
    std::string preset_name;  // empty when assembled by hand

    SolverKind solver = SolverKind::relaxation;
    FluxKind flux = FluxKind::burgers;
    IcKind ic = IcKind::sine;
    double ic_amplitude = 1.0;

    std::optional<double> lambda;
    std::optional<double> epsilon;   // relaxation solver only
    std::optional<double> rho;       // defaults to epsilon when unset
    std::optional<double> dt;
    std::optional<double> time_horizon;
    std::optional<int> n_basis;

    Scheme scheme = Scheme::semi_implicit;
    std::optional<int> rank;
    int snapshot_stride = 10;
    int fv_cells = 320;
    int fv_order = 2;
    int quad_nodes = 5;
    double sigma_tol = 1e-10;
    RegularizationMode reg_mode = RegularizationMode::always;
    bool allow_subchar_violation = false;
    bool degenerate_basis = false;

    int output_points = 400;
    std::vector<double> output_times;  // empty means {0, T}
    unsigned seed = 0;
    std::string output_dir;

    // comoving solver source
    double source_gamma = 0.0;
    double source_delta = 0.0;
    double comoving_dt = 1e-3;

    std::vector<std::string> training;  // suggested training presets (documentation)

    static std::vector<std::string> preset_names();
    static ExperimentConfig preset(const std::string& name);
    static ExperimentConfig from_file(const std::string& path);

    /// Applies one `key = value` assignment; throws ConfigError on unknown
    /// keys or malformed values. `where` decorates error messages.
    void set(const std::string& key, const std::string& value, const std::string& where = "");

    /// Checks required fields and constraints; throws ConfigError naming the
    /// offending field.
    void validate() const;

    /// Deterministic `key = value` dump of the resolved configuration.
    std::string echo() const;

    // solver-facing builders (validate first)
    BasisFamily make_family() const;
    FluxDescriptor make_flux() const;
    InitialCondition make_ic() const;
    SolverConfig make_solver_config() const;
};

struct RunReport {
    std::map<std::string, double> metrics;
    std::vector<std::string> artifacts;
    std::vector<std::string> warnings;
    std::string text;
};

RunReport run_full(const ExperimentConfig& cfg, const std::string& out_dir);
RunReport run_pod(const ExperimentConfig& cfg, const std::vector<std::string>& training_dirs,
                  const std::string& out_dir);
RunReport run_reduced(const ExperimentConfig& cfg, const std::string& basis_dir,
                      const std::string& out_dir);
RunReport run_compare_fv(const ExperimentConfig& cfg, const std::string& out_dir,
                         const std::string& basis_dir = "");

}  // namespace rxm
