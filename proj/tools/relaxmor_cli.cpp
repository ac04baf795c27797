// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
//
// Experiment driver. Links the C API only.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relaxmor.h"

namespace {

struct ConfigDeleter {
    void operator()(rxm_config* c) const { rxm_config_free(c); }
};
struct ReportDeleter {
    void operator()(rxm_report* r) const { rxm_report_free(r); }
};
using ConfigPtr = std::unique_ptr<rxm_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<rxm_report, ReportDeleter>;

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    std::string times;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Path to a key = value config file");
    cmd->add_option("--preset", opts.preset, "Built-in preset name (see list-presets)");
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--override", opts.overrides, "Config override key=value (repeatable)")
        ->take_all();
    cmd->add_option("--times", opts.times, "Output times, semicolon separated");
}

int make_config(const CommonOpts& opts, ConfigPtr& cfg) {
    rxm_config* raw = nullptr;
    int rc;
    if (!opts.config_path.empty()) {
        rc = rxm_config_load(opts.config_path.c_str(), &raw);
    } else if (!opts.preset.empty()) {
        rc = rxm_config_preset(opts.preset.c_str(), &raw);
    } else {
        std::fprintf(stderr, "error: need --config or --preset\n");
        return RXM_ERR_CONFIG;
    }
    if (rc != RXM_OK) {
        std::fprintf(stderr, "error: %s\n", rxm_last_error());
        return rc;
    }
    cfg.reset(raw);
    if (!opts.preset.empty() && !opts.config_path.empty()) {
        std::fprintf(stderr, "error: --config and --preset are mutually exclusive\n");
        return RXM_ERR_CONFIG;
    }
    for (const std::string& ov : opts.overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: override must be key=value, got '%s'\n", ov.c_str());
            return RXM_ERR_CONFIG;
        }
        rc = rxm_config_set(cfg.get(), ov.substr(0, eq).c_str(), ov.substr(eq + 1).c_str());
        if (rc != RXM_OK) {
            std::fprintf(stderr, "error: %s\n", rxm_last_error());
            return rc;
        }
    }
    if (!opts.times.empty()) {
        rc = rxm_config_set(cfg.get(), "output_times", opts.times.c_str());
        if (rc != RXM_OK) {
            std::fprintf(stderr, "error: %s\n", rxm_last_error());
            return rc;
        }
    }
    return RXM_OK;
}

// exit contract: 0 success, 2 configuration error, 3 any runtime failure
int exit_code(int rc) { return rc == RXM_OK ? 0 : (rc == RXM_ERR_CONFIG ? 2 : 3); }

int finish(int rc, rxm_report* raw) {
    ReportPtr rep(raw);
    if (rc != RXM_OK) {
        std::fprintf(stderr, "error: %s\n", rxm_last_error());
        return exit_code(rc);
    }
    std::fputs(rxm_report_text(rep.get()), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relaxmor: relaxation + shifted-basis solver with POD reduction"};
    app.require_subcommand(1);

    CommonOpts full_opts, pod_opts, red_opts, cmp_opts;
    std::vector<std::string> training_dirs;
    std::string basis_dir, cmp_basis_dir;

    CLI::App* list_cmd = app.add_subcommand("list-presets", "List built-in experiment presets");

    CLI::App* full_cmd = app.add_subcommand("run-full", "Run the full-order solver");
    add_common(full_cmd, full_opts);

    CLI::App* pod_cmd =
        app.add_subcommand("run-pod", "Build a POD basis from run-full snapshot outputs");
    add_common(pod_cmd, pod_opts);
    pod_cmd->add_option("--train", training_dirs, "Training run directory (repeatable)")
        ->required()
        ->take_all();

    CLI::App* red_cmd = app.add_subcommand("run-reduced", "Run the reduced-order solver");
    add_common(red_cmd, red_opts);
    red_cmd->add_option("--basis", basis_dir, "Directory holding run-pod basis files");

    CLI::App* cmp_cmd =
        app.add_subcommand("compare-fv", "Compare solver output against the finite-volume reference");
    add_common(cmp_cmd, cmp_opts);
    cmp_cmd->add_option("--basis", cmp_basis_dir, "Optional basis directory for a reduced column");

    CLI11_PARSE(app, argc, argv);

    if (list_cmd->parsed()) {
        char buf[1024];
        if (rxm_preset_names(buf, sizeof(buf)) != RXM_OK) {
            std::fprintf(stderr, "error: %s\n", rxm_last_error());
            return RXM_ERR_SOLVER;
        }
        std::fputs(buf, stdout);
        return 0;
    }

    ConfigPtr cfg;
    rxm_report* rep = nullptr;
    if (full_cmd->parsed()) {
        if (int rc = make_config(full_opts, cfg); rc != RXM_OK) return exit_code(rc);
        const int rc = rxm_run_full(cfg.get(), full_opts.out_dir.c_str(), &rep);
        return finish(rc, rep);
    }
    if (pod_cmd->parsed()) {
        if (int rc = make_config(pod_opts, cfg); rc != RXM_OK) return exit_code(rc);
        std::vector<const char*> dirs;
        for (const auto& d : training_dirs) dirs.push_back(d.c_str());
        const int rc =
            rxm_run_pod(cfg.get(), dirs.data(), dirs.size(), pod_opts.out_dir.c_str(), &rep);
        return finish(rc, rep);
    }
    if (red_cmd->parsed()) {
        if (int rc = make_config(red_opts, cfg); rc != RXM_OK) return exit_code(rc);
        const int rc = rxm_run_reduced(cfg.get(), basis_dir.c_str(), red_opts.out_dir.c_str(), &rep);
        return finish(rc, rep);
    }
    if (cmp_cmd->parsed()) {
        if (int rc = make_config(cmp_opts, cfg); rc != RXM_OK) return exit_code(rc);
        const int rc =
            rxm_run_compare_fv(cfg.get(), cmp_basis_dir.c_str(), cmp_opts.out_dir.c_str(), &rep);
        return finish(rc, rep);
    }
    return RXM_ERR_CONFIG;
}
