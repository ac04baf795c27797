// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "relaxmor.h"

#include <cstring>
#include <string>

#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/mass_operator.hpp"

using namespace rxm;

struct rxm_config {
    ExperimentConfig cfg;
};

struct rxm_report {
    RunReport rep;
};

namespace {

thread_local std::string g_last_error = "";

int fail(int code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

int copy_out(const std::string& s, char* buf, size_t cap) {
    if (!buf || cap == 0) return fail(RXM_ERR_CONFIG, "output buffer is null or empty");
    const size_t n = std::min(s.size(), cap - 1);
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
    if (n < s.size()) return fail(RXM_ERR_CONFIG, "output buffer too small");
    return RXM_OK;
}

// Maps C++ failures onto status codes.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        return fail(RXM_ERR_CONFIG, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(RXM_ERR_CONFIG, e.what());
    } catch (const std::out_of_range& e) {
        return fail(RXM_ERR_CONFIG, e.what());
    } catch (const SolverError& e) {
        return fail(RXM_ERR_SOLVER, e.what());
    } catch (const SingularMatrixError& e) {
        return fail(RXM_ERR_SOLVER, e.what());
    } catch (const std::ios_base::failure& e) {
        return fail(RXM_ERR_IO, e.what());
    } catch (const std::exception& e) {
        // filesystem / io problems surface as runtime_error from the core
        const std::string what = e.what();
        if (what.find("cannot open") != std::string::npos ||
            what.find("directory") != std::string::npos ||
            what.find("file") != std::string::npos) {
            return fail(RXM_ERR_IO, what);
        }
        return fail(RXM_ERR_SOLVER, what);
    }
}

}  // namespace

extern "C" {

const char* rxm_version(void) { return "0.1.0"; }

const char* rxm_last_error(void) { return g_last_error.c_str(); }

int rxm_preset_names(char* buf, size_t cap) {
    std::string joined;
    for (const auto& name : ExperimentConfig::preset_names()) {
        joined += name;
        joined += '\n';
    }
    return copy_out(joined, buf, cap);
}

int rxm_config_preset(const char* name, rxm_config** out) {
    if (!name || !out) return fail(RXM_ERR_CONFIG, "null argument");
    return guarded([&] {
        *out = new rxm_config{ExperimentConfig::preset(name)};
        return RXM_OK;
    });
}

int rxm_config_load(const char* path, rxm_config** out) {
    if (!path || !out) return fail(RXM_ERR_CONFIG, "null argument");
    return guarded([&] {
        *out = new rxm_config{ExperimentConfig::from_file(path)};
        return RXM_OK;
    });
}

int rxm_config_set(rxm_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return fail(RXM_ERR_CONFIG, "null argument");
    return guarded([&] {
        cfg->cfg.set(key, value);
        return RXM_OK;
    });
}

int rxm_config_echo(const rxm_config* cfg, char* buf, size_t cap) {
    if (!cfg) return fail(RXM_ERR_CONFIG, "null config");
    return copy_out(cfg->cfg.echo(), buf, cap);
}

void rxm_config_free(rxm_config* cfg) { delete cfg; }

int rxm_run_full(const rxm_config* cfg, const char* out_dir, rxm_report** out) {
    if (!cfg || !out_dir || !out) return fail(RXM_ERR_CONFIG, "null argument");
    return guarded([&] {
        *out = new rxm_report{run_full(cfg->cfg, out_dir)};
        return RXM_OK;
    });
}

int rxm_run_pod(const rxm_config* cfg, const char* const* training_dirs, size_t n_training,
                const char* out_dir, rxm_report** out) {
    if (!cfg || !training_dirs || !out_dir || !out) return fail(RXM_ERR_CONFIG, "null argument");
    return guarded([&] {
        std::vector<std::string> dirs(training_dirs, training_dirs + n_training);
        *out = new rxm_report{run_pod(cfg->cfg, dirs, out_dir)};
        return RXM_OK;
    });
}

int rxm_run_reduced(const rxm_config* cfg, const char* basis_dir, const char* out_dir,
                    rxm_report** out) {
    if (!cfg || !out_dir || !out) return fail(RXM_ERR_CONFIG, "null argument");
    return guarded([&] {
        *out = new rxm_report{run_reduced(cfg->cfg, basis_dir ? basis_dir : "", out_dir)};
        return RXM_OK;
    });
}

int rxm_run_compare_fv(const rxm_config* cfg, const char* basis_dir, const char* out_dir,
                       rxm_report** out) {
    if (!cfg || !out_dir || !out) return fail(RXM_ERR_CONFIG, "null argument");
    return guarded([&] {
        *out = new rxm_report{run_compare_fv(cfg->cfg, out_dir, basis_dir ? basis_dir : "")};
        return RXM_OK;
    });
}

const char* rxm_report_text(const rxm_report* rep) {
    return rep ? rep->rep.text.c_str() : "";
}

int rxm_report_metric(const rxm_report* rep, const char* name, double* out) {
    if (!rep || !name || !out) return fail(RXM_ERR_CONFIG, "null argument");
    const auto it = rep->rep.metrics.find(name);
    if (it == rep->rep.metrics.end()) {
        return fail(RXM_ERR_CONFIG, std::string("unknown metric '") + name + "'");
    }
    *out = it->second;
    return RXM_OK;
}

int rxm_report_metric_names(const rxm_report* rep, char* buf, size_t cap) {
    if (!rep) return fail(RXM_ERR_CONFIG, "null report");
    std::string joined;
    for (const auto& [k, v] : rep->rep.metrics) {
        (void)v;
        joined += k;
        joined += '\n';
    }
    return copy_out(joined, buf, cap);
}

void rxm_report_free(rxm_report* rep) { delete rep; }

int rxm_mass_first_row(int n_basis, double lambda, double t, double* row) {
    if (!row) return fail(RXM_ERR_CONFIG, "null output row");
    return guarded([&] {
        MassOperator op(BasisFamily(n_basis), lambda);
        const Eigen::VectorXd r = op.first_row(t);
        for (int i = 0; i < n_basis; ++i) row[i] = r[i];
        return RXM_OK;
    });
}

int rxm_mass_min_rel_eigenvalue(int n_basis, double lambda, double t, double* out) {
    if (!out) return fail(RXM_ERR_CONFIG, "null output");
    return guarded([&] {
        MassOperator op(BasisFamily(n_basis), lambda);
        const SpectrumReport rep = op.matrix(t).eigenvalues();
        *out = rep.max_abs > 0.0 ? rep.min_abs / rep.max_abs : 0.0;
        return RXM_OK;
    });
}

int rxm_singular_times(int n_basis, double lambda, double t_max, double* buf, size_t cap,
                       size_t* count) {
    if (!count) return fail(RXM_ERR_CONFIG, "null count");
    return guarded([&] {
        MassOperator op(BasisFamily(n_basis), lambda);
        const SingularTimeTable table = op.singular_times(t_max);
        *count = table.entries.size();
        if (buf) {
            for (size_t i = 0; i < std::min(cap, table.entries.size()); ++i) {
                buf[i] = table.entries[i].t;
            }
        }
        return RXM_OK;
    });
}

}  // extern "C"
