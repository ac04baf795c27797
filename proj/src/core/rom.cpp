// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/rom.hpp"

#include <Eigen/SVD>
#include <stdexcept>

#include "core/errors.hpp"

namespace rxm {

SnapshotSet collect_snapshots(const std::vector<const Trajectory*>& trajectories, int stride) {
    if (trajectories.empty()) throw std::invalid_argument("collect_snapshots: no trajectories");
    if (stride < 1) throw std::invalid_argument("collect_snapshots: stride must be positive");

    const int n = static_cast<int>(trajectories.front()->states.front().alpha_plus.size());
    int count = 0;
    for (const Trajectory* t : trajectories) {
        for (std::size_t k = 0; k < t->states.size(); k += stride) {
            const auto& s = t->states[k];
            if (s.alpha_plus.size() != n || s.alpha_minus.size() != n) {
                throw std::invalid_argument("collect_snapshots: mixed basis sizes");
            }
            if (!s.alpha_plus.allFinite() || !s.alpha_minus.allFinite()) {
                throw std::invalid_argument("collect_snapshots: non-finite snapshot");
            }
            ++count;
        }
    }

    SnapshotSet set;
    set.plus.resize(n, count);
    set.minus.resize(n, count);
    int col = 0;
    for (const Trajectory* t : trajectories) {
        for (std::size_t k = 0; k < t->states.size(); k += stride) {
            set.plus.col(col) = t->states[k].alpha_plus;
            set.minus.col(col) = t->states[k].alpha_minus;
            ++col;
        }
        set.provenance.push_back("trajectory[" + std::to_string(set.provenance.size()) +
                                 "] states=" + std::to_string(t->states.size()));
    }
    return set;
}

ReducedBasisPair ReducedBasisPair::zero(int n, int rank) {
    ReducedBasisPair b;
    b.v_plus = Eigen::MatrixXd::Zero(n, rank);
    b.v_minus = Eigen::MatrixXd::Zero(n, rank);
    b.singular_values_plus = Eigen::VectorXd::Zero(rank);
    b.singular_values_minus = Eigen::VectorXd::Zero(rank);
    return b;
}

namespace {

ReducedBasis svd_basis(const Eigen::MatrixXd& snapshots, int rank) {
    const int max_rank = static_cast<int>(std::min(snapshots.rows(), snapshots.cols()));
    if (rank < 1 || rank > max_rank) {
        throw std::invalid_argument("pod: rank must be in [1, min(N, S)]");
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(snapshots, Eigen::ComputeThinU);
    ReducedBasis basis;
    basis.singular_values = svd.singularValues();
    basis.v = svd.matrixU().leftCols(rank);
    if (basis.singular_values[0] == 0.0) {
        basis.v.setZero();  // snapshot matrix is identically zero
    }
    return basis;
}

}  // namespace

ReducedBasis pod_single(const Eigen::MatrixXd& snapshots, int rank) {
    return svd_basis(snapshots, rank);
}

ReducedBasisPair pod(const SnapshotSet& snapshots, int rank, bool subtract_mean) {
    ReducedBasisPair pair;
    Eigen::MatrixXd plus = snapshots.plus;
    Eigen::MatrixXd minus = snapshots.minus;
    if (subtract_mean) {
        pair.mean_plus = plus.rowwise().mean();
        pair.mean_minus = minus.rowwise().mean();
        plus.colwise() -= pair.mean_plus;
        minus.colwise() -= pair.mean_minus;
    }
    ReducedBasis p = svd_basis(plus, rank);
    ReducedBasis m = svd_basis(minus, rank);
    pair.v_plus = std::move(p.v);
    pair.v_minus = std::move(m.v);
    pair.singular_values_plus = std::move(p.singular_values);
    pair.singular_values_minus = std::move(m.singular_values);
    return pair;
}

ReducedState reduce_state(const ReducedBasisPair& basis, const CoefficientState& s) {
    if (s.alpha_plus.size() != basis.n()) {
        throw std::invalid_argument("reduce_state: dimension mismatch");
    }
    if (basis.centered()) {
        return {s.t, basis.v_plus.transpose() * (s.alpha_plus - basis.mean_plus),
                basis.v_minus.transpose() * (s.alpha_minus - basis.mean_minus)};
    }
    return {s.t, basis.v_plus.transpose() * s.alpha_plus,
            basis.v_minus.transpose() * s.alpha_minus};
}

CoefficientState lift_state(const ReducedBasisPair& basis, const ReducedState& s) {
    if (s.ahat_plus.size() != basis.rank()) {
        throw std::invalid_argument("lift_state: dimension mismatch");
    }
    if (basis.centered()) {
        return {s.t, basis.mean_plus + basis.v_plus * s.ahat_plus,
                basis.mean_minus + basis.v_minus * s.ahat_minus};
    }
    return {s.t, basis.v_plus * s.ahat_plus, basis.v_minus * s.ahat_minus};
}

ReducedRelaxationSolver::ReducedRelaxationSolver(const RelaxationSolver& full,
                                                 ReducedBasisPair basis)
    : full_(full), basis_(std::move(basis)) {
    if (basis_.n() != full.config().n_basis) {
        throw ConfigError("reduced solver: basis dimension does not match n_basis");
    }
    if (basis_.v_plus.cols() != basis_.v_minus.cols()) {
        throw ConfigError("reduced solver: plus/minus ranks differ");
    }
}

ReducedState ReducedRelaxationSolver::step(const ReducedState& s) const {
    return reduce_state(basis_, full_.step(lift_state(basis_, s)));
}

ReducedIntegrationResult ReducedRelaxationSolver::integrate(
    const InitialCondition& u0, double T,
    const std::function<void(const ReducedState&)>& observer) const {
    const SolverConfig& cfg = full_.config();
    ReducedIntegrationResult result;
    result.trajectory.stride = cfg.snapshot_stride;
    if (cfg.dt > 0.5 * cfg.epsilon * (1.0 + 1e-12)) {
        result.warnings.push_back("dt exceeds the epsilon/2 stability bound; expect growth");
    }

    ReducedState state = reduce_state(basis_, full_.project_initial(u0));
    result.trajectory.states.push_back(state);
    if (observer) observer(state);

    const long long n_steps = std::llround(T / cfg.dt);
    for (long long k = 1; k <= n_steps; ++k) {
        state = step(state);
        if (!state.ahat_plus.allFinite() || !state.ahat_minus.allFinite()) {
            throw SolverError("reduced integrate: non-finite state at step " + std::to_string(k),
                              static_cast<int>(k), state.t);
        }
        if (k % cfg.snapshot_stride == 0) result.trajectory.states.push_back(state);
        if (observer) observer(state);
    }
    result.final_state = state;
    return result;
}

double ReducedRelaxationSolver::reconstruct_u(const ReducedState& s, double x) const {
    return full_.reconstruct_u(lift_state(basis_, s), x);
}

GridFunction ReducedRelaxationSolver::sample_u(const ReducedState& s, int n_cells) const {
    const CoefficientState lifted = lift_state(basis_, s);
    return GridFunction::sample([&](double x) { return full_.reconstruct_u(lifted, x); }, n_cells);
}

}  // namespace rxm
