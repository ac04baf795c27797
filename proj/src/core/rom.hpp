// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "core/relaxation_solver.hpp"

namespace rxm {

/// Columns of coefficient vectors gathered from one or more trajectories.
struct SnapshotSet {
    Eigen::MatrixXd plus;   // N x S
    Eigen::MatrixXd minus;  // N x S
    std::vector<std::string> provenance;

    int n() const { return static_cast<int>(plus.rows()); }
    int count() const { return static_cast<int>(plus.cols()); }
};

/// Takes every stride-th stored state of each trajectory, in order.
SnapshotSet collect_snapshots(const std::vector<const Trajectory*>& trajectories, int stride = 1);

/// Orthonormal projection bases for the two coefficient families plus the
/// full singular value lists of the snapshot matrices. The mean vectors are
/// zero unless the basis was built with mean subtraction.
struct ReducedBasisPair {
    Eigen::MatrixXd v_plus;   // N x r
    Eigen::MatrixXd v_minus;  // N x r
    Eigen::VectorXd singular_values_plus;
    Eigen::VectorXd singular_values_minus;
    Eigen::VectorXd mean_plus;   // empty or N
    Eigen::VectorXd mean_minus;  // empty or N

    int n() const { return static_cast<int>(v_plus.rows()); }
    int rank() const { return static_cast<int>(v_plus.cols()); }
    bool centered() const { return mean_plus.size() > 0; }

    /// Deliberately degenerate all-zero basis of the given rank.
    static ReducedBasisPair zero(int n, int rank);
};

/// Leading r left singular vectors of each snapshot matrix. With
/// subtract_mean the column means are removed first and retained in the
/// basis, so reduce/lift work on fluctuations around them (off by default).
ReducedBasisPair pod(const SnapshotSet& snapshots, int rank, bool subtract_mean = false);

/// SVD basis of a single snapshot matrix (used by the scalar solver).
struct ReducedBasis {
    Eigen::MatrixXd v;
    Eigen::VectorXd singular_values;
};
ReducedBasis pod_single(const Eigen::MatrixXd& snapshots, int rank);

struct ReducedState {
    double t = 0.0;
    Eigen::VectorXd ahat_plus;
    Eigen::VectorXd ahat_minus;
};

ReducedState reduce_state(const ReducedBasisPair& basis, const CoefficientState& s);
CoefficientState lift_state(const ReducedBasisPair& basis, const ReducedState& s);

struct ReducedTrajectory {
    int stride = 1;
    std::vector<ReducedState> states;
};

struct ReducedIntegrationResult {
    ReducedTrajectory trajectory;
    ReducedState final_state;
    std::vector<std::string> warnings;
};

/// Galerkin-projected dynamics realized on the discrete scheme: lift the
/// reduced state, apply the full update map, project back.
class ReducedRelaxationSolver {
public:
    ReducedRelaxationSolver(const RelaxationSolver& full, ReducedBasisPair basis);

    const ReducedBasisPair& basis() const { return basis_; }

    ReducedState step(const ReducedState& s) const;

    /// Initial reduced state is the projection of the full initial projection.
    ReducedIntegrationResult integrate(const InitialCondition& u0, double T,
                                       const std::function<void(const ReducedState&)>& observer = {}) const;

    double reconstruct_u(const ReducedState& s, double x) const;
    GridFunction sample_u(const ReducedState& s, int n_cells) const;

private:
    const RelaxationSolver& full_;
    ReducedBasisPair basis_;
};

}  // namespace rxm
