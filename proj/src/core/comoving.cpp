// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/comoving.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/mass_operator.hpp"
#include "core/torus.hpp"

namespace rxm {

ComovingSourceSolver::ComovingSourceSolver(BasisFamily family, double lambda, SourceTerm source,
                                           QuadratureRule quad)
    : family_(std::move(family)),
      lambda_(lambda),
      source_(source),
      quad_(quad),
      m0_(MassOperator(family_, std::abs(lambda) > 0 ? std::abs(lambda) : 1.0).matrix(0.0)) {}

Eigen::VectorXd ComovingSourceSolver::project_initial(const InitialCondition& w0) const {
    const int n = family_.size();
    const double d = family_.cell_width();
    Eigen::VectorXd b(n);
    for (int k = 1; k <= n; ++k) {
        const double a = (k - 1) * d;
        std::vector<double> pts{a, a + d, a + 2.0 * d};
        for (double p : w0.breakpoints) {
            for (int z = -2; z <= 2; ++z) {
                const double q = p + z * kDomainLength;
                if (q > a + 1e-13 && q < a + 2.0 * d - 1e-13) pts.push_back(q);
            }
        }
        std::sort(pts.begin(), pts.end());
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (pts[i + 1] - pts[i] < 1e-13) continue;
            acc += rxm::integrate([&](double x) { return family_.eval(k, x) * w0.eval(wrap(x)); },
                             pts[i], pts[i + 1], quad_.nodes_per_interval);
        }
        b[k - 1] = acc;
    }
    return m0_.solve(b);
}

Eigen::VectorXd ComovingSourceSolver::source_projection(const Eigen::VectorXd& alpha) const {
    const int n = family_.size();
    const double d = family_.cell_width();
    Eigen::VectorXd g(n);
    for (int j = 1; j <= n; ++j) {
        const double a = (j - 1) * d;
        auto fn = [&](double x) {
            return family_.eval(j, x) * source_(family_.expand(alpha, 0.0, x));
        };
        g[j - 1] = rxm::integrate(fn, a, a + d, quad_.nodes_per_interval) +
                   rxm::integrate(fn, a + d, a + 2.0 * d, quad_.nodes_per_interval);
    }
    return g;
}

Eigen::VectorXd ComovingSourceSolver::rhs(const Eigen::VectorXd& alpha) const {
    return m0_.solve(source_projection(alpha));
}

Eigen::VectorXd ComovingSourceSolver::step_rk4(const Eigen::VectorXd& alpha, double dt) const {
    const Eigen::VectorXd k1 = rhs(alpha);
    const Eigen::VectorXd k2 = rhs(alpha + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = rhs(alpha + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = rhs(alpha + dt * k3);
    return alpha + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

ScalarTrajectory ComovingSourceSolver::integrate(const InitialCondition& w0, double T, double dt,
                                                 int stride) const {
    if (!(dt > 0.0) || stride < 1) throw ConfigError("comoving integrate: bad dt or stride");
    Eigen::VectorXd alpha = project_initial(w0);
    const long long n_steps = std::llround(T / dt);
    const long long stored = n_steps / stride + 1;

    ScalarTrajectory traj;
    traj.stride = stride;
    traj.coefficients.resize(family_.size(), stored);
    traj.times.reserve(stored);
    traj.coefficients.col(0) = alpha;
    traj.times.push_back(0.0);

    long long col = 1;
    for (long long k = 1; k <= n_steps; ++k) {
        alpha = step_rk4(alpha, dt);
        if (!alpha.allFinite()) {
            throw SolverError("comoving integrate: non-finite state (source blow-up?)",
                              static_cast<int>(k), k * dt);
        }
        if (k % stride == 0) {
            traj.coefficients.col(col++) = alpha;
            traj.times.push_back(k * dt);
        }
    }
    traj.coefficients.conservativeResize(Eigen::NoChange, col);
    return traj;
}

ScalarTrajectory ComovingSourceSolver::integrate_reduced(const InitialCondition& w0, double T,
                                                         double dt, const ReducedBasis& basis,
                                                         int stride) const {
    if (!(dt > 0.0) || stride < 1) throw ConfigError("comoving integrate: bad dt or stride");
    if (basis.v.rows() != family_.size()) {
        throw ConfigError("comoving reduced: basis dimension mismatch");
    }
    Eigen::VectorXd ahat = basis.v.transpose() * project_initial(w0);
    const long long n_steps = std::llround(T / dt);

    ScalarTrajectory traj;
    traj.stride = stride;
    traj.coefficients.resize(family_.size(), n_steps / stride + 1);
    traj.coefficients.col(0) = basis.v * ahat;
    traj.times.push_back(0.0);

    long long col = 1;
    for (long long k = 1; k <= n_steps; ++k) {
        ahat = basis.v.transpose() * step_rk4(basis.v * ahat, dt);
        if (!ahat.allFinite()) {
            throw SolverError("comoving reduced: non-finite state", static_cast<int>(k), k * dt);
        }
        if (k % stride == 0) {
            traj.coefficients.col(col++) = basis.v * ahat;
            traj.times.push_back(k * dt);
        }
    }
    traj.coefficients.conservativeResize(Eigen::NoChange, col);
    return traj;
}

double ComovingSourceSolver::reconstruct(const Eigen::VectorXd& alpha, double t, double x) const {
    return family_.expand(alpha, lambda_ * t, x);
}

GridFunction ComovingSourceSolver::sample(const Eigen::VectorXd& alpha, double t,
                                          int n_cells) const {
    return GridFunction::sample([&](double x) { return reconstruct(alpha, t, x); }, n_cells);
}

}  // namespace rxm
