// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/mass_operator.hpp"

#include <cmath>
#include <stdexcept>

#include "core/torus.hpp"

namespace rxm {
namespace {

// Autocorrelation of the unit-slope hat on [0, 2d] against its translate by s
// (one period, no wrap):
//   |s| <= d:      2d^3/3 - d s^2 + |s|^3/2
//   d <= |s| <= 2d: (2d - |s|)^3 / 6
double hat_corr(double s, double d) {
    const double a = std::abs(s);
    if (a >= 2.0 * d) return 0.0;
    if (a <= d) return 2.0 * d * d * d / 3.0 - d * s * s + a * a * a / 2.0;
    const double r = 2.0 * d - a;
    return r * r * r / 6.0;
}

double hat_corr_deriv(double s, double d) {
    const double a = std::abs(s);
    if (a >= 2.0 * d) return 0.0;
    if (a <= d) return -2.0 * d * s + 1.5 * s * a;
    const double r = 2.0 * d - a;
    return (s > 0.0 ? -1.0 : 1.0) * r * r / 2.0;
}

double indicator_corr(double s, double d) {
    const double a = std::abs(s);
    return a < d ? d - a : 0.0;
}

}  // namespace

Eigen::VectorXd RegularizedMass::matvec(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out = base.matvec(v);
    if (rho != 0.0 && e.size() == v.size()) {
        out += rho * f * e.dot(v);
    }
    return out;
}

Eigen::MatrixXd RegularizedMass::dense() const {
    Eigen::MatrixXd m = base.dense();
    if (rho != 0.0 && e.size() == m.rows()) {
        m += rho * f * e.transpose();
    }
    return m;
}

Eigen::VectorXd RegularizedMass::solve(const Eigen::VectorXd& rhs, double rel_tol) const {
    if (rho == 0.0 || e.size() != rhs.size()) {
        return base.solve(rhs, rel_tol);
    }
    return base.solve_rank1(f, e, rho, rhs, rel_tol);
}

MassOperator::MassOperator(BasisFamily family, double lambda)
    : family_(std::move(family)), lambda_(lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("MassOperator: lambda must be positive");
    tau_ = family_.cell_width() / (2.0 * lambda_);
    const int n = family_.size();
    if (has_singular_times()) {
        // The vanishing eigenvalue sits at DFT mode N/2, whose (real) mode
        // vector is the alternating one; it is both a right and a left null
        // direction of the circulant M(t*).
        null_vec_.resize(n);
        for (int j = 0; j < n; ++j) null_vec_[j] = (j % 2 == 0 ? 1.0 : -1.0);
        null_vec_ /= std::sqrt(static_cast<double>(n));
    } else {
        null_vec_ = Eigen::VectorXd::Zero(n);
    }
}

double MassOperator::shape_autocorrelation(double s) const {
    const double d = family_.cell_width();
    const double sw = wrap(s);
    double acc = 0.0;
    if (family_.shape() == BasisShape::hat) {
        const double sc = family_.slope_scale() * family_.slope_scale();
        acc = hat_corr(sw, d) + hat_corr(sw - kDomainLength, d) + hat_corr(sw + kDomainLength, d);
        return sc * acc;
    }
    acc = indicator_corr(sw, d) + indicator_corr(sw - kDomainLength, d) +
          indicator_corr(sw + kDomainLength, d);
    return acc;
}

double MassOperator::shape_autocorrelation_deriv(double s) const {
    if (family_.shape() != BasisShape::hat) {
        throw std::invalid_argument("MassOperator: derivative rows need the hat shape");
    }
    const double d = family_.cell_width();
    const double sc = family_.slope_scale() * family_.slope_scale();
    const double sw = wrap(s);
    return sc * (hat_corr_deriv(sw, d) + hat_corr_deriv(sw - kDomainLength, d) +
                 hat_corr_deriv(sw + kDomainLength, d));
}

Eigen::VectorXd MassOperator::first_row(double t) const {
    if (t < 0.0) throw std::invalid_argument("MassOperator: t must be nonnegative");
    const int n = family_.size();
    const double d = family_.cell_width();
    Eigen::VectorXd row(n);
    for (int j = 0; j < n; ++j) {
        row[j] = shape_autocorrelation(j * d - 2.0 * lambda_ * t);
    }
    return row;
}

Eigen::VectorXd MassOperator::first_row_dot(double t) const {
    if (t < 0.0) throw std::invalid_argument("MassOperator: t must be nonnegative");
    const int n = family_.size();
    const double d = family_.cell_width();
    Eigen::VectorXd row(n);
    for (int j = 0; j < n; ++j) {
        row[j] = -2.0 * lambda_ * shape_autocorrelation_deriv(j * d - 2.0 * lambda_ * t);
    }
    return row;
}

bool MassOperator::has_singular_times() const { return family_.size() % 2 == 0; }

SingularTimeTable MassOperator::singular_times(double t_max) const {
    if (!(t_max > 0.0)) throw std::invalid_argument("MassOperator::singular_times: t_max must be positive");
    SingularTimeTable table;
    table.period = tau_;
    if (!has_singular_times()) return table;
    const int n = family_.size();
    for (int l = 0;; ++l) {
        const double t = (2.0 * l + 1.0) / (2.0 * lambda_ * n);
        if (t > t_max) break;
        table.entries.push_back({t, null_vec_, null_vec_});
    }
    return table;
}

std::optional<double> MassOperator::next_singular_time(double t) const {
    if (!has_singular_times()) return std::nullopt;
    const int n = family_.size();
    const double spacing = 1.0 / (lambda_ * n);  // t_{l+1} - t_l
    const double first = 0.5 * spacing;
    if (t <= first) return first;
    const double l = std::ceil((t - first) / spacing - 1e-12);
    return first + l * spacing;
}

RegularizedMass MassOperator::regularized(double t, double rho) const {
    if (rho < 0.0) throw std::invalid_argument("MassOperator::regularized: rho must be nonnegative");
    RegularizedMass reg{matrix(t), rho, null_vec_, null_vec_};
    if (!has_singular_times()) reg.rho = 0.0;
    return reg;
}

double overlap_integral(const std::function<double(double)>& fa,
                        const std::function<double(double)>& fb, double shift,
                        const std::vector<double>& breakpoints, const QuadratureRule& rule) {
    auto g = [&](double x) { return fa(x) * fb(x + shift); };
    return integrate_periodic(g, breakpoints, rule);
}

}  // namespace rxm
