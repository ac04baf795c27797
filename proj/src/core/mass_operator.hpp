// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <vector>

#include "core/basis.hpp"
#include "core/circulant.hpp"

namespace rxm {

/// Times where the shifted-overlap matrix M(t) loses rank, with the
/// corresponding right/left null directions.
struct SingularTimeEntry {
    double t;
    Eigen::VectorXd right_null;  // e,  M(t) e   = 0
    Eigen::VectorXd left_null;   // f,  f^T M(t) = 0
};

struct SingularTimeTable {
    double period = 0.0;  // spacing between consecutive singular times
    std::vector<SingularTimeEntry> entries;
};

/// M(t) + rho * f e^T, the rank-1 regularization that keeps the operator
/// invertible across singular times.
struct RegularizedMass {
    Circulant base;
    double rho = 0.0;
    Eigen::VectorXd e, f;

    Eigen::VectorXd matvec(const Eigen::VectorXd& v) const;
    Eigen::MatrixXd dense() const;
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs, double rel_tol = 1e-10) const;
};

/// Time-parameterized overlap operator of a translated basis family against
/// itself shifted by 2*lambda*t:
///
///   M_jk(t) = integral over the torus of phi_j(x) * phi_k(x + 2*lambda*t) dx.
///
/// M(t) is circulant for every t and satisfies M(t + k*tau) = P^k M(t) with
/// tau = dx/(2*lambda). Rows are evaluated from the closed-form piecewise
/// polynomial autocorrelation of the shape profile, so entries are exact up
/// to roundoff and at most four per row are nonzero.
class MassOperator {
public:
    MassOperator(BasisFamily family, double lambda);

    const BasisFamily& family() const { return family_; }
    double lambda() const { return lambda_; }

    /// Reduction period tau = dx / (2 lambda).
    double period() const { return tau_; }

    Eigen::VectorXd first_row(double t) const;
    Circulant matrix(double t) const { return Circulant(first_row(t)); }

    /// d/dt of the first row; hat shape only (the indicator derivative is
    /// distributional).
    Eigen::VectorXd first_row_dot(double t) const;
    Circulant matrix_dot(double t) const { return Circulant(first_row_dot(t)); }

    /// True when the family has singular times: even N, hat or indicator
    /// shape. Odd N makes M(t) invertible for all t.
    bool has_singular_times() const;

    /// All t_l = (2l+1)/(2*lambda*N) up to t_max, with null directions taken
    /// from the DFT mode of the vanishing eigenvalue (the alternating vector).
    SingularTimeTable singular_times(double t_max) const;

    /// Nearest upcoming singular time at or after t (none if the family has no
    /// singular structure).
    std::optional<double> next_singular_time(double t) const;

    /// Shared null pair used by the regularization; zero vectors when the
    /// family has no singular times.
    const Eigen::VectorXd& null_right() const { return null_vec_; }
    const Eigen::VectorXd& null_left() const { return null_vec_; }

    RegularizedMass regularized(double t, double rho) const;

    /// Autocorrelation of the shape profile on the torus and its derivative.
    double shape_autocorrelation(double s) const;
    double shape_autocorrelation_deriv(double s) const;

private:
    BasisFamily family_;
    double lambda_;
    double tau_;
    Eigen::VectorXd null_vec_;
};

/// Generic overlap integral of two maps on the torus evaluated by composite
/// quadrature: integral of fa(x) * fb(x + shift) dx.
double overlap_integral(const std::function<double(double)>& fa,
                        const std::function<double(double)>& fb, double shift,
                        const std::vector<double>& breakpoints = {},
                        const QuadratureRule& rule = {12, 32});

}  // namespace rxm
