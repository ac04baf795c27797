// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>
#include <vector>

namespace rxm {

/// Spectrum of a circulant matrix in DFT order,
/// Lambda_m = sum_{k=0}^{N-1} c_{k+1} exp(-2*pi*i*m*k/N).
struct SpectrumReport {
    std::vector<std::complex<double>> eigenvalues;
    double min_abs = 0.0;
    double max_abs = 0.0;
    int argmin = 0;
};

class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(double min_abs, int argmin, double max_abs)
        : std::runtime_error("circulant solve: matrix is singular (min |eigenvalue| " +
                             std::to_string(min_abs) + " at DFT mode " + std::to_string(argmin) + ")"),
          min_abs(min_abs), argmin(argmin), max_abs(max_abs) {}
    double min_abs;
    int argmin;
    double max_abs;
};

/// Real circulant matrix represented by its first row c, M_ij = c_{(j-i mod N)+1}.
/// Eigenvalues, solves and matvecs go through the DFT; results are real with
/// the imaginary residue checked against a roundoff bound.
class Circulant {
public:
    explicit Circulant(Eigen::VectorXd first_row);

    int size() const { return static_cast<int>(c_.size()); }
    const Eigen::VectorXd& first_row() const { return c_; }

    Eigen::MatrixXd dense() const;

    /// M*v by direct cyclic convolution; zero entries of the row are skipped,
    /// so banded rows cost O(N * nonzeros).
    Eigen::VectorXd matvec(const Eigen::VectorXd& v) const;

    SpectrumReport eigenvalues() const;

    /// min |Lambda| <= rel_tol * max |Lambda|. Optionally reports how many
    /// modes fall under the threshold (the nullity estimate).
    bool is_singular(double rel_tol, int* nullity = nullptr) const;

    /// Solves M x = rhs by division in the DFT basis.
    /// Throws SingularMatrixError when is_singular(rel_tol) holds.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs, double rel_tol = 1e-10) const;

    /// Solves (M + rho * u * w^T) x = rhs. Uses Sherman-Morrison on two
    /// circulant solves when M is safely nonsingular, otherwise a dense
    /// factorization of the corrected matrix. Throws SingularMatrixError when
    /// the corrected matrix itself is singular.
    Eigen::VectorXd solve_rank1(const Eigen::VectorXd& u, const Eigen::VectorXd& w,
                                double rho, const Eigen::VectorXd& rhs,
                                double rel_tol = 1e-10) const;

    /// First row of P^k * M, P the cyclic permutation with P_{i,i+1} = 1.
    Circulant rotated(int k) const;

private:
    Eigen::VectorXd c_;
};

/// dft(v)_m = sum_k v_k exp(-2*pi*i*m*k/N); O(N^2) with cached twiddles.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& v);

/// Repeated solves against one circulant matrix: the spectrum is computed
/// once at construction and shared by all solves.
class CirculantSolver {
public:
    explicit CirculantSolver(Circulant c);

    const Circulant& matrix() const { return c_; }
    const SpectrumReport& spectrum() const { return rep_; }
    bool is_singular(double rel_tol) const { return rep_.min_abs <= rel_tol * rep_.max_abs; }

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs, double rel_tol = 1e-10) const;
    Eigen::VectorXd solve_rank1(const Eigen::VectorXd& u, const Eigen::VectorXd& w,
                                double rho, const Eigen::VectorXd& rhs,
                                double rel_tol = 1e-10) const;

private:
    Circulant c_;
    SpectrumReport rep_;
};

}  // namespace rxm
