// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/circulant.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <numbers>

namespace rxm {
namespace {

using cplx = std::complex<double>;

// exp(-2*pi*i*k/N) for k = 0..N-1
const std::vector<cplx>& twiddles(int n) {
    static thread_local std::map<int, std::vector<cplx>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<cplx> t(n);
        for (int k = 0; k < n; ++k) {
            t[k] = std::polar(1.0, -2.0 * std::numbers::pi * k / n);
        }
        it = cache.emplace(n, std::move(t)).first;
    }
    return it->second;
}

std::vector<cplx> to_complex(const Eigen::VectorXd& v) {
    std::vector<cplx> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

// Real part of a spectral-domain result, with a residue check: a correct
// inverse transform of conjugate-symmetric data is real up to roundoff.
Eigen::VectorXd real_checked(const std::vector<cplx>& v, const char* what) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    double max_abs = 0.0, max_imag = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[static_cast<Eigen::Index>(i)] = v[i].real();
        max_abs = std::max(max_abs, std::abs(v[i].real()));
        max_imag = std::max(max_imag, std::abs(v[i].imag()));
    }
    if (max_imag > 1e-12 * (1.0 + max_abs)) {
        throw std::logic_error(std::string(what) + ": imaginary residue above bound");
    }
    return out;
}

}  // namespace

std::vector<cplx> dft(const std::vector<cplx>& v) {
    const int n = static_cast<int>(v.size());
    const auto& tw = twiddles(n);
    std::vector<cplx> out(n);
    for (int m = 0; m < n; ++m) {
        cplx acc = 0.0;
        for (int k = 0; k < n; ++k) {
            acc += v[k] * tw[static_cast<std::size_t>(static_cast<long long>(m) * k % n)];
        }
        out[m] = acc;
    }
    return out;
}

Circulant::Circulant(Eigen::VectorXd first_row) : c_(std::move(first_row)) {
    if (c_.size() < 1) throw std::invalid_argument("Circulant: empty first row");
}

Eigen::MatrixXd Circulant::dense() const {
    const int n = size();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = c_[(j - i + n) % n];
        }
    }
    return m;
}

Eigen::VectorXd Circulant::matvec(const Eigen::VectorXd& v) const {
    const int n = size();
    if (v.size() != n) throw std::invalid_argument("Circulant::matvec: dimension mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) {
        const double ck = c_[k];
        if (ck == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            out[i] += ck * v[(i + k) % n];
        }
    }
    return out;
}

SpectrumReport Circulant::eigenvalues() const {
    SpectrumReport rep;
    rep.eigenvalues = dft(to_complex(c_));
    rep.min_abs = std::abs(rep.eigenvalues[0]);
    rep.max_abs = rep.min_abs;
    for (std::size_t m = 1; m < rep.eigenvalues.size(); ++m) {
        const double a = std::abs(rep.eigenvalues[m]);
        if (a < rep.min_abs) {
            rep.min_abs = a;
            rep.argmin = static_cast<int>(m);
        }
        rep.max_abs = std::max(rep.max_abs, a);
    }
    return rep;
}

bool Circulant::is_singular(double rel_tol, int* nullity) const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("Circulant::is_singular: tol must be positive");
    const SpectrumReport rep = eigenvalues();
    const double bound = rel_tol * rep.max_abs;
    if (nullity) {
        int count = 0;
        for (const auto& ev : rep.eigenvalues) {
            if (std::abs(ev) <= bound) ++count;
        }
        *nullity = count;
    }
    return rep.min_abs <= bound;
}

Eigen::VectorXd Circulant::solve(const Eigen::VectorXd& rhs, double rel_tol) const {
    return CirculantSolver(*this).solve(rhs, rel_tol);
}

Eigen::VectorXd Circulant::solve_rank1(const Eigen::VectorXd& u, const Eigen::VectorXd& w,
                                       double rho, const Eigen::VectorXd& rhs,
                                       double rel_tol) const {
    return CirculantSolver(*this).solve_rank1(u, w, rho, rhs, rel_tol);
}

CirculantSolver::CirculantSolver(Circulant c) : c_(std::move(c)), rep_(c_.eigenvalues()) {}

Eigen::VectorXd CirculantSolver::solve(const Eigen::VectorXd& rhs, double rel_tol) const {
    const int n = c_.size();
    if (rhs.size() != n) throw std::invalid_argument("Circulant::solve: dimension mismatch");
    if (rep_.min_abs <= rel_tol * rep_.max_abs) {
        throw SingularMatrixError(rep_.min_abs, rep_.argmin, rep_.max_abs);
    }
    // M = U diag(Lambda) U* with U_km = exp(-2 pi i m k / N)/sqrt(N), so the
    // rhs transforms with the conjugate kernel: rhat = conj(dft(rhs)) for real rhs.
    std::vector<cplx> rhat = dft(to_complex(rhs));
    for (int m = 0; m < n; ++m) {
        rhat[m] = std::conj(rhat[m]) / rep_.eigenvalues[m];
    }
    std::vector<cplx> x = dft(rhat);
    for (auto& xi : x) xi /= n;
    return real_checked(x, "Circulant::solve");
}

Eigen::VectorXd CirculantSolver::solve_rank1(const Eigen::VectorXd& u, const Eigen::VectorXd& w,
                                             double rho, const Eigen::VectorXd& rhs,
                                             double rel_tol) const {
    const int n = c_.size();
    if (u.size() != n || w.size() != n || rhs.size() != n) {
        throw std::invalid_argument("Circulant::solve_rank1: dimension mismatch");
    }
    if (rho == 0.0) return solve(rhs, rel_tol);

    // Sherman-Morrison loses accuracy once the base matrix is nearly singular;
    // fall back to a dense factorization of the corrected matrix there.
    const double sm_tol = std::max(rel_tol, 1e-8);
    if (!is_singular(sm_tol)) {
        const Eigen::VectorXd y = solve(rhs, rel_tol);
        const Eigen::VectorXd z = solve(u, rel_tol);
        const double uncorrected = rho * w.dot(z);
        const double denom = 1.0 + uncorrected;
        if (std::abs(denom) < 1e-14 * (1.0 + std::abs(uncorrected))) {
            throw SingularMatrixError(0.0, 0, 1.0);
        }
        return y - z * (rho * w.dot(y) / denom);
    }

    Eigen::MatrixXd corrected = c_.dense() + rho * u * w.transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(corrected);
    if (!lu.isInvertible()) {
        throw SingularMatrixError(rep_.min_abs, rep_.argmin, rep_.max_abs);
    }
    return lu.solve(rhs);
}

Circulant Circulant::rotated(int k) const {
    const int n = size();
    int shift = k % n;
    if (shift < 0) shift += n;
    Eigen::VectorXd row(n);
    for (int j = 0; j < n; ++j) {
        row[j] = c_[(j - shift + n) % n];
    }
    return Circulant(std::move(row));
}

}  // namespace rxm
