#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "wsolve/rng.hpp"

namespace wsolve {

using CVec = std::vector<cplx>;

inline double norm2(const CVec& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline double norm_inf(const CVec& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

inline double distance(const CVec& a, const CVec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> data; // row-major

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}

    cplx& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    const cplx& at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    CVec apply(const CVec& x) const {
        if (static_cast<int>(x.size()) != cols)
            throw std::invalid_argument("ComplexMatrix::apply: dimension mismatch");
        CVec y(rows, cplx(0.0));
        for (int i = 0; i < rows; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < cols; ++j) s += at(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& z : data) s += std::norm(z);
        return std::sqrt(s);
    }
};

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solve A x = b by partial-pivoted LU. Throws SingularMatrixError on
// pivot breakdown (pivot magnitude below 1e-300).
inline CVec lu_solve(ComplexMatrix A, CVec b) {
    if (A.rows != A.cols) throw std::invalid_argument("lu_solve: matrix not square");
    const int n = A.rows;
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("lu_solve: rhs size mismatch");

    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(A.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            double m = std::abs(A.at(i, k));
            if (m > best) { best = m; piv = i; }
        }
        if (best < 1e-300) throw SingularMatrixError("lu_solve: singular to working precision");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A.at(k, j), A.at(piv, j));
            std::swap(b[k], b[piv]);
        }
        const cplx inv_piv = 1.0 / A.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx f = A.at(i, k) * inv_piv;
            if (f == cplx(0.0)) continue;
            A.at(i, k) = f;
            for (int j = k + 1; j < n; ++j) A.at(i, j) -= f * A.at(k, j);
            b[i] -= f * b[k];
        }
    }
    CVec x(n);
    for (int i = n - 1; i >= 0; --i) {
        cplx s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A.at(i, j) * x[j];
        x[i] = s / A.at(i, i);
    }
    return x;
}

// Singular values by one-sided Jacobi on the columns (on A^H when m < n).
// Sweeps until every off-diagonal rotation is below 1e-14 relative, at
// most 30 sweeps. Values only, descending.
inline std::vector<double> singular_values(const ComplexMatrix& A) {
    if (A.rows < 1 || A.cols < 1) throw std::invalid_argument("singular_values: empty matrix");
    for (const auto& z : A.data)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("singular_values: non-finite entry");

    int m = A.rows, n = A.cols;
    // Work on columns of the tall orientation.
    std::vector<CVec> col;
    if (m >= n) {
        col.assign(n, CVec(m));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < m; ++i) col[j][i] = A.at(i, j);
    } else {
        col.assign(m, CVec(n));
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) col[j][i] = std::conj(A.at(j, i));
        std::swap(m, n);
    }

    const double tol = 1e-14;
    for (int sweep = 0; sweep < 30; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                cplx apq = 0.0;
                for (int i = 0; i < m; ++i) {
                    app += std::norm(col[p][i]);
                    aqq += std::norm(col[q][i]);
                    apq += std::conj(col[p][i]) * col[q][i];
                }
                const double off = std::abs(apq);
                if (off <= tol * std::sqrt(app * aqq) || off == 0.0) continue;
                rotated = true;
                const cplx phase = apq / off;
                const double tau = (aqq - app) / (2.0 * off);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = phase * (t * c);
                for (int i = 0; i < m; ++i) {
                    const cplx xp = col[p][i];
                    const cplx xq = col[q][i];
                    col[p][i] = c * xp - std::conj(s) * xq;
                    col[q][i] = s * xp + c * xq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) sigma[j] = norm2(col[j]);
    std::sort(sigma.begin(), sigma.end(), std::greater<double>());
    return sigma;
}

// Count of singular values above tol_rank * sigma_1.
inline int numerical_rank(const ComplexMatrix& A, double tol_rank) {
    const auto sigma = singular_values(A);
    if (sigma.empty() || sigma[0] == 0.0) return 0;
    int r = 0;
    for (double s : sigma)
        if (s > tol_rank * sigma[0]) ++r;
    return r;
}

inline ComplexMatrix random_matrix(Rng& rng, int m, int n) {
    ComplexMatrix A(m, n);
    for (auto& z : A.data) z = rng.normal_complex();
    return A;
}

inline cplx random_unit_complex(Rng& rng) { return rng.unit_complex(); }

} // namespace wsolve
