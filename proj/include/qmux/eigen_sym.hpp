// Dense real-symmetric eigensolver: Householder tridiagonalization followed
// by implicit-shift QL, the classic tred2/tql2 pair. Hermitian matrices are
// handled through the real embedding [[Re, -Im], [Im, Re]], which turns every
// complex eigenpair into a doubled real one. Matrices here are at most a few
// dozen rows, so there is no blocking or sparsity.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qmux/common.hpp"
#include "qmux/complex_matrix.hpp"

namespace qmux {

struct SymEigenResult {
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // row-major n x n, column k = eigenvector of values[k]
    int n = 0;

    double vec(int row, int k) const { return vectors[static_cast<size_t>(row) * n + k]; }
};

namespace detail {

inline double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

// Householder reduction to tridiagonal form; `a` is row-major n x n and is
// overwritten with the accumulated orthogonal transform.
inline void tred2(std::vector<double>& a, int n, std::vector<double>& d, std::vector<double>& e) {
    auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int j = 0; j < n; ++j) d[j] = A(n - 1, j);

    for (int i = n - 1; i > 0; --i) {
        double scale = 0.0, h = 0.0;
        for (int k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (int j = 0; j < i; ++j) {
                d[j] = A(i - 1, j);
                A(i, j) = 0.0;
                A(j, i) = 0.0;
            }
        } else {
            for (int k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (int j = 0; j < i; ++j) e[j] = 0.0;

            for (int j = 0; j < i; ++j) {
                f = d[j];
                A(j, i) = f;
                g = e[j] + A(j, j) * f;
                for (int k = j + 1; k <= i - 1; ++k) {
                    g += A(k, j) * d[k];
                    e[k] += A(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (int j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            double hh = f / (h + h);
            for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (int j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (int k = j; k <= i - 1; ++k) A(k, j) -= (f * e[k] + g * d[k]);
                d[j] = A(i - 1, j);
                A(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    // accumulate transformations
    for (int i = 0; i < n - 1; ++i) {
        A(n - 1, i) = A(i, i);
        A(i, i) = 1.0;
        double h = d[i + 1];
        if (h != 0.0) {
            for (int k = 0; k <= i; ++k) d[k] = A(k, i + 1) / h;
            for (int j = 0; j <= i; ++j) {
                double g = 0.0;
                for (int k = 0; k <= i; ++k) g += A(k, i + 1) * A(k, j);
                for (int k = 0; k <= i; ++k) A(k, j) -= g * d[k];
            }
        }
        for (int k = 0; k <= i; ++k) A(k, i + 1) = 0.0;
    }
    for (int j = 0; j < n; ++j) {
        d[j] = A(n - 1, j);
        A(n - 1, j) = 0.0;
    }
    A(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e); eigenvectors accumulate into a.
inline void tql2(std::vector<double>& a, int n, std::vector<double>& d, std::vector<double>& e) {
    auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0, tst1 = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        int m = l;
        while (m < n) {
            if (std::abs(e[m]) <= eps * tst1) break;
            ++m;
        }
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 64) throw SolverError("tql2: QL iteration did not converge");
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = hypot2(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                double dl1 = d[l + 1];
                double h = g - d[l];
                for (int i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = c, c3 = c;
                double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = hypot2(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (int k = 0; k < n; ++k) {
                        h = A(k, i + 1);
                        A(k, i + 1) = s * A(k, i) + c * h;
                        A(k, i) = c * A(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }

    // sort ascending, carrying vectors
    for (int i = 0; i < n - 1; ++i) {
        int k = i;
        double p = d[i];
        for (int j = i + 1; j < n; ++j)
            if (d[j] < p) { k = j; p = d[j]; }
        if (k != i) {
            d[k] = d[i];
            d[i] = p;
            for (int j = 0; j < n; ++j) std::swap(A(j, i), A(j, k));
        }
    }
}

}  // namespace detail

inline SymEigenResult eigen_symmetric(std::vector<double> a, int n) {
    SymEigenResult r;
    r.n = n;
    r.values.assign(n, 0.0);
    std::vector<double> e(n, 0.0);
    // symmetrize defensively against roundoff in callers
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0.5 * (a[static_cast<size_t>(i) * n + j] + a[static_cast<size_t>(j) * n + i]);
            a[static_cast<size_t>(i) * n + j] = v;
            a[static_cast<size_t>(j) * n + i] = v;
        }
    detail::tred2(a, n, r.values, e);
    detail::tql2(a, n, r.values, e);
    r.vectors = std::move(a);
    return r;
}

// Real symmetric embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix.
inline std::vector<double> real_embedding(const ComplexMatrix& m) {
    const int n = m.rows();
    std::vector<double> a(static_cast<size_t>(2 * n) * (2 * n));
    auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * 2 * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            A(i, j) = m(i, j).real();
            A(i + n, j + n) = m(i, j).real();
            A(i, j + n) = -m(i, j).imag();
            A(i + n, j) = m(i, j).imag();
        }
    return a;
}

// Eigenvalues of a Hermitian matrix, ascending. Each eigenvalue of the real
// embedding appears twice; every second entry of the sorted list is taken.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (!m.is_hermitian(1e-9 * std::max(1.0, m.max_abs())))
        throw SolverError("hermitian_eigenvalues: matrix is not Hermitian");
    const int n = m.rows();
    if (n == 0) return {};
    auto emb = real_embedding(m);
    auto r = eigen_symmetric(std::move(emb), 2 * n);
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = 0.5 * (r.values[2 * i] + r.values[2 * i + 1]);
    return vals;
}

inline double min_eigenvalue(const ComplexMatrix& m) {
    return hermitian_eigenvalues(m).front();
}

// Eigen-decomposition of a Hermitian matrix: ascending values with complex
// eigenvectors recovered from the embedded pairs.
struct HermEigenResult {
    std::vector<double> values;
    ComplexMatrix vectors;  // column k = eigenvector of values[k]
};

inline HermEigenResult hermitian_eigen(const ComplexMatrix& m) {
    if (!m.is_hermitian(1e-9 * std::max(1.0, m.max_abs())))
        throw SolverError("hermitian_eigen: matrix is not Hermitian");
    const int n = m.rows();
    auto r = eigen_symmetric(real_embedding(m), 2 * n);
    HermEigenResult out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    // Each complex eigenvector spans a 2-dim embedded eigenspace; take one
    // representative per pair and re-orthonormalize against duplicates of
    // the same complex vector (v and iv embed orthogonally, so any pair
    // member works).
    for (int k = 0; k < n; ++k) {
        out.values[k] = 0.5 * (r.values[2 * k] + r.values[2 * k + 1]);
        // candidate from column 2k
        std::vector<cplx> v(n);
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            v[i] = cplx{r.vec(i, 2 * k), r.vec(i + n, 2 * k)};
            norm += std::norm(v[i]);
        }
        // Within a degenerate complex eigenspace the embedded columns can mix
        // v with i*w of a previous vector; Gram-Schmidt against already
        // accepted columns with the same eigenvalue.
        for (int p = 0; p < k; ++p) {
            if (std::abs(out.values[p] - out.values[k]) > 1e-8 * (1.0 + std::abs(out.values[k])))
                continue;
            cplx ov = 0;
            for (int i = 0; i < n; ++i) ov += std::conj(out.vectors(i, p)) * v[i];
            for (int i = 0; i < n; ++i) v[i] -= ov * out.vectors(i, p);
        }
        norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::norm(v[i]);
        if (norm < 1e-20) {
            // fell entirely inside previous columns; use the partner column
            norm = 0.0;
            for (int i = 0; i < n; ++i) {
                v[i] = cplx{r.vec(i, 2 * k + 1), r.vec(i + n, 2 * k + 1)};
                norm += std::norm(v[i]);
            }
            for (int p = 0; p < k; ++p) {
                if (std::abs(out.values[p] - out.values[k]) > 1e-8 * (1.0 + std::abs(out.values[k])))
                    continue;
                cplx ov = 0;
                for (int i = 0; i < n; ++i) ov += std::conj(out.vectors(i, p)) * v[i];
                for (int i = 0; i < n; ++i) v[i] -= ov * out.vectors(i, p);
            }
            norm = 0.0;
            for (int i = 0; i < n; ++i) norm += std::norm(v[i]);
        }
        const double s = 1.0 / std::sqrt(norm);
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v[i] * s;
    }
    return out;
}

}  // namespace qmux
