// Dense primal-dual interior-point solver for small semidefinite programs
// with complex Hermitian blocks:
//
//   minimize    sum_b Re Tr(C_b X_b)
//   subject to  sum_b Re Tr(A_{j,b} X_b) = rhs_j,   X_b >= 0.
//
// Complex blocks are embedded as real symmetric matrices [[Re, -Im],[Im, Re]]
// and every iterate is projected back onto the embedded subspace, so one real
// symmetric eigensolver serves the whole pipeline. Search directions use
// Nesterov-Todd scaling with a Mehrotra predictor-corrector step. Problems
// here have at most a few hundred constraints and blocks of dimension <= 32,
// so the Schur complement is formed densely and factored by Cholesky.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "qmux/common.hpp"
#include "qmux/complex_matrix.hpp"
#include "qmux/eigen_sym.hpp"

namespace qmux {

struct SdpConstraint {
    std::vector<ComplexMatrix> coeff;  // per block, Hermitian; empty matrix = zero
    double rhs = 0;
};

struct SdpProblem {
    std::vector<int> block_dims;           // complex dimension per PSD block
    std::vector<ComplexMatrix> objective;  // per block, Hermitian; empty = zero
    std::vector<SdpConstraint> constraints;
};

enum class SdpStatus { optimal, infeasible, max_iterations };

struct SdpSolution {
    double primal_value = 0;
    double dual_value = 0;
    double gap = 0;  // primal - dual at termination
    std::vector<ComplexMatrix> primal_blocks;
    std::vector<double> y;
    SdpStatus status = SdpStatus::max_iterations;
    int iterations = 0;
    double primal_residual = 0;
    double dual_residual = 0;

    bool optimal() const { return status == SdpStatus::optimal; }
};

struct SdpOptions {
    int max_iterations = 200;
    double gap_tol = 1e-7;    // relative duality gap
    double feas_tol = 1e-8;   // scaled residuals
    double step_fraction = 0.98;
};

namespace sdp_detail {

struct SparseSym {
    // canonical upper-triangle entries (r <= c) of a real symmetric matrix
    std::vector<int> r, c;
    std::vector<double> v;

    void add(int i, int j, double val) {
        if (val == 0.0) return;
        if (i > j) std::swap(i, j);
        r.push_back(i);
        c.push_back(j);
        v.push_back(val);
    }

    void compress() {
        std::map<std::pair<int, int>, double> acc;
        for (size_t k = 0; k < v.size(); ++k) acc[{r[k], c[k]}] += v[k];
        r.clear();
        c.clear();
        v.clear();
        for (const auto& [rc, val] : acc) {
            if (std::abs(val) < 1e-300) continue;
            r.push_back(rc.first);
            c.push_back(rc.second);
            v.push_back(val);
        }
    }

    double dot(const std::vector<double>& x, int n) const {
        double s = 0;
        for (size_t k = 0; k < v.size(); ++k) {
            const double xv = x[static_cast<size_t>(r[k]) * n + c[k]];
            s += (r[k] == c[k]) ? v[k] * xv : 2.0 * v[k] * xv;
        }
        return s;
    }

    // dst += scale * (symmetric matrix)
    void add_to(std::vector<double>& dst, int n, double scale) const {
        for (size_t k = 0; k < v.size(); ++k) {
            dst[static_cast<size_t>(r[k]) * n + c[k]] += scale * v[k];
            if (r[k] != c[k]) dst[static_cast<size_t>(c[k]) * n + r[k]] += scale * v[k];
        }
    }
};

inline SparseSym embed_sparse(const ComplexMatrix& m) {
    const int d = m.rows();
    SparseSym s;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const double re = m(i, j).real();
            const double im = m(i, j).imag();
            s.add(i, j, re);
            s.add(i + d, j + d, re);
            if (i != j) {
                s.add(i, j + d, -im);
                s.add(j, i + d, im);  // (i+d, j) mirrored into upper triangle
            }
        }
    s.compress();
    return s;
}

using Mat = std::vector<double>;  // dense row-major square

inline void dense_mult(const Mat& a, const Mat& b, Mat& c, int n) {
    std::fill(c.begin(), c.end(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a[static_cast<size_t>(i) * n + k];
            if (aik == 0.0) continue;
            const double* brow = &b[static_cast<size_t>(k) * n];
            double* crow = &c[static_cast<size_t>(i) * n];
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
}

inline void symmetrize(Mat& a, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a[static_cast<size_t>(i) * n + j] + a[static_cast<size_t>(j) * n + i]);
            a[static_cast<size_t>(i) * n + j] = v;
            a[static_cast<size_t>(j) * n + i] = v;
        }
}

// projection onto the subspace of embedded complex Hermitian matrices
inline void project_embedded(Mat& a, int dim_complex) {
    const int d = dim_complex, n = 2 * d;
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double re = 0.5 * (at(i, j) + at(i + d, j + d));
            const double im = 0.5 * (at(i + d, j) - at(i, j + d));
            at(i, j) = re;
            at(i + d, j + d) = re;
            at(i + d, j) = im;
            at(i, j + d) = -im;
        }
    symmetrize(a, n);
}

// in-place Cholesky, lower triangle; returns false if not positive definite
inline bool cholesky(Mat& a, int n) {
    for (int j = 0; j < n; ++j) {
        double d = a[static_cast<size_t>(j) * n + j];
        for (int k = 0; k < j; ++k) {
            const double l = a[static_cast<size_t>(j) * n + k];
            d -= l * l;
        }
        if (d <= 0.0 || !std::isfinite(d)) return false;
        const double dj = std::sqrt(d);
        a[static_cast<size_t>(j) * n + j] = dj;
        for (int i = j + 1; i < n; ++i) {
            double s = a[static_cast<size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                s -= a[static_cast<size_t>(i) * n + k] * a[static_cast<size_t>(j) * n + k];
            a[static_cast<size_t>(i) * n + j] = s / dj;
        }
        for (int i = 0; i < j; ++i) a[static_cast<size_t>(i) * n + j] = 0.0;
    }
    return true;
}

inline void chol_solve_vec(const Mat& l, std::vector<double>& x, int n) {
    for (int i = 0; i < n; ++i) {
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= l[static_cast<size_t>(i) * n + k] * x[k];
        x[i] = s / l[static_cast<size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n; ++k) s -= l[static_cast<size_t>(k) * n + i] * x[k];
        x[i] = s / l[static_cast<size_t>(i) * n + i];
    }
}

// inverse of a lower-triangular matrix
inline Mat tri_inverse(const Mat& l, int n) {
    Mat inv(static_cast<size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        inv[static_cast<size_t>(j) * n + j] = 1.0 / l[static_cast<size_t>(j) * n + j];
        for (int i = j + 1; i < n; ++i) {
            double s = 0;
            for (int k = j; k < i; ++k)
                s -= l[static_cast<size_t>(i) * n + k] * inv[static_cast<size_t>(k) * n + j];
            inv[static_cast<size_t>(i) * n + j] = s / l[static_cast<size_t>(i) * n + i];
        }
    }
    return inv;
}

inline double frob_inner(const Mat& a, const Mat& b) {
    double s = 0;
    for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

}  // namespace sdp_detail

inline SdpSolution solve_sdp(const SdpProblem& prob, SdpOptions opts = {}) {
    using namespace sdp_detail;

    const int nb = static_cast<int>(prob.block_dims.size());
    const int m = static_cast<int>(prob.constraints.size());
    if (nb == 0 || m == 0) throw ConfigError("solve_sdp: empty problem");

    std::vector<int> D(nb);  // embedded dims
    int nu = 0;
    for (int b = 0; b < nb; ++b) {
        if (prob.block_dims[b] <= 0) throw ConfigError("solve_sdp: nonpositive block dim");
        D[b] = 2 * prob.block_dims[b];
        nu += D[b];
    }

    // embed data
    std::vector<Mat> C(nb);
    double cnorm = 1.0;
    for (int b = 0; b < nb; ++b) {
        C[b].assign(static_cast<size_t>(D[b]) * D[b], 0.0);
        if (b < static_cast<int>(prob.objective.size()) && !prob.objective[b].empty()) {
            const auto& cb = prob.objective[b];
            if (cb.rows() != prob.block_dims[b] || !cb.is_hermitian(1e-9 * std::max(1.0, cb.max_abs())))
                throw ConfigError("solve_sdp: objective block not Hermitian or wrong size");
            auto e = real_embedding(cb);
            C[b] = std::move(e);
            cnorm = std::max(cnorm, cb.max_abs());
        }
    }

    std::vector<std::vector<SparseSym>> A(m, std::vector<SparseSym>(nb));
    std::vector<double> rhs(m);
    double rhsnorm = 1.0, anorm = 1.0;
    for (int j = 0; j < m; ++j) {
        rhs[j] = prob.constraints[j].rhs;
        rhsnorm = std::max(rhsnorm, std::abs(rhs[j]));
        for (int b = 0; b < nb && b < static_cast<int>(prob.constraints[j].coeff.size()); ++b) {
            const auto& ab = prob.constraints[j].coeff[b];
            if (ab.empty()) continue;
            if (ab.rows() != prob.block_dims[b] || !ab.is_hermitian(1e-9 * std::max(1.0, ab.max_abs())))
                throw ConfigError("solve_sdp: constraint block not Hermitian or wrong size");
            A[j][b] = embed_sparse(ab);
            anorm = std::max(anorm, ab.max_abs());
        }
    }

    // iterates
    std::vector<Mat> X(nb), Z(nb);
    for (int b = 0; b < nb; ++b) {
        X[b].assign(static_cast<size_t>(D[b]) * D[b], 0.0);
        Z[b].assign(static_cast<size_t>(D[b]) * D[b], 0.0);
        const double xi = std::max(1.0, rhsnorm);
        const double eta = std::max(1.0, cnorm + anorm);
        for (int i = 0; i < D[b]; ++i) {
            X[b][static_cast<size_t>(i) * D[b] + i] = xi;
            Z[b][static_cast<size_t>(i) * D[b] + i] = eta;
        }
    }
    std::vector<double> y(m, 0.0);

    auto apply_a = [&](const std::vector<Mat>& xv) {
        std::vector<double> out(m, 0.0);
        for (int j = 0; j < m; ++j) {
            double s = 0;
            for (int b = 0; b < nb; ++b)
                if (!A[j][b].v.empty()) s += A[j][b].dot(xv[b], D[b]);
            out[j] = 0.5 * s;
        }
        return out;
    };

    SdpSolution sol;
    sol.y.assign(m, 0.0);

    // workspaces
    std::vector<Mat> G(nb), Gi(nb), RdHat(nb), RcHat(nb), dXhat(nb), dZhat(nb), dX(nb), dZ(nb),
        Rd(nb), tmp1(nb), tmp2(nb);
    std::vector<std::vector<double>> lam(nb);
    std::vector<std::vector<Mat>> U(m, std::vector<Mat>(nb));

    auto block_alloc = [&](std::vector<Mat>& v) {
        for (int b = 0; b < nb; ++b) v[b].assign(static_cast<size_t>(D[b]) * D[b], 0.0);
    };
    block_alloc(RdHat);
    block_alloc(RcHat);
    block_alloc(dXhat);
    block_alloc(dZhat);
    block_alloc(dX);
    block_alloc(dZ);
    block_alloc(Rd);
    block_alloc(tmp1);
    block_alloc(tmp2);

    const double tiny = 1e-300;
    double mu = 0;

    // step-to-boundary for S + alpha dS >= 0 given S = G Sigma G^T form:
    // min eig of Sigma^{-1/2} dShat Sigma^{-1/2}
    auto max_step = [&](const std::vector<Mat>& dHat, const std::vector<std::vector<double>>& lv) {
        double amax = 1e30;
        for (int b = 0; b < nb; ++b) {
            const int n = D[b];
            Mat w(static_cast<size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    w[static_cast<size_t>(i) * n + j] =
                        dHat[b][static_cast<size_t>(i) * n + j] /
                        std::sqrt(std::max(lv[b][i] * lv[b][j], tiny));
            symmetrize(w, n);
            auto ev = eigen_symmetric(w, n);
            const double lmin = ev.values.front();
            if (lmin < -1e-14) amax = std::min(amax, -1.0 / lmin);
        }
        return amax;
    };

    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        // residuals
        auto ax = apply_a(X);
        std::vector<double> rp(m);
        double pinf = 0;
        for (int j = 0; j < m; ++j) {
            rp[j] = rhs[j] - ax[j];
            pinf = std::max(pinf, std::abs(rp[j]));
        }
        double dinf = 0;
        for (int b = 0; b < nb; ++b) {
            Rd[b] = C[b];
            for (size_t k = 0; k < Rd[b].size(); ++k) Rd[b][k] -= Z[b][k];
            for (int j = 0; j < m; ++j)
                if (!A[j][b].v.empty()) A[j][b].add_to(Rd[b], D[b], -y[j]);
            for (double v : Rd[b]) dinf = std::max(dinf, std::abs(v));
        }

        double gap_emb = 0;
        for (int b = 0; b < nb; ++b) gap_emb += frob_inner(X[b], Z[b]);
        mu = gap_emb / nu;

        double pobj = 0;
        for (int b = 0; b < nb; ++b) pobj += 0.5 * frob_inner(C[b], X[b]);
        double dobj = 0;
        for (int j = 0; j < m; ++j) dobj += rhs[j] * y[j];

        const double rel_gap = 0.5 * gap_emb / (1.0 + std::abs(pobj) + std::abs(dobj));
        sol.primal_value = pobj;
        sol.dual_value = dobj;
        sol.gap = pobj - dobj;
        sol.primal_residual = pinf;
        sol.dual_residual = dinf;
        sol.iterations = iter;
        for (int j = 0; j < m; ++j) sol.y[j] = y[j];

        if (rel_gap <= opts.gap_tol && pinf <= opts.feas_tol * rhsnorm &&
            dinf <= opts.feas_tol * (1.0 + cnorm + anorm)) {
            sol.status = SdpStatus::optimal;
            break;
        }

        // NT scaling per block
        bool scaling_ok = true;
        for (int b = 0; b < nb; ++b) {
            const int n = D[b];
            Mat L = X[b];
            symmetrize(L, n);
            // jittered Cholesky
            double jit = 0;
            while (!cholesky(L, n)) {
                jit = (jit == 0) ? 1e-14 * (1.0 + mu) : jit * 100;
                if (jit > 1e-4) { scaling_ok = false; break; }
                L = X[b];
                for (int i = 0; i < n; ++i) L[static_cast<size_t>(i) * n + i] += jit;
            }
            if (!scaling_ok) break;
            // M = L^T Z L
            Mat lt(static_cast<size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) lt[static_cast<size_t>(i) * n + j] = L[static_cast<size_t>(j) * n + i];
            dense_mult(lt, Z[b], tmp1[b], n);
            dense_mult(tmp1[b], L, tmp2[b], n);
            symmetrize(tmp2[b], n);
            auto ev = eigen_symmetric(tmp2[b], n);
            lam[b].assign(n, 0.0);
            for (int i = 0; i < n; ++i) lam[b][i] = std::sqrt(std::max(ev.values[i], tiny));
            // G = L V diag(lambda^{-1/2}); Gi = diag(lambda^{1/2}) V^T L^{-1}
            Mat V(static_cast<size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) V[static_cast<size_t>(i) * n + k] = ev.vec(i, k);
            G[b].assign(static_cast<size_t>(n) * n, 0.0);
            dense_mult(L, V, G[b], n);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    G[b][static_cast<size_t>(i) * n + k] /= std::sqrt(std::max(lam[b][k], tiny));
            Mat Linv = tri_inverse(L, n);
            Gi[b].assign(static_cast<size_t>(n) * n, 0.0);
            // Gi = diag(sqrt(lam)) V^T Linv
            Mat vt(static_cast<size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) vt[static_cast<size_t>(i) * n + k] = V[static_cast<size_t>(k) * n + i];
            dense_mult(vt, Linv, Gi[b], n);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    Gi[b][static_cast<size_t>(i) * n + k] *= std::sqrt(std::max(lam[b][i], tiny));
        }
        if (!scaling_ok) break;  // report current iterate as max_iterations

        // U_j = G^T A_j G per block; Schur M_ij = (1/2) <U_i, U_j>
        for (int j = 0; j < m; ++j)
            for (int b = 0; b < nb; ++b) {
                if (A[j][b].v.empty()) { U[j][b].clear(); continue; }
                const int n = D[b];
                U[j][b].assign(static_cast<size_t>(n) * n, 0.0);
                const auto& sp = A[j][b];
                for (size_t k = 0; k < sp.v.size(); ++k) {
                    const int r = sp.r[k], cc = sp.c[k];
                    const double v = sp.v[k];
                    // add v * (g_r g_c^T + g_c g_r^T), g_r = row r of G^T = column slice
                    for (int i = 0; i < n; ++i) {
                        const double gri = G[b][static_cast<size_t>(r) * n + i];
                        const double gci = G[b][static_cast<size_t>(cc) * n + i];
                        double* urow = &U[j][b][static_cast<size_t>(i) * n];
                        if (r == cc) {
                            for (int l = 0; l < n; ++l)
                                urow[l] += v * gri * G[b][static_cast<size_t>(r) * n + l];
                        } else {
                            for (int l = 0; l < n; ++l)
                                urow[l] += v * (gri * G[b][static_cast<size_t>(cc) * n + l] +
                                                gci * G[b][static_cast<size_t>(r) * n + l]);
                        }
                    }
                }
            }

        Mat schur(static_cast<size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) {
                double s = 0;
                for (int b = 0; b < nb; ++b)
                    if (!U[i][b].empty() && !U[j][b].empty()) s += frob_inner(U[i][b], U[j][b]);
                schur[static_cast<size_t>(i) * m + j] = 0.5 * s;
                schur[static_cast<size_t>(j) * m + i] = 0.5 * s;
            }
        {
            double sjit = 0;
            Mat sc = schur;
            while (!cholesky(sc, m)) {
                sjit = (sjit == 0) ? 1e-13 : sjit * 100;
                if (sjit > 1e-2) throw SolverError("solve_sdp: Schur complement not positive definite");
                sc = schur;
                for (int i = 0; i < m; ++i) sc[static_cast<size_t>(i) * m + i] += sjit;
            }
            schur = std::move(sc);
        }

        // RdHat = G^T Rd G
        for (int b = 0; b < nb; ++b) {
            const int n = D[b];
            Mat gt(static_cast<size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) gt[static_cast<size_t>(i) * n + k] = G[b][static_cast<size_t>(k) * n + i];
            dense_mult(gt, Rd[b], tmp1[b], n);
            dense_mult(tmp1[b], G[b], RdHat[b], n);
            symmetrize(RdHat[b], n);
        }

        auto solve_direction = [&](bool corrector, double sigma_mu,
                                   const std::vector<Mat>& dXaff, const std::vector<Mat>& dZaff) {
            // RcHat: scaled target for dXhat + dZhat
            for (int b = 0; b < nb; ++b) {
                const int n = D[b];
                if (!corrector) {
                    std::fill(RcHat[b].begin(), RcHat[b].end(), 0.0);
                    for (int i = 0; i < n; ++i)
                        RcHat[b][static_cast<size_t>(i) * n + i] = -lam[b][i];
                } else {
                    // R = sigma mu I - Lambda^2 - sym(dXaff dZaff); then
                    // Lyapunov-diagonal solve (lam_i + lam_j)/2.
                    dense_mult(dXaff[b], dZaff[b], tmp1[b], n);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) {
                            double rij = -0.5 * (tmp1[b][static_cast<size_t>(i) * n + j] +
                                                 tmp1[b][static_cast<size_t>(j) * n + i]);
                            if (i == j) rij += sigma_mu - lam[b][i] * lam[b][i];
                            RcHat[b][static_cast<size_t>(i) * n + j] =
                                2.0 * rij / std::max(lam[b][i] + lam[b][j], tiny);
                        }
                    symmetrize(RcHat[b], n);
                }
            }
            // rhs_j = rp_j - (1/2)<U_j, RcHat> + (1/2)<U_j, RdHat>
            std::vector<double> r2(m);
            for (int j = 0; j < m; ++j) {
                double s = 0;
                for (int b = 0; b < nb; ++b)
                    if (!U[j][b].empty()) s += frob_inner(U[j][b], RcHat[b]) - frob_inner(U[j][b], RdHat[b]);
                r2[j] = rp[j] - 0.5 * s;
            }
            chol_solve_vec(schur, r2, m);
            // dZ = Rd - A^T(dy); dZhat = RdHat - sum dy U_j; dXhat = RcHat - dZhat
            for (int b = 0; b < nb; ++b) {
                const int n = D[b];
                dZhat[b] = RdHat[b];
                for (int j = 0; j < m; ++j)
                    if (!U[j][b].empty())
                        for (size_t k = 0; k < dZhat[b].size(); ++k)
                            dZhat[b][k] -= r2[j] * U[j][b][k];
                for (size_t k = 0; k < dXhat[b].size(); ++k)
                    dXhat[b][k] = RcHat[b][k] - dZhat[b][k];
                // unscale: dX = G dXhat G^T, dZ = Gi^T dZhat Gi
                dense_mult(G[b], dXhat[b], tmp1[b], n);
                Mat gt(static_cast<size_t>(n) * n);
                for (int i = 0; i < n; ++i)
                    for (int k = 0; k < n; ++k) gt[static_cast<size_t>(i) * n + k] = G[b][static_cast<size_t>(k) * n + i];
                dense_mult(tmp1[b], gt, dX[b], n);
                symmetrize(dX[b], n);
                Mat git(static_cast<size_t>(n) * n);
                for (int i = 0; i < n; ++i)
                    for (int k = 0; k < n; ++k) git[static_cast<size_t>(i) * n + k] = Gi[b][static_cast<size_t>(k) * n + i];
                dense_mult(git, dZhat[b], tmp1[b], n);
                dense_mult(tmp1[b], Gi[b], dZ[b], n);
                symmetrize(dZ[b], n);
            }
            return r2;
        };

        // predictor
        auto dy_aff = solve_direction(false, 0.0, dXhat, dZhat);
        std::vector<Mat> dXaffHat = dXhat, dZaffHat = dZhat, dXaff = dX, dZaff = dZ;
        std::vector<double> dy_aff_copy = dy_aff;

        double ap = std::min(1.0, opts.step_fraction * max_step(dXaffHat, lam));
        double ad = std::min(1.0, opts.step_fraction * max_step(dZaffHat, lam));
        // predicted gap
        double gap_aff = 0;
        for (int b = 0; b < nb; ++b) {
            const int n = D[b];
            // <X + ap dX, Z + ad dZ> in scaled coords: <Lam + ap dXhat, Lam + ad dZhat>
            double s = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double xij = (i == j ? lam[b][i] : 0.0) + ap * dXaffHat[b][static_cast<size_t>(i) * n + j];
                    const double zij = (i == j ? lam[b][i] : 0.0) + ad * dZaffHat[b][static_cast<size_t>(i) * n + j];
                    s += xij * zij;
                }
            gap_aff += s;
        }
        double sigma = std::pow(std::max(0.0, gap_aff) / std::max(gap_emb, tiny), 3.0);
        sigma = std::clamp(sigma, 1e-8, 1.0);

        // corrector
        auto dy = solve_direction(true, sigma * mu, dXaffHat, dZaffHat);

        ap = std::min(1.0, opts.step_fraction * max_step(dXhat, lam));
        ad = std::min(1.0, opts.step_fraction * max_step(dZhat, lam));

        for (int b = 0; b < nb; ++b) {
            for (size_t k = 0; k < X[b].size(); ++k) {
                X[b][k] += ap * dX[b][k];
                Z[b][k] += ad * dZ[b][k];
            }
            project_embedded(X[b], prob.block_dims[b]);
            project_embedded(Z[b], prob.block_dims[b]);
        }
        for (int j = 0; j < m; ++j) y[j] += ad * dy[j];
    }

    // recover complex primal blocks
    sol.primal_blocks.resize(nb);
    for (int b = 0; b < nb; ++b) {
        const int d = prob.block_dims[b];
        ComplexMatrix xb(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const double re = 0.5 * (X[b][static_cast<size_t>(i) * 2 * d + j] +
                                         X[b][static_cast<size_t>(i + d) * 2 * d + j + d]);
                const double im = 0.5 * (X[b][static_cast<size_t>(i + d) * 2 * d + j] -
                                         X[b][static_cast<size_t>(i) * 2 * d + j + d]);
                xb(i, j) = cplx{re, im};
            }
        xb.hermitize();
        sol.primal_blocks[b] = std::move(xb);
    }

    if (sol.status != SdpStatus::optimal) {
        // crude infeasibility signal: complementarity collapsed but the
        // primal residual refuses to move
        if (mu < 1e-10 && sol.primal_residual > 1e3 * opts.feas_tol * rhsnorm)
            sol.status = SdpStatus::infeasible;
        else
            sol.status = SdpStatus::max_iterations;
    }
    return sol;
}

}  // namespace qmux
