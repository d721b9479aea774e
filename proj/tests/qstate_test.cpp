#include <gtest/gtest.h>

#include <cmath>

#include "qmux/bloch.hpp"
#include "qmux/complex_matrix.hpp"
#include "qmux/density.hpp"
#include "qmux/eigen_sym.hpp"
#include "test_util.hpp"

using namespace qmux;
using qmux_test::random_bloch;
using qmux_test::random_hermitian;
using qmux_test::random_separable;

namespace {
constexpr double kTol = 1e-12;
constexpr double kSpec = 1e-10;
}  // namespace

TEST(Tensor, IdentityTimesIdentity) {
    auto t = tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    EXPECT_EQ(t.rows(), 4);
    auto diff = t - ComplexMatrix::identity(4);
    EXPECT_LE(diff.max_abs(), 0.0);
}

TEST(Tensor, BasisProjectors) {
    ComplexMatrix p0(2, 2), p1(2, 2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    auto t = tensor(p0, p1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            EXPECT_DOUBLE_EQ(t(i, j).real(), (i == 1 && j == 1) ? 1.0 : 0.0);
}

TEST(Tensor, BellPairSquareIsRankOne) {
    auto bb = tensor(bell_pair(), bell_pair());
    EXPECT_NEAR(bb.trace().real(), 1.0, kTol);
    // dense multiply oracle: projector onto a pure state squares to itself
    auto sq = bb * bb;
    EXPECT_LE((sq - bb).max_abs(), kTol);
    auto vals = hermitian_eigenvalues(bb);
    int rank = 0;
    for (double v : vals)
        if (v > 1e-9) ++rank;
    EXPECT_EQ(rank, 1);
}

TEST(Tensor, AssociativeAndTraceMultiplicative) {
    for (int trial = 0; trial < 20; ++trial) {
        auto a = qmux_test::random_matrix(2);
        auto b = qmux_test::random_matrix(3);
        auto c = qmux_test::random_matrix(2);
        auto left = tensor(tensor(a, b), c);
        auto right = tensor(a, tensor(b, c));
        EXPECT_LE((left - right).max_abs(), 1e-13);
        auto tab = tensor(a, b);
        EXPECT_NEAR(std::abs(tab.trace() - a.trace() * b.trace()), 0.0, 1e-12);
    }
}

TEST(Pauli, AlongAxes) {
    EXPECT_LE((pauli_along({1, 0, 0}) - sigma_x()).max_abs(), 0.0);
    auto sy = pauli_along({0, 1, 0});
    EXPECT_EQ(sy(0, 1), (cplx{0, -1}));
    EXPECT_EQ(sy(1, 0), (cplx{0, 1}));
}

TEST(Pauli, DiagonalEigenvalues) {
    const double r = 1.0 / std::sqrt(2.0);
    auto m = pauli_along({r, r, 0});
    EXPECT_LE(m.hermiticity_defect(), kTol);
    EXPECT_NEAR(std::abs(m.trace()), 0.0, kTol);
    auto vals = hermitian_eigenvalues(m);
    EXPECT_NEAR(vals[0], -1.0, kSpec);
    EXPECT_NEAR(vals[1], 1.0, kSpec);
}

TEST(Pauli, RejectsNonUnitVector) {
    EXPECT_THROW(pauli_along({1, 1, 0}), ConfigError);
}

TEST(Projector, PlusZIsGroundState) {
    auto p = projector({0, 0, 1}, +1);
    EXPECT_NEAR(p(0, 0).real(), 1.0, kTol);
    EXPECT_NEAR(std::abs(p(0, 1)) + std::abs(p(1, 0)) + std::abs(p(1, 1)), 0.0, kTol);
}

TEST(Projector, PlusXExplicit) {
    auto p = projector({1, 0, 0}, +1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(p(i, j).real(), 0.5, kTol);
}

TEST(Projector, CompletenessAndIdempotence1000Random) {
    for (int t = 0; t < 1000; ++t) {
        auto v = random_bloch();
        auto pp = projector(v, +1);
        auto pm = projector(v, -1);
        EXPECT_LE((pp + pm - ComplexMatrix::identity(2)).max_abs(), kTol);
        EXPECT_LE((pp * pp - pp).max_abs(), kTol);
        EXPECT_NEAR(pp.trace().real(), 1.0, kTol);
        EXPECT_LE(pp.hermiticity_defect(), kTol);
    }
}

TEST(PartialTranspose, ProductStateStaysPositive) {
    for (int t = 0; t < 10; ++t) {
        auto a = qmux_test::outer(qmux_test::random_pure(2));
        auto b = qmux_test::outer(qmux_test::random_pure(2));
        auto rho = tensor(a, b);
        auto pt = partial_transpose(rho, {2, 2}, {0});
        // equals a^T (x) b
        ComplexMatrix at(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) at(i, j) = a(j, i);
        EXPECT_LE((pt - tensor(at, b)).max_abs(), 1e-13);
        EXPECT_GE(min_eigenvalue(pt), -kSpec);
    }
}

TEST(PartialTranspose, BellEigenvalues) {
    auto pt = partial_transpose(bell_pair(), {2, 2}, {0});
    auto vals = hermitian_eigenvalues(pt);
    EXPECT_NEAR(vals[0], -0.5, kSpec);
    EXPECT_NEAR(vals[1], 0.5, kSpec);
    EXPECT_NEAR(vals[2], 0.5, kSpec);
    EXPECT_NEAR(vals[3], 0.5, kSpec);
    EXPECT_NEAR(min_eigenvalue(pt), -0.5, kSpec);
}

TEST(PartialTranspose, InvolutionPreservesTraceAndHermiticity) {
    const std::vector<int> dims{2, 2, 2, 2};
    const std::vector<int> party{0, 1};
    for (int t = 0; t < 10; ++t) {
        auto h = random_hermitian(16);
        auto pt = partial_transpose(h, dims, party);
        EXPECT_LE(pt.hermiticity_defect(), 1e-13);
        EXPECT_NEAR(std::abs(pt.trace() - h.trace()), 0.0, 1e-12);
        auto back = partial_transpose(pt, dims, party);
        EXPECT_LE((back - h).max_abs(), 0.0);
    }
}

TEST(PartialTranspose, RejectsBadBipartition) {
    EXPECT_THROW(partial_transpose(ComplexMatrix::identity(4), {2, 2}, {2}), ConfigError);
}

TEST(Negativity, SeparableIsZero) {
    for (int t = 0; t < 10; ++t) {
        DensityMatrix rho;
        rho.mat = random_separable(2, 2, 4);
        rho.dims = {2, 2};
        rho.party_a = {0};
        EXPECT_NEAR(negativity(rho), 0.0, 1e-9);
        EXPECT_GE(min_eigenvalue(partial_transpose(rho)), -kSpec);
    }
}

TEST(Negativity, BellIsHalf) {
    DensityMatrix rho;
    rho.mat = bell_pair();
    rho.dims = {2, 2};
    rho.party_a = {0};
    EXPECT_NEAR(negativity(rho), 0.5, kSpec);
}

TEST(Negativity, TwoBellPairsAcrossSignalsIdlersIsThreeHalves) {
    auto rho = two_pair_state(1.0);
    rho.validate();
    EXPECT_NEAR(negativity(rho), 1.5, 1e-9);
}

TEST(Negativity, ZeroIffPptOnSeparableMixtures) {
    for (int t = 0; t < 20; ++t) {
        DensityMatrix rho;
        rho.mat = random_separable(2, 2, 3);
        rho.dims = {2, 2};
        rho.party_a = {0};
        const double neg = negativity(rho);
        const double mineig = min_eigenvalue(partial_transpose(rho));
        EXPECT_EQ(neg <= 1e-9, mineig >= -1e-10);
    }
}

TEST(MinEigenvalue, KnownValues) {
    EXPECT_NEAR(min_eigenvalue(ComplexMatrix::identity(4)), 1.0, kSpec);
    EXPECT_NEAR(min_eigenvalue(sigma_z()), -1.0, kSpec);
    EXPECT_THROW(min_eigenvalue(qmux_test::random_matrix(3)), SolverError);
}

TEST(EigenSym, RandomHermitianResiduals) {
    for (int t = 0; t < 5; ++t) {
        auto h = random_hermitian(16);
        auto eig = hermitian_eigen(h);
        for (int k = 0; k < 16; ++k) {
            // ||H v - lambda v|| small relative to spectral norm
            double resid = 0;
            for (int i = 0; i < 16; ++i) {
                cplx s = 0;
                for (int j = 0; j < 16; ++j) s += h(i, j) * eig.vectors(j, k);
                s -= eig.values[k] * eig.vectors(i, k);
                resid += std::norm(s);
            }
            const double scale = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
            EXPECT_LE(std::sqrt(resid), 1e-10 * std::max(1.0, scale));
        }
        // eigenvalue sum equals trace
        double sum = 0;
        for (double v : eig.values) sum += v;
        EXPECT_NEAR(sum, h.trace().real(), 1e-9);
    }
}

TEST(Werner, Extremes) {
    auto w0 = werner_state(0.0);
    EXPECT_LE((w0.mat - ComplexMatrix::identity(4) * cplx{0.25, 0}).max_abs(), kTol);
    auto w1 = werner_state(1.0);
    EXPECT_LE((w1.mat - bell_pair()).max_abs(), kTol);
    EXPECT_THROW(werner_state(1.5), ConfigError);
    EXPECT_THROW(werner_state(-0.1), ConfigError);
}

TEST(Werner, NegativityAtPaperVisibility) {
    auto w = werner_state(0.912);
    w.validate();
    EXPECT_NEAR(negativity(w), (3.0 * 0.912 - 1.0) / 4.0, 1e-10);
    EXPECT_NEAR(negativity(w), 0.434, 5e-4);
}

TEST(Werner, PptThresholdAtOneThird) {
    auto below = werner_state(1.0 / 3.0 - 0.01);
    auto above = werner_state(1.0 / 3.0 + 0.01);
    EXPECT_NEAR(negativity(below), 0.0, 1e-12);
    EXPECT_GT(negativity(above), 1e-4);
    EXPECT_GE(min_eigenvalue(partial_transpose(below)), -1e-10);
    EXPECT_LT(min_eigenvalue(partial_transpose(above)), -1e-4);
}

TEST(DensityMatrix, ValidationCatchesBadStates) {
    DensityMatrix rho;
    rho.mat = ComplexMatrix::identity(4);
    rho.dims = {2, 2};
    rho.party_a = {0};
    EXPECT_THROW(rho.validate(), ConfigError);  // trace 4
    rho.mat *= cplx{0.25, 0.0};
    EXPECT_NO_THROW(rho.validate());
    rho.dims = {2, 3};
    EXPECT_THROW(rho.validate(), ConfigError);  // dim mismatch
}

TEST(ReorderSubsystems, SwapMatchesTensorSwap) {
    auto a = random_hermitian(2);
    auto b = random_hermitian(2);
    auto ab = tensor(a, b);
    auto ba = tensor(b, a);
    auto sw = reorder_subsystems(ab, {2, 2}, {1, 0});
    EXPECT_LE((sw - ba).max_abs(), 1e-13);
}
