#include <gtest/gtest.h>

#include <cmath>

#include "qmux/density.hpp"
#include "qmux/eigen_sym.hpp"
#include "qmux/witness.hpp"
#include "test_util.hpp"

using namespace qmux;

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Published four-fold tables: rows (++,--), (--,++), (+-,-+), (-+,+-) per
// setting column (x0y0, x0y1, x1y0, x1y1).
CountTable stored_table() {
    CountTable t;
    const int rows[4][2] = {{+1, +1}, {-1, -1}, {+1, -1}, {-1, +1}};
    const double counts[4][4] = {
        {76, 70, 61, 4}, {112, 113, 112, 6}, {1, 2, 5, 92}, {2, 7, 4, 82}};
    for (int r = 0; r < 4; ++r) {
        int col = 0;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) t.at(x, y, rows[r][0], rows[r][1]) = counts[r][col++];
    }
    return t;
}

CountTable transmitted_table() {
    CountTable t;
    const int rows[4][2] = {{+1, +1}, {-1, -1}, {+1, -1}, {-1, +1}};
    const double counts[4][4] = {
        {195, 220, 200, 6}, {216, 227, 198, 11}, {10, 12, 11, 222}, {9, 10, 13, 223}};
    for (int r = 0; r < 4; ++r) {
        int col = 0;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) t.at(x, y, rows[r][0], rows[r][1]) = counts[r][col++];
    }
    return t;
}

// Independent oracle: four-fold pattern probability from the full 16x16
// state by a dense trace, never via pair factorization.
double fourfold_prob_oracle(const ComplexMatrix& rho16, const SettingsPair& s, int x, int y,
                            int a, int b) {
    const ComplexMatrix op =
        tensor(tensor(projector(s.alice[x], a), projector(s.alice[x], -a)),
               tensor(projector(s.bob[y], b), projector(s.bob[y], -b)));
    return real_trace_product(op, rho16);
}

}  // namespace

TEST(Correlator, StoredTableColumns) {
    auto t = stored_table();
    EXPECT_DOUBLE_EQ(correlator(t, 0, 0), 185.0);  // 76+112-1-2
    EXPECT_DOUBLE_EQ(correlator(t, 0, 1), 174.0);
    EXPECT_DOUBLE_EQ(correlator(t, 1, 0), 164.0);
    EXPECT_DOUBLE_EQ(correlator(t, 1, 1), -164.0);  // 4+6-92-82
}

TEST(Correlator, EqualCellsCancel) {
    CountTable t;
    for (int a : {1, -1})
        for (int b : {1, -1}) t.at(0, 0, a, b) = 7;
    EXPECT_DOUBLE_EQ(correlator(t, 0, 0), 0.0);
}

TEST(Normalization, StoredTable) {
    auto t = stored_table();
    EXPECT_DOUBLE_EQ(normalization(t), 187.25);  // (191+192+182+184)/4
}

TEST(Normalization, SingleEventAndUniform) {
    CountTable t;
    t.at(0, 0, 1, 1) = 1;
    EXPECT_DOUBLE_EQ(normalization(t), 0.25);
    CountTable u;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a : {1, -1})
                for (int b : {1, -1}) u.at(x, y, a, b) = 3;
    EXPECT_DOUBLE_EQ(normalization(u), 12.0);
    CountTable z;
    EXPECT_THROW(normalization(z), DataError);
}

TEST(WitnessStatistic, StoredTableMatchesPublishedValue) {
    auto w = witness_statistic(stored_table());
    EXPECT_NEAR(w.t, 687.0 / 187.25, 1e-12);
    EXPECT_NEAR(w.t, 3.67, 0.01);
    EXPECT_NEAR(w.sigma_t, 0.06, 0.005);
}

TEST(WitnessStatistic, TransmittedTableMatchesPublishedValue) {
    auto w = witness_statistic(transmitted_table());
    EXPECT_NEAR(w.t, 1619.0 / 445.75, 1e-12);
    EXPECT_NEAR(w.t, 3.63, 0.01);
    EXPECT_NEAR(w.sigma_t, 0.04, 0.005);
}

TEST(WitnessStatistic, SigmaMatchesPoissonOracle) {
    // brute-force resampling derivative check: perturb each cell by +-h and
    // propagate numerically
    auto t = stored_table();
    auto w = witness_statistic(t);
    double var = 0;
    const double h = 1e-5;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a : {1, -1})
                for (int b : {1, -1}) {
                    CountTable tp = t, tm = t;
                    tp.at(x, y, a, b) += h;
                    tm.at(x, y, a, b) -= h;
                    const double d =
                        (witness_statistic(tp).t - witness_statistic(tm).t) / (2 * h);
                    var += d * d * t.at(x, y, a, b);
                }
    EXPECT_NEAR(w.sigma_t, std::sqrt(var), 1e-6);
}

TEST(WitnessStatistic, AntiCorrelatedLastSettingOnly) {
    CountTable t;
    t.at(1, 1, 1, -1) = 50;
    t.at(1, 1, -1, 1) = 50;
    auto w = witness_statistic(t);
    // C11 = -100, N = 25, T = -(-100)/25... sign pattern: s11 = -1
    EXPECT_DOUBLE_EQ(w.t, 4.0);
}

TEST(WitnessStatistic, ScaleInvariance) {
    auto t = stored_table();
    auto w1 = witness_statistic(t);
    CountTable t10;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a : {1, -1})
                for (int b : {1, -1}) t10.at(x, y, a, b) = 10 * t.at(x, y, a, b);
    auto w10 = witness_statistic(t10);
    EXPECT_NEAR(w10.t, w1.t, 1e-12);
    EXPECT_LT(w10.sigma_t, w1.sigma_t);
    EXPECT_NEAR(w10.sigma_t, w1.sigma_t / std::sqrt(10.0), 1e-9);
}

TEST(NormalizedCorrelators, MatchPublishedTable) {
    auto c = normalized_correlators(stored_table());
    EXPECT_NEAR(c[0], 185.0 / 187.25, 1e-12);
    EXPECT_NEAR(c[0], 0.98, 0.01);
    EXPECT_NEAR(c[1], 0.92, 0.01);
    EXPECT_NEAR(c[2], 0.88, 0.01);
    EXPECT_NEAR(c[3], -0.88, 0.01);
    auto s = normalized_correlator_sigmas(stored_table());
    EXPECT_NEAR(s[0], 0.06, 0.01);
    EXPECT_NEAR(s[1], 0.07, 0.01);
}

TEST(NormalizedCorrelators, ZeroCorrelatorTable) {
    CountTable t;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a : {1, -1})
                for (int b : {1, -1}) t.at(x, y, a, b) = 5;
    auto c = normalized_correlators(t);
    for (double v : c) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(WitnessOperators, TraceAndPositivity) {
    auto w = witness_operators(SettingsPair::standard());
    EXPECT_NEAR(w.b.trace().real(), 4.0, 1e-10);
    EXPECT_GE(min_eigenvalue(w.b), -1e-10);
    EXPECT_LE(w.a.hermiticity_defect(), 1e-12);
    auto va = hermitian_eigenvalues(w.a);
    const double norm = std::max(std::abs(va.front()), std::abs(va.back()));
    EXPECT_LE(norm, 4.0 + 1e-10);
}

TEST(WitnessOperators, WernerExpectationsMatchBruteForce) {
    auto w = witness_operators(SettingsPair::standard());
    for (double v : {1.0, 0.912, 0.5, 0.0}) {
        auto rho = two_pair_state(v);
        const double ta = real_trace_product(w.a, rho.mat);
        const double tb = real_trace_product(w.b, rho.mat);
        EXPECT_NEAR(tb, (1.0 + v * v / 2.0) / 4.0, 1e-12);
        // cross-check against the 16-outcome probability oracle
        double ta_oracle = 0, tb_oracle = 0;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a : {1, -1})
                    for (int b : {1, -1}) {
                        const double p =
                            fourfold_prob_oracle(rho.mat, SettingsPair::standard(), x, y, a, b);
                        ta_oracle += witness_sign(x, y) * a * b * p;
                        tb_oracle += 0.25 * p;
                    }
        EXPECT_NEAR(ta, ta_oracle, 1e-12);
        EXPECT_NEAR(tb, tb_oracle, 1e-12);
    }
    auto rho1 = two_pair_state(1.0);
    EXPECT_NEAR(real_trace_product(w.a, rho1.mat), kSqrt2, 1e-12);
    EXPECT_NEAR(real_trace_product(w.b, rho1.mat), 0.375, 1e-12);
}

TEST(WitnessOperators, InducedOperatorHasZeroExpectationAtMeasuredRatio) {
    auto w = witness_operators(SettingsPair::standard());
    for (int trial = 0; trial < 5; ++trial) {
        // random state: normalized random PSD
        auto m = qmux_test::random_matrix(16);
        auto rho = m * m.dagger();
        auto tr = rho.trace().real();
        rho *= cplx{1.0 / tr, 0.0};
        const double ta = real_trace_product(w.a, rho);
        const double tb = real_trace_product(w.b, rho);
        const double t = ta / tb;
        // W(T) = T*B - A
        ComplexMatrix wt = w.b;
        wt *= cplx{t, 0.0};
        wt -= w.a;
        EXPECT_NEAR(real_trace_product(wt, rho), 0.0, 1e-10);
    }
}

TEST(ExactTable, ReproducesWernerPredictionExactly) {
    // no sampling: T from exact probabilities equals the closed form to 1e-10
    for (double v : {0.0, 0.25, 0.5, 0.85, 0.912, 1.0}) {
        auto t = exact_count_table(v, SettingsPair::standard());
        if (v == 0.0) {
            // all cells equal; T = 0
            auto w = witness_statistic(t);
            EXPECT_NEAR(w.t, 0.0, 1e-10);
        } else {
            auto w = witness_statistic(t);
            EXPECT_NEAR(w.t, predict_t_from_visibility(v), 1e-10);
        }
    }
}

TEST(Chsh, KnownPoints) {
    const double r = 1.0 / kSqrt2;
    EXPECT_NEAR(chsh({r, r, r, -r}), 2.0 * kSqrt2, 1e-12);
    EXPECT_NEAR(chsh({1, 1, 1, 1}), 2.0, 1e-12);
    EXPECT_THROW(chsh({1.5, 0, 0, 0}), ConfigError);
}

TEST(Chsh, WernerLinearInVisibility) {
    for (double v : {0.1, 0.5, 0.912}) {
        const double e = v / kSqrt2;
        EXPECT_NEAR(chsh({e, e, e, -e}), 2.0 * kSqrt2 * v, 1e-12);
    }
    EXPECT_NEAR(chsh({0.912 / kSqrt2, 0.912 / kSqrt2, 0.912 / kSqrt2, -0.912 / kSqrt2}), 2.579,
                1e-3);
}

TEST(Predictions, VisibilityFormula) {
    EXPECT_NEAR(predict_t_from_visibility(1.0), 8.0 * kSqrt2 / 3.0, 1e-12);
    EXPECT_NEAR(predict_t_from_visibility(1.0), 3.7712, 1e-4);
    EXPECT_NEAR(predict_t_from_visibility(0.0), 0.0, 1e-12);
    EXPECT_NEAR(predict_t_from_visibility(0.912), 3.64, 0.005);
    EXPECT_THROW(predict_t_from_visibility(1.2), ConfigError);
}

TEST(Predictions, ChshFormula) {
    EXPECT_NEAR(predict_t_from_chsh(2.58), 3.64, 0.005);
    EXPECT_NEAR(predict_t_from_chsh(2.0 * kSqrt2), 8.0 * kSqrt2 / 3.0, 1e-12);
    EXPECT_NEAR(predict_t_from_chsh(0.0), 0.0, 1e-12);
    EXPECT_THROW(predict_t_from_chsh(3.0), ConfigError);
}

TEST(Predictions, ConsistencyBetweenRoutes) {
    for (double v : {0.2, 0.5, 0.85, 0.912, 1.0})
        EXPECT_NEAR(predict_t_from_visibility(v), predict_t_from_chsh(2.0 * kSqrt2 * v), 1e-12);
}

TEST(Predictions, MinCertifyingVisibility) {
    const double v = min_certifying_visibility();
    EXPECT_NEAR(v, (8.0 - std::sqrt(14.0)) / 5.0, 1e-15);
    EXPECT_NEAR(v, 0.8517, 1e-4);
    EXPECT_NEAR(predict_t_from_visibility(v), 5.0 / kSqrt2, 1e-10);
    EXPECT_GT(v, 1.0 / 3.0);
    EXPECT_LT(v, 1.0);
}

TEST(Settings, StandardDetection) {
    EXPECT_TRUE(SettingsPair::standard().is_standard());
    SettingsPair s = SettingsPair::standard();
    s.alice[1] = {0, 0, 1};
    EXPECT_FALSE(s.is_standard());
}
