// Restricted-count witness: the statistic T built from the four accessible
// four-fold rates N_{ab,a'b'|xy}, the induced operator pair (A, B), CHSH
// quantities and the Werner-model predictions.
#pragma once

#include <array>
#include <cmath>
#include <string>

#include "qmux/bloch.hpp"
#include "qmux/complex_matrix.hpp"
#include "qmux/density.hpp"

namespace qmux {

struct SettingsPair {
    std::array<BlochVector, 2> alice;  // x = 0, 1
    std::array<BlochVector, 2> bob;    // y = 0, 1

    // Alice x, y; Bob (x+y)/sqrt2, (x-y)/sqrt2. CHSH-optimal for bell_pair().
    static SettingsPair standard() {
        const double r = 1.0 / std::sqrt(2.0);
        SettingsPair s;
        s.alice[0] = {1, 0, 0};
        s.alice[1] = {0, 1, 0};
        s.bob[0] = {r, r, 0};
        s.bob[1] = {r, -r, 0};
        return s;
    }

    bool is_standard(double tol = 1e-9) const {
        const SettingsPair ref = standard();
        auto close = [tol](const BlochVector& a, const BlochVector& b) {
            return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol &&
                   std::abs(a.z - b.z) <= tol;
        };
        return close(alice[0], ref.alice[0]) && close(alice[1], ref.alice[1]) &&
               close(bob[0], ref.bob[0]) && close(bob[1], ref.bob[1]);
    }

    void validate() const {
        for (const auto& v : alice)
            if (!v.is_unit(1e-9)) throw ConfigError("settings: Alice vector not unit norm");
        for (const auto& v : bob)
            if (!v.is_unit(1e-9)) throw ConfigError("settings: Bob vector not unit norm");
    }
};

// The 16 accessible four-fold rates. Counts are stored as doubles so that
// tables built from exact probabilities (no sampling) flow through the same
// statistics; measured tables hold integers.
struct CountTable {
    // indices: x, y, ia, ib with a = +1 -> 0, a = -1 -> 1
    double n[2][2][2][2] = {};

    static int outcome_index(int a) { return a > 0 ? 0 : 1; }

    double& at(int x, int y, int a, int b) { return n[x][y][outcome_index(a)][outcome_index(b)]; }
    double at(int x, int y, int a, int b) const {
        return n[x][y][outcome_index(a)][outcome_index(b)];
    }

    double total() const {
        double t = 0;
        for (const auto& x : n)
            for (const auto& y : x)
                for (const auto& a : y)
                    for (double v : a) t += v;
        return t;
    }

    CountTable& operator+=(const CountTable& o) {
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) n[x][y][i][j] += o.n[x][y][i][j];
        return *this;
    }
};

struct WitnessValue {
    double t = 0;
    double sigma_t = 0;
    std::array<double, 4> correlators{};  // normalized C_xy / N, order 00, 01, 10, 11
};

// sign pattern over (x, y): +, +, +, -
inline int witness_sign(int x, int y) { return (x == 1 && y == 1) ? -1 : 1; }

// Raw correlator: sum_{a,b} ab N_{ab,a'b'|xy}.
inline double correlator(const CountTable& t, int x, int y) {
    double c = 0;
    for (int a : {1, -1})
        for (int b : {1, -1}) c += a * b * t.at(x, y, a, b);
    return c;
}

// N = (1/4) sum over all 16 cells.
inline double normalization(const CountTable& t) {
    const double total = t.total();
    if (total <= 0.0) throw DataError("normalization: count table is empty");
    return 0.25 * total;
}

inline std::array<double, 4> normalized_correlators(const CountTable& t) {
    const double n = normalization(t);
    return {correlator(t, 0, 0) / n, correlator(t, 0, 1) / n, correlator(t, 1, 0) / n,
            correlator(t, 1, 1) / n};
}

// One standard deviation of each normalized correlator, treating all 16
// counts as independent Poisson variables and propagating through the global
// normalization N (the convention matching the published correlator errors).
inline std::array<double, 4> normalized_correlator_sigmas(const CountTable& t) {
    const double total = t.total();
    if (total <= 0.0) throw DataError("correlator sigmas: count table is empty");
    std::array<double, 4> out{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const double c = correlator(t, x, y);
            double var = 0;
            for (int xx = 0; xx < 2; ++xx)
                for (int yy = 0; yy < 2; ++yy)
                    for (int a : {1, -1})
                        for (int b : {1, -1}) {
                            const double in_col = (xx == x && yy == y) ? a * b : 0.0;
                            const double d = 4.0 * (in_col * total - c) / (total * total);
                            var += d * d * t.at(xx, yy, a, b);
                        }
            out[2 * x + y] = std::sqrt(var);
        }
    return out;
}

// T = (C00 + C01 + C10 - C11)/N with first-order Poisson error propagation.
inline WitnessValue witness_statistic(const CountTable& t) {
    const double total = t.total();
    if (total <= 0.0) throw DataError("witness_statistic: count table is empty");
    double u = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) u += witness_sign(x, y) * correlator(t, x, y);

    WitnessValue w;
    w.t = 4.0 * u / total;
    double var = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a : {1, -1})
                for (int b : {1, -1}) {
                    const double g = witness_sign(x, y) * a * b;
                    const double d = 4.0 * (g * total - u) / (total * total);
                    var += d * d * t.at(x, y, a, b);
                }
    w.sigma_t = std::sqrt(var);
    w.correlators = normalized_correlators(t);
    return w;
}

// Probability of single-pair outcome (a, b) under setting (x, y):
// Tr[(P_a(v_x) (x) P_b(w_y)) rho] for a two-qubit rho.
inline double pair_probability(const ComplexMatrix& rho, const SettingsPair& s, int x, int y,
                               int a, int b) {
    const ComplexMatrix op = tensor(projector(s.alice[x], a), projector(s.bob[y], b));
    return real_trace_product(op, rho);
}

// Expected (unit-normalized) four-fold table for two independent pairs in
// state `rho_pair`, equal time per setting: cell(x,y,a,b) =
// p(a,b|xy) p(-a,-b|xy).
inline CountTable exact_count_table(const ComplexMatrix& rho_pair, const SettingsPair& s) {
    CountTable t;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a : {1, -1})
                for (int b : {1, -1})
                    t.at(x, y, a, b) = pair_probability(rho_pair, s, x, y, a, b) *
                                       pair_probability(rho_pair, s, x, y, -a, -b);
    return t;
}

inline CountTable exact_count_table(double visibility, const SettingsPair& s) {
    return exact_count_table(werner_state(visibility).mat, s);
}

// Induced operator pair on (s1, s2, i1, i2):
//   A = sum_xy s_xy sum_ab ab P_a P_a' P_b P_b'   (s = +,+,+,-)
//   B = (1/4) sum_xy sum_ab    P_a P_a' P_b P_b'
// with a' = -a, b' = -b. For any state, T = Tr(A rho)/Tr(B rho).
struct WitnessOperators {
    ComplexMatrix a;  // Hermitian, spectral norm <= 4
    ComplexMatrix b;  // PSD, Tr b = 4
};

inline WitnessOperators witness_operators(const SettingsPair& s) {
    s.validate();
    WitnessOperators w;
    w.a = ComplexMatrix(16, 16);
    w.b = ComplexMatrix(16, 16);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a : {1, -1})
                for (int b : {1, -1}) {
                    const ComplexMatrix op =
                        tensor(tensor(projector(s.alice[x], a), projector(s.alice[x], -a)),
                               tensor(projector(s.bob[y], b), projector(s.bob[y], -b)));
                    ComplexMatrix t1 = op;
                    t1 *= cplx{static_cast<double>(witness_sign(x, y) * a * b), 0.0};
                    w.a += t1;
                    ComplexMatrix t2 = op;
                    t2 *= cplx{0.25, 0.0};
                    w.b += t2;
                }
    w.a.hermitize();
    w.b.hermitize();
    return w;
}

// S = E00 + E01 + E10 - E11.
inline double chsh(const std::array<double, 4>& e) {
    for (double v : e)
        if (std::abs(v) > 1.0 + 1e-12)
            throw ConfigError("chsh: correlator outside [-1, 1]");
    return e[0] + e[1] + e[2] - e[3];
}

// T expected for two independent Werner pairs: 4 sqrt(2) V / (1 + V^2/2).
inline double predict_t_from_visibility(double v) {
    if (v < 0.0 || v > 1.0)
        throw ConfigError("predict_t_from_visibility: V must be in [0, 1]");
    return 4.0 * std::sqrt(2.0) * v / (1.0 + 0.5 * v * v);
}

// Same model through the single-pair CHSH value S = 2 sqrt(2) V:
// T = 2 S / (1 + S^2/16).
inline double predict_t_from_chsh(double s) {
    if (s < 0.0 || s > 2.0 * std::sqrt(2.0) + 1e-12)
        throw ConfigError("predict_t_from_chsh: S must be in [0, 2 sqrt(2)]");
    return 2.0 * s / (1.0 + s * s / 16.0);
}

// Smallest per-pair visibility whose predicted T reaches the one-pair bound
// 5/sqrt(2): the root of 2.5 V^2 - 8 V + 5 in (0, 1], i.e. (8 - sqrt(14))/5.
inline double min_certifying_visibility() {
    return (8.0 - std::sqrt(14.0)) / 5.0;
}

}  // namespace qmux
