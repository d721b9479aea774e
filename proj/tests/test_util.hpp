// Shared helpers for the unit tests: seeded random states, vectors and
// brute-force oracles kept independent of the library paths they check.
#pragma once

#include <complex>
#include <random>
#include <vector>

#include "qmux/complex_matrix.hpp"
#include "qmux/bloch.hpp"

namespace qmux_test {

using qmux::ComplexMatrix;
using qmux::cplx;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20260810ULL);
    return gen;
}

inline double uniform(double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng());
}

inline qmux::BlochVector random_bloch() {
    std::normal_distribution<double> n(0.0, 1.0);
    qmux::BlochVector v{n(rng()), n(rng()), n(rng())};
    return v.normalized();
}

inline ComplexMatrix random_matrix(int n) {
    std::normal_distribution<double> d(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx{d(rng()), d(rng())};
    return m;
}

inline ComplexMatrix random_hermitian(int n) {
    ComplexMatrix m = random_matrix(n);
    ComplexMatrix h = m + m.dagger();
    h *= cplx{0.5, 0.0};
    h.hermitize();
    return h;
}

inline std::vector<cplx> random_pure(int n) {
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<cplx> v(n);
    double norm = 0;
    for (auto& x : v) {
        x = cplx{d(rng()), d(rng())};
        norm += std::norm(x);
    }
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    return v;
}

inline ComplexMatrix outer(const std::vector<cplx>& v) {
    ComplexMatrix m(static_cast<int>(v.size()), static_cast<int>(v.size()));
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = v[i] * std::conj(v[j]);
    return m;
}

// random mixture of product states on dims (da, db); separable by construction
inline ComplexMatrix random_separable(int da, int db, int terms) {
    ComplexMatrix rho(da * db, da * db);
    std::vector<double> w(terms);
    double tot = 0;
    for (auto& x : w) { x = uniform(0.1, 1.0); tot += x; }
    for (int t = 0; t < terms; ++t) {
        auto a = outer(random_pure(da));
        auto b = outer(random_pure(db));
        auto prod = qmux::tensor(a, b);
        prod *= cplx{w[t] / tot, 0.0};
        rho += prod;
    }
    rho.hermitize();
    return rho;
}

}  // namespace qmux_test
