// Bloch vectors and the qubit operators they generate.
#pragma once

#include <cmath>

#include "qmux/common.hpp"
#include "qmux/complex_matrix.hpp"

namespace qmux {

struct BlochVector {
    double x = 0, y = 0, z = 1;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool is_unit(double tol = kAlgebraTol) const { return std::abs(norm() - 1.0) <= tol; }

    BlochVector normalized() const {
        const double n = norm();
        if (n == 0.0) throw ConfigError("BlochVector: cannot normalize the zero vector");
        return {x / n, y / n, z / n};
    }
};

inline const ComplexMatrix& sigma_x() {
    static const ComplexMatrix m = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
    return m;
}
inline const ComplexMatrix& sigma_y() {
    static const ComplexMatrix m = ComplexMatrix::from_rows({{0, cplx{0, -1}}, {cplx{0, 1}, 0}});
    return m;
}
inline const ComplexMatrix& sigma_z() {
    static const ComplexMatrix m = ComplexMatrix::from_rows({{1, 0}, {0, -1}});
    return m;
}

// v . sigma for unit v: Hermitian, traceless, eigenvalues +-1.
inline ComplexMatrix pauli_along(const BlochVector& v) {
    if (!v.is_unit())
        throw ConfigError("pauli_along: Bloch vector must be unit norm");
    ComplexMatrix m(2, 2);
    m(0, 0) = v.z;
    m(0, 1) = cplx{v.x, -v.y};
    m(1, 0) = cplx{v.x, v.y};
    m(1, 1) = -v.z;
    return m;
}

// P_a = (1 + a v.sigma)/2 for outcome a in {+1, -1}.
inline ComplexMatrix projector(const BlochVector& v, int a) {
    ComplexMatrix m = pauli_along(v);
    m *= cplx{0.5 * a, 0.0};
    m(0, 0) += 0.5;
    m(1, 1) += 0.5;
    return m;
}

}  // namespace qmux
