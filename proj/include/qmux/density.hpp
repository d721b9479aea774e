// Density matrices over registered tensor factorizations: construction,
// subsystem reordering, partial transpose, negativity, Werner states.
//
// Subsystem order for the four-photon state is (signal1, signal2, idler1,
// idler2); party A of the certification bipartition is {signal1, signal2}.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qmux/bloch.hpp"
#include "qmux/complex_matrix.hpp"
#include "qmux/eigen_sym.hpp"

namespace qmux {

struct DensityMatrix {
    ComplexMatrix mat;
    std::vector<int> dims;     // subsystem dimensions, slow-to-fast
    std::vector<int> party_a;  // subsystem indices forming party A

    int dim() const {
        return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
    }

    void validate() const {
        if (mat.rows() != mat.cols()) throw ConfigError("DensityMatrix: not square");
        if (dim() != mat.rows())
            throw ConfigError("DensityMatrix: product of dims does not match matrix size");
        for (int p : party_a)
            if (p < 0 || p >= static_cast<int>(dims.size()))
                throw ConfigError("DensityMatrix: bipartition index out of range");
        if (mat.hermiticity_defect() > kAlgebraTol)
            throw ConfigError("DensityMatrix: not Hermitian within 1e-12");
        if (std::abs(mat.trace() - cplx{1.0, 0.0}) > kSpectralTol)
            throw ConfigError("DensityMatrix: trace != 1 within 1e-10");
        if (min_eigenvalue(mat) < -kSpectralTol)
            throw ConfigError("DensityMatrix: negative eigenvalue beyond 1e-10");
    }
};

namespace detail {

inline std::vector<int> unpack_index(int idx, const std::vector<int>& dims) {
    std::vector<int> digits(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        digits[k] = idx % dims[k];
        idx /= dims[k];
    }
    return digits;
}

inline int pack_index(const std::vector<int>& digits, const std::vector<int>& dims) {
    int idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
    return idx;
}

}  // namespace detail

// Transposes the indices of the subsystems in `party` only.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const std::vector<int>& dims,
                                       const std::vector<int>& party) {
    const int d = m.rows();
    for (int p : party)
        if (p < 0 || p >= static_cast<int>(dims.size()))
            throw ConfigError("partial_transpose: bipartition index out of range");
    std::vector<bool> flip(dims.size(), false);
    for (int p : party) flip[p] = true;

    ComplexMatrix out(d, d);
    for (int r = 0; r < d; ++r) {
        auto ri = detail::unpack_index(r, dims);
        for (int c = 0; c < d; ++c) {
            auto ci = detail::unpack_index(c, dims);
            auto rr = ri, cc = ci;
            for (size_t k = 0; k < dims.size(); ++k)
                if (flip[k]) std::swap(rr[k], cc[k]);
            out(detail::pack_index(rr, dims), detail::pack_index(cc, dims)) = m(r, c);
        }
    }
    return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho) {
    return partial_transpose(rho.mat, rho.dims, rho.party_a);
}

// Sum of |negative eigenvalues| of the partial transpose; 0 for PPT states.
inline double negativity(const DensityMatrix& rho) {
    auto vals = hermitian_eigenvalues(partial_transpose(rho));
    double n = 0;
    for (double v : vals) n += std::max(0.0, -v);
    return n;
}

// Reorders tensor factors: perm[k] = position in the old order of the
// subsystem that lands at position k in the new order.
inline ComplexMatrix reorder_subsystems(const ComplexMatrix& m, const std::vector<int>& dims,
                                        const std::vector<int>& perm) {
    const int d = m.rows();
    std::vector<int> new_dims(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
    ComplexMatrix out(d, d);
    for (int r = 0; r < d; ++r) {
        auto ri = detail::unpack_index(r, dims);
        std::vector<int> rn(perm.size());
        for (size_t k = 0; k < perm.size(); ++k) rn[k] = ri[perm[k]];
        const int rp = detail::pack_index(rn, new_dims);
        for (int c = 0; c < d; ++c) {
            auto ci = detail::unpack_index(c, dims);
            std::vector<int> cn(perm.size());
            for (size_t k = 0; k < perm.size(); ++k) cn[k] = ci[perm[k]];
            out(rp, detail::pack_index(cn, new_dims)) = m(r, c);
        }
    }
    return out;
}

// The Bell state the default analyzer settings are CHSH-optimal for:
// (|01> + |10>)/sqrt(2) on (signal, idler).
inline const ComplexMatrix& bell_pair() {
    static const ComplexMatrix m = [] {
        ComplexMatrix b(4, 4);
        b(1, 1) = b(1, 2) = b(2, 1) = b(2, 2) = 0.5;
        return b;
    }();
    return m;
}

// rho_W(V) = V |bell><bell| + (1 - V) I/4.
inline DensityMatrix werner_state(double v) {
    if (v < 0.0 || v > 1.0) throw ConfigError("werner_state: visibility must be in [0, 1]");
    DensityMatrix rho;
    rho.mat = v * bell_pair();
    for (int i = 0; i < 4; ++i) rho.mat(i, i) += (1.0 - v) / 4.0;
    rho.dims = {2, 2};
    rho.party_a = {0};
    return rho;
}

// Two independent Werner pairs, expressed in the global (s1, s2, i1, i2)
// order with bipartition A = {s1, s2}.
inline DensityMatrix two_pair_state(double v) {
    const DensityMatrix pair = werner_state(v);
    // natural build order (s1, i1, s2, i2), then pull idler1 behind signal2
    ComplexMatrix joint = tensor(pair.mat, pair.mat);
    DensityMatrix rho;
    rho.mat = reorder_subsystems(joint, {2, 2, 2, 2}, {0, 2, 1, 3});
    rho.dims = {2, 2, 2, 2};
    rho.party_a = {0, 1};
    return rho;
}

}  // namespace qmux
