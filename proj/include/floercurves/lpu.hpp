// LPU normal form of an invertible matrix over a field: phi = L * (P*D) * U
// with L lower unitriangular, P*D a scaled permutation and U upper
// unitriangular, together with the corresponding strip factorization into
// elementary moves (crossings, crossover switches, passing loops).

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "floercurves/matrix.hpp"

namespace floer {

template <class K>
struct StripMove {
    enum Kind { Crossing, CrossoverSwitch, PassingLoop } kind;
    size_t i = 0, j = 0; // Crossing swaps (i, i+1); switch adds lambda * strand i into strand j, |i-j| = 1
    K lambda = K::zero();

    Matrix<K> matrix(size_t n) const {
        Matrix<K> m = Matrix<K>::identity(n);
        switch (kind) {
            case Crossing:
                m(i, i) = K::zero();
                m(i + 1, i + 1) = K::zero();
                m(i, i + 1) = K::one();
                m(i + 1, i) = K::one();
                break;
            case CrossoverSwitch:
                m(j, i) = lambda;
                break;
            case PassingLoop:
                m(i, i) = lambda;
                break;
        }
        return m;
    }

    std::string str() const {
        switch (kind) {
            case Crossing:
                return "crossing(" + std::to_string(i + 1) + "," + std::to_string(i + 2) + ")";
            case CrossoverSwitch:
                return "switch(" + std::to_string(i + 1) + "->" + std::to_string(j + 1) +
                       ", " + lambda.str() + ")";
            default:
                return "loop(" + std::to_string(i + 1) + ", " + lambda.str() + ")";
        }
    }
};

template <class K>
struct StripFactorization {
    size_t n = 0;
    Matrix<K> lower, middle, upper; // phi = lower * middle * upper
    std::vector<StripMove<K>> moves; // product in list order equals phi

    Matrix<K> moves_product() const {
        Matrix<K> p = Matrix<K>::identity(n);
        for (const auto& mv : moves) p = p * mv.matrix(n);
        return p;
    }
};

namespace detail {

// Expands a general transvection I + lambda e_{dst,src} into adjacent
// crossover switches conjugated by crossings.
template <class K>
inline void append_transvection(std::vector<StripMove<K>>& out, size_t dst, size_t src,
                                const K& lambda) {
    if (lambda == K::zero()) return;
    if (dst == src) throw std::logic_error("transvection: dst == src");
    // Walk dst next to src by crossings, emit the adjacent switch, walk back.
    std::vector<size_t> cross;
    size_t d = dst;
    while (d + 1 < src) {
        cross.push_back(d);
        ++d;
    }
    while (d > src + 1) {
        cross.push_back(d - 1);
        --d;
    }
    for (size_t c : cross) out.push_back({StripMove<K>::Crossing, c, 0, K::zero()});
    out.push_back({StripMove<K>::CrossoverSwitch, src, d, lambda});
    for (auto it = cross.rbegin(); it != cross.rend(); ++it)
        out.push_back({StripMove<K>::Crossing, *it, 0, K::zero()});
}

// Expands a scaled permutation into adjacent crossings followed by loops.
template <class K>
inline void append_scaled_permutation(std::vector<StripMove<K>>& out, const Matrix<K>& pd) {
    size_t n = pd.rows();
    std::vector<size_t> target(n); // target[c] = row of the nonzero in column c
    std::vector<K> scale(n, K::zero());
    for (size_t c = 0; c < n; ++c) {
        for (size_t r = 0; r < n; ++r)
            if (!(pd(r, c) == K::zero())) {
                target[c] = r;
                scale[c] = pd(r, c);
            }
    }
    // Bubble-sort decomposition: P = product of adjacent swaps.
    std::vector<size_t> perm = target; // column -> row
    std::vector<StripMove<K>> swaps;
    for (;;) {
        bool moved = false;
        for (size_t c = 0; c + 1 < n; ++c) {
            if (perm[c] > perm[c + 1]) {
                std::swap(perm[c], perm[c + 1]);
                swaps.push_back({StripMove<K>::Crossing, c, 0, K::zero()});
                moved = true;
            }
        }
        if (!moved) break;
    }
    // P = swaps applied right-to-left: emit in reverse so the list-order
    // product equals P.
    for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) out.push_back(*it);
    for (size_t c = 0; c < n; ++c)
        if (!(scale[c] == K::one()))
            out.push_back({StripMove<K>::PassingLoop, c, 0, scale[c]});
}

} // namespace detail

// Gaussian LPU: sweep columns left to right, pivot on the topmost nonzero in
// each column among unused rows, clear the column below into L and the pivot
// row rightwards into U.
template <class K>
inline StripFactorization<K> lpu_decompose(const Matrix<K>& phi) {
    if (phi.rows() != phi.cols()) throw std::invalid_argument("lpu_decompose: not square");
    const size_t n = phi.rows();
    if (!is_invertible(phi)) throw std::invalid_argument("lpu_decompose: singular matrix");

    Matrix<K> w = phi;
    Matrix<K> lower = Matrix<K>::identity(n);
    Matrix<K> upper = Matrix<K>::identity(n);
    std::vector<StripMove<K>> lmoves, umoves;
    std::vector<bool> used(n, false);

    for (size_t j = 0; j < n; ++j) {
        size_t p = n;
        for (size_t r = 0; r < n; ++r)
            if (!used[r] && !(w(r, j) == K::zero())) { p = r; break; }
        if (p == n) throw std::invalid_argument("lpu_decompose: singular matrix");
        used[p] = true;
        const K pivot = w(p, j);
        for (size_t r = 0; r < n; ++r) {
            if (used[r] || w(r, j) == K::zero()) continue;
            K f = w(r, j) / pivot;
            w.add_row(r, p, -f);            // W := E W
            lower.add_col(p, r, f);          // L := L E^{-1}
        }
        for (size_t c = j + 1; c < n; ++c) {
            if (w(p, c) == K::zero()) continue;
            K f = w(p, c) / pivot;
            w.add_col(c, j, -f);            // W := W E'
            upper.add_row(j, c, f);          // U := E'^{-1} U
        }
    }

    StripFactorization<K> out;
    out.n = n;
    out.lower = lower;
    out.middle = w;
    out.upper = upper;
    if (!(lower * w * upper == phi))
        throw std::logic_error("lpu_decompose: internal product check failed");

    // Moves: L first, then the scaled permutation, then U; the list-order
    // product of elementary matrices reproduces phi. Unitriangular matrices
    // factor exactly into their entry transvections when columns are emitted
    // increasing for L and decreasing for U.
    for (size_t c = 0; c < n; ++c)
        for (size_t r = c + 1; r < n; ++r)
            if (!(lower(r, c) == K::zero()))
                detail::append_transvection(out.moves, r, c, lower(r, c));
    detail::append_scaled_permutation(out.moves, w);
    for (size_t c = n; c-- > 0;)
        for (size_t r = 0; r < c; ++r)
            if (!(upper(r, c) == K::zero()))
                detail::append_transvection(out.moves, r, c, upper(r, c));

    if (!(out.moves_product() == phi))
        throw std::logic_error("lpu_decompose: move product check failed");
    return out;
}

} // namespace floer
