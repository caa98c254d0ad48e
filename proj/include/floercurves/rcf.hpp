// Rational canonical form over an exact field, used to put local systems
// into a normal form: similarity classes of invertible matrices are
// classified by their invariant factors.

#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "floercurves/matrix.hpp"

namespace floer {

// Dense univariate polynomial over K, highest coefficient last.
template <class K>
struct Poly {
    std::vector<K> c;

    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly zero() { return Poly(); }
    static Poly constant(const K& k) { return Poly(std::vector<K>{k}); }
    static Poly x() { return Poly(std::vector<K>{K::zero(), K::one()}); }

    void trim() {
        while (!c.empty() && c.back() == K::zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const K& leading() const { return c.back(); }

    Poly operator+(const Poly& o) const {
        Poly r = *this;
        if (o.c.size() > r.c.size()) r.c.resize(o.c.size(), K::zero());
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& k : r.c) k = -k;
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        Poly r;
        r.c.assign(c.size() + o.c.size() - 1, K::zero());
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        r.trim();
        return r;
    }
    Poly scaled(const K& k) const {
        Poly r = *this;
        for (auto& x : r.c) x *= k;
        r.trim();
        return r;
    }
    // monic normalization
    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(leading().inverse());
    }

    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero");
        q = Poly();
        r = a;
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            K f = r.leading() / b.leading();
            Poly t;
            t.c.assign(shift + 1, K::zero());
            t.c[shift] = f;
            q = q + t;
            r = r - t * b;
        }
    }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    // lexicographic by degree then coefficients, for deterministic tie-breaks
    bool operator<(const Poly& o) const {
        if (c.size() != o.c.size()) return c.size() < o.c.size();
        for (size_t i = c.size(); i-- > 0;) {
            if (c[i] != o.c[i]) return c[i] < o.c[i];
        }
        return false;
    }
};

// Invariant factors of an invertible matrix M: the nonunit diagonal entries
// of the Smith normal form of xI - M over K[x], each monic, f1 | f2 | ... .
template <class K>
inline std::vector<Poly<K>> invariant_factors(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("invariant_factors: not square");
    const size_t n = m.rows();
    using P = Poly<K>;
    Matrix<P> a(n, n, P::zero());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            a(i, j) = P::constant(-m(i, j));
            if (i == j) a(i, j) = a(i, j) + P::x();
        }

    // Smith normal form over the Euclidean domain K[x].
    auto divides = [](const P& d, const P& x) {
        P q, r;
        P::divmod(x, d, q, r);
        return r.is_zero();
    };
    for (size_t t = 0; t < n; ++t) {
        for (;;) {
            // move the minimal-degree nonzero entry of the active block to (t,t)
            size_t pr = n, pc = n;
            int best = -1;
            for (size_t i = t; i < n; ++i)
                for (size_t j = t; j < n; ++j) {
                    if (a(i, j).is_zero()) continue;
                    if (best < 0 || a(i, j).degree() < best) {
                        best = a(i, j).degree();
                        pr = i;
                        pc = j;
                    }
                }
            if (best < 0) { t = n; break; } // remaining block is zero
            a.swap_rows(t, pr);
            a.swap_cols(t, pc);
            for (size_t i = t + 1; i < n; ++i)
                if (!a(i, t).is_zero()) {
                    P q, r;
                    P::divmod(a(i, t), a(t, t), q, r);
                    for (size_t j = t; j < n; ++j) a(i, j) = a(i, j) - q * a(t, j);
                }
            for (size_t j = t + 1; j < n; ++j)
                if (!a(t, j).is_zero()) {
                    P q, r;
                    P::divmod(a(t, j), a(t, t), q, r);
                    for (size_t i = t; i < n; ++i) a(i, j) = a(i, j) - a(i, t) * q;
                }
            bool clear = true;
            for (size_t i = t + 1; i < n; ++i)
                if (!a(i, t).is_zero()) clear = false;
            for (size_t j = t + 1; j < n; ++j)
                if (!a(t, j).is_zero()) clear = false;
            if (!clear) continue; // remainders shrank some entry; re-pivot
            // enforce divisibility into the remaining block
            bool fixed = false;
            for (size_t i = t + 1; i < n && !fixed; ++i)
                for (size_t j = t + 1; j < n && !fixed; ++j)
                    if (!a(i, j).is_zero() && !divides(a(t, t), a(i, j))) {
                        for (size_t jj = t; jj < n; ++jj) a(t, jj) = a(t, jj) + a(i, jj);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (t == n) break;
    }

    std::vector<Poly<K>> factors;
    for (size_t i = 0; i < n; ++i) {
        P f = a(i, i).monic();
        if (f.degree() >= 1) factors.push_back(f);
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

// Companion matrix of a monic polynomial.
template <class K>
inline Matrix<K> companion(const Poly<K>& f) {
    int d = f.degree();
    Matrix<K> m(d, d);
    for (int i = 1; i < d; ++i) m(i, i - 1) = K::one();
    for (int i = 0; i < d; ++i) m(i, d - 1) = -f.c[i];
    return m;
}

// Rational canonical form: block diagonal of companion matrices of the
// invariant factors.
template <class K>
inline Matrix<K> rational_canonical_form(const Matrix<K>& m) {
    auto factors = invariant_factors(m);
    size_t n = 0;
    for (const auto& f : factors) n += f.degree();
    Matrix<K> out(n, n);
    size_t off = 0;
    for (const auto& f : factors) {
        auto c = companion(f);
        for (size_t i = 0; i < c.rows(); ++i)
            for (size_t j = 0; j < c.cols(); ++j) out(off + i, off + j) = c(i, j);
        off += c.rows();
    }
    return out;
}

template <class K>
inline bool similar(const Matrix<K>& a, const Matrix<K>& b) {
    return invariant_factors(a) == invariant_factors(b);
}

} // namespace floer
