// Shared test utilities: random curve sets, random graded basis changes and
// stabilizations, scalar construction helpers.

#pragma once

#include <random>

#include "floercurves/curves.hpp"
#include "floercurves/library.hpp"

namespace floer::testing {

template <class K>
K random_nonzero_scalar(std::mt19937& rng) {
    if constexpr (std::is_same_v<K, F2>) {
        return F2(1);
    } else {
        static const long long nums[] = {1, -1, 2, -2, 3, 1, -1, 2};
        return Rational(nums[rng() % 8]);
    }
}

template <class K>
K random_scalar(std::mt19937& rng) {
    if (rng() % 3 == 0) return K::zero();
    return random_nonzero_scalar<K>(rng);
}

inline int random_winding(std::mt19937& rng, int max_abs = 3) {
    int w = 1 + static_cast<int>(rng() % max_abs);
    return rng() % 2 ? w : -w;
}

// A random knot-like open curve: alternating word with one end at each
// puncture. When `symmetric` is set the u- and v-winding sums agree, which is
// the shape realized by knots in the three-sphere.
template <class K>
OpenCurve<K> random_knot_like(std::mt19937& rng, size_t pairs, bool symmetric) {
    for (int attempt = 0; attempt < 512; ++attempt) {
        OpenCurve<K> oc;
        oc.start_puncture = Face::U;
        oc.end_puncture = Face::V;
        for (size_t t = 0; t < pairs; ++t) {
            oc.word.push_back({Face::V, random_winding(rng)});
            oc.word.push_back({Face::U, random_winding(rng)});
        }
        if (!symmetric) return oc;
        long long sv = 0, su = 0;
        for (const auto& e : oc.word) (e.face == Face::V ? sv : su) += e.winding;
        if (sv == su) return oc;
    }
    OpenCurve<K> oc; // trefoil-shaped fallback
    oc.start_puncture = Face::U;
    oc.end_puncture = Face::V;
    oc.word = {{Face::V, 1}, {Face::U, 1}};
    return oc;
}

// A random gradable closed curve: alternating even word whose winding numbers
// sum to zero and whose delta-steps balance.
template <class K>
std::optional<ClosedCurve<K>> random_closed(std::mt19937& rng, size_t pairs, size_t max_dim = 2) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        ClosedCurve<K> cc;
        for (size_t t = 0; t < pairs; ++t) {
            cc.word.push_back({Face::V, random_winding(rng, 2)});
            cc.word.push_back({Face::U, random_winding(rng, 2)});
        }
        long long sum = 0, d2 = 0;
        for (const auto& e : cc.word) {
            sum += e.winding;
            long long step = e.winding - (e.winding > 0 ? 1 : -1);
            d2 += (e.face == Face::V ? step : -step);
        }
        if (sum != 0 || d2 != 0) continue;
        size_t dim = 1 + rng() % max_dim;
        if (dim == 1) {
            Matrix<K> m(1, 1);
            m(0, 0) = random_nonzero_scalar<K>(rng);
            cc.system.matrix = m;
        } else {
            // a Jordan-type block, indecomposable over the base field
            Matrix<K> m = Matrix<K>::identity(dim);
            for (size_t i = 0; i + 1 < dim; ++i) m(i + 1, i) = random_nonzero_scalar<K>(rng);
            cc.system.matrix = m;
        }
        return cc;
    }
    return std::nullopt;
}

template <class K>
CurveSet<K> random_curve_set(std::mt19937& rng, bool symmetric_knot = true) {
    CurveSet<K> c;
    c.open.push_back(random_knot_like<K>(rng, rng() % 3, symmetric_knot));
    if (rng() % 2) {
        auto cc = random_closed<K>(rng, 1 + rng() % 2);
        if (cc) c.closed.push_back(*cc);
    }
    return c;
}

// In-place graded transvection x_i += coeff * x_j on a type D structure.
template <class K>
void apply_transvection(TypeDR<K>& n, size_t i, size_t j, const RElement<K>& coeff) {
    // row i += coeff * row j
    std::vector<std::pair<size_t, RElement<K>>> adds;
    for (const auto& [k, a] : n.arrows[j]) adds.push_back({k, coeff * a});
    for (const auto& [k, a] : adds) n.add_arrow(i, k, a);
    // col j -= coeff * col i
    for (size_t k = 0; k < n.size(); ++k) {
        auto it = n.arrows[k].find(i);
        if (it == n.arrows[k].end()) continue;
        n.add_arrow(k, j, -(coeff * it->second));
    }
}

// Applies a sequence of random graded basis changes (transvections allowed by
// the bigradings, plus scalings).
template <class K>
void random_graded_basis_change(TypeDR<K>& n, std::mt19937& rng, size_t ops = 8) {
    const size_t sz = n.size();
    if (sz < 1) return;
    for (size_t t = 0; t < ops; ++t) {
        size_t i = rng() % sz, j = rng() % sz;
        if (i == j) {
            // scaling x_i *= c: row * c, col / c
            K c = random_nonzero_scalar<K>(rng);
            for (auto& [k, a] : n.arrows[i]) a = a.scaled(c);
            for (size_t k = 0; k < sz; ++k) {
                auto it = n.arrows[k].find(i);
                if (it != n.arrows[k].end()) it->second = it->second.scaled(c.inverse());
            }
            continue;
        }
        if (!n.gens[i].gr || !n.gens[j].gr) continue;
        const Bigrading gi = *n.gens[i].gr, gj = *n.gens[j].gr;
        K c = random_nonzero_scalar<K>(rng);
        if (gi == gj) {
            apply_transvection(n, i, j, RElement<K>(c));
        } else if (gi.delta2 > gj.delta2 && (gi.delta2 - gj.delta2) % 2 == 0) {
            long long k = (gi.delta2 - gj.delta2) / 2;
            if (gi.alexander == gj.alexander + k)
                apply_transvection(n, i, j, RElement<K>::v(static_cast<int>(k), c));
            else if (gi.alexander == gj.alexander - k)
                apply_transvection(n, i, j, RElement<K>::u(static_cast<int>(k), c));
        }
    }
}

// Adds a cancelling pair x -> y (with a 1-arrow) carrying consistent gradings.
template <class K>
void stabilize(TypeDR<K>& n, std::mt19937& rng) {
    long long a = static_cast<long long>(rng() % 5) - 2;
    long long d = static_cast<long long>(rng() % 5) - 2;
    size_t x = n.add_generator({"stab_x", std::nullopt, Bigrading::of_int(a, d)});
    size_t y = n.add_generator({"stab_y", std::nullopt, Bigrading::of_int(a, d + 1)});
    n.add_arrow(x, y, RElement<K>::one());
}

} // namespace floer::testing
