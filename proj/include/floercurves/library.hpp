// Built-in knot complexes over R = k[u,v]/(uv).

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "floercurves/typed.hpp"

namespace floer {

inline std::vector<std::string> library_ids() {
    return {"unknot", "trefoil_rh", "trefoil_lh", "cable_2_1_trefoil_rh"};
}

template <class K>
TypeDR<K> library_unknot() {
    TypeDR<K> n(AlgebraTag::R);
    n.add_generator({"a", std::nullopt, Bigrading::of_int(0, 0)});
    return n;
}

// Right-hand trefoil: x1 <-u- x2 -v-> x3 with gradings (1,1), (0,1), (-1,1).
template <class K>
TypeDR<K> library_trefoil_rh() {
    TypeDR<K> n(AlgebraTag::R);
    size_t x1 = n.add_generator({"x1", std::nullopt, Bigrading::of_int(1, 1)});
    size_t x2 = n.add_generator({"x2", std::nullopt, Bigrading::of_int(0, 1)});
    size_t x3 = n.add_generator({"x3", std::nullopt, Bigrading::of_int(-1, 1)});
    n.add_arrow(x2, x1, RElement<K>::u(1));
    n.add_arrow(x2, x3, RElement<K>::v(1));
    return n;
}

template <class K>
TypeDR<K> library_trefoil_lh() {
    return dual(library_trefoil_rh<K>());
}

// (2,1)-cable of the right-hand trefoil: a single chain of seven generators
// with vertical arrows v, v^2, v and horizontal arrows u, u^2, u.
template <class K>
TypeDR<K> library_cable() {
    TypeDR<K> n(AlgebraTag::R);
    const long long a[7] = {2, 1, 2, 0, -2, -1, -2};
    const long long d[7] = {0, 0, 0, 1, 0, 0, 0};
    std::vector<size_t> g;
    for (int i = 0; i < 7; ++i)
        g.push_back(n.add_generator(
            {"g" + std::to_string(i), std::nullopt, Bigrading::of_int(a[i], d[i])}));
    n.add_arrow(g[1], g[0], RElement<K>::u(1));
    n.add_arrow(g[2], g[1], RElement<K>::v(1));
    n.add_arrow(g[3], g[2], RElement<K>::u(2));
    n.add_arrow(g[3], g[4], RElement<K>::v(2));
    n.add_arrow(g[4], g[5], RElement<K>::u(1));
    n.add_arrow(g[5], g[6], RElement<K>::v(1));
    return n;
}

template <class K>
TypeDR<K> library_knot(const std::string& id) {
    if (id == "unknot") return library_unknot<K>();
    if (id == "trefoil_rh") return library_trefoil_rh<K>();
    if (id == "trefoil_lh") return library_trefoil_lh<K>();
    if (id == "cable_2_1_trefoil_rh") return library_cable<K>();
    throw std::invalid_argument("unknown library knot: " + id);
}

} // namespace floer
