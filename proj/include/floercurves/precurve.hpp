// Simply-faced precurves: a type D structure over R = k[u,v]/(uv) is split
// into its two single-variable faces, each face is simplified to a partial
// matching of single-monomial arrows by a change of basis over k[v] resp.
// k[u], and the interaction between the two simplified bases is recorded in
// an invertible gluing matrix phi over k.

#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "floercurves/matrix.hpp"
#include "floercurves/typed.hpp"

namespace floer {

enum class Face : uint8_t { V = 0, U = 1 };

inline const char* face_name(Face f) { return f == Face::V ? "v" : "u"; }
inline Face other_face(Face f) { return f == Face::V ? Face::U : Face::V; }

// A partial matching with labels: each generator lies in at most one arrow.
template <class K>
struct FacePairing {
    struct Role {
        enum Kind { Free, Src, Tgt } kind = Free;
        size_t partner = 0;
        int power = 0;
        K coeff = K::zero();
    };
    std::vector<Role> roles;

    size_t size() const { return roles.size(); }
    bool is_free(size_t i) const { return roles[i].kind == Role::Free; }
    bool is_src(size_t i) const { return roles[i].kind == Role::Src; }
    bool is_tgt(size_t i) const { return roles[i].kind == Role::Tgt; }

    void add_arrow(size_t from, size_t to, int power, const K& coeff) {
        if (!is_free(from) || !is_free(to) || from == to)
            throw std::logic_error("FacePairing: not a matching");
        roles[from] = {Role::Src, to, power, coeff};
        roles[to] = {Role::Tgt, from, power, coeff};
    }

    // multiset of arrow powers, for invariants
    std::vector<int> power_multiset() const {
        std::vector<int> p;
        for (size_t i = 0; i < roles.size(); ++i)
            if (is_src(i)) p.push_back(roles[i].power);
        std::sort(p.begin(), p.end());
        return p;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < roles.size(); ++i) {
            if (!is_src(i)) continue;
            if (!first) os << ", ";
            first = false;
            os << i + 1 << "->" << roles[i].partner + 1 << " (pow " << roles[i].power
               << ", " << roles[i].coeff.str() << ")";
        }
        return first ? "{}" : "{" + os.str() + "}";
    }
};

template <class K>
struct FaceSimplification {
    FacePairing<K> pairing;
    Matrix<RElement<K>> change;      // S: new basis rows in terms of the old one
    Matrix<RElement<K>> change_inv;  // S^{-1}
    Matrix<K> change0;               // S with the face variable set to zero
    Matrix<RElement<K>> simple;      // S * D_face * S^{-1}, a matching matrix
};

// The data of a simply-faced precurve: matchings on the two sides of the
// strip and the invertible gluing matrix phi from eta- to xi-coordinates.
template <class K>
struct SimplyFacedPrecurve {
    size_t n = 0;
    FacePairing<K> v_pairing;  // on xi-indices
    FacePairing<K> u_pairing;  // on eta-indices
    Matrix<K> phi;

    std::string str() const {
        std::ostringstream os;
        os << "precurve on " << n << " strands\n  v: " << v_pairing.str()
           << "\n  u: " << u_pairing.str() << "\n  phi: " << phi.str();
        return os.str();
    }
};

namespace detail {

// Extracts the face part of the differential as a dense matrix of
// single-variable elements.
template <class K>
inline Matrix<RElement<K>> face_matrix(const TypeDR<K>& n, Face f) {
    Matrix<RElement<K>> m(n.size(), n.size(), RElement<K>::zero());
    auto kind = f == Face::V ? Monomial::V : Monomial::U;
    for (size_t i = 0; i < n.size(); ++i)
        for (const auto& [j, a] : n.arrows[i])
            for (const auto& [mono, c] : a.terms())
                if (mono.kind == kind) m(i, j).add_term(mono, c);
    return m;
}

template <class K>
inline int entry_power(const RElement<K>& e) {
    if (!e.is_monomial()) throw std::logic_error("face entry is not a single monomial");
    return e.sole_monomial().power;
}

// Conjugates M by the elementary change y_a = x_a + c x^e x_b (matrix rows are
// "from", columns "to"): M <- T M T^-1 with T = I + c x^e e_{ab}.
template <class K>
inline void apply_elementary(Matrix<RElement<K>>& m, Matrix<RElement<K>>& s,
                             Matrix<RElement<K>>& sinv, size_t a, size_t b,
                             const RElement<K>& coeff) {
    const size_t n = m.rows();
    // row a += coeff * row b, then col b -= coeff * col a
    for (size_t k = 0; k < n; ++k) m(a, k) += coeff * m(b, k);
    for (size_t k = 0; k < n; ++k) m(k, b) -= coeff * m(k, a);
    for (size_t k = 0; k < n; ++k) s(a, k) += coeff * s(b, k);
    for (size_t k = 0; k < n; ++k) sinv(k, b) -= coeff * sinv(k, a);
}

} // namespace detail

// Simplifies a single face of a reduced graded structure: after the returned
// change of basis the face differential pairs each generator with at most one
// other through a single monomial. Pivots take the lowest power first, then
// row-major order.
template <class K>
inline FaceSimplification<K> face_simplify(const TypeDR<K>& n, Face f) {
    const size_t sz = n.size();
    Matrix<RElement<K>> m = detail::face_matrix(n, f);
    Matrix<RElement<K>> s(sz, sz, RElement<K>::zero());
    Matrix<RElement<K>> sinv(sz, sz, RElement<K>::zero());
    for (size_t i = 0; i < sz; ++i) {
        s(i, i) = RElement<K>::one();
        sinv(i, i) = RElement<K>::one();
    }

    std::vector<bool> active(sz, true);
    for (;;) {
        // lowest power first, then row-major
        size_t pr = sz, pc = sz;
        int best = -1;
        for (size_t i = 0; i < sz; ++i) {
            if (!active[i]) continue;
            for (size_t j = 0; j < sz; ++j) {
                if (!active[j] || m(i, j).is_zero()) continue;
                int pow = detail::entry_power(m(i, j));
                if (best < 0 || pow < best) {
                    best = pow;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (best < 0) break;

        const K lambda = m(pr, pc).sole_coeff();
        // absorb the other targets of the pivot source into the pivot target
        for (size_t t = 0; t < sz; ++t) {
            if (t == pc || m(pr, t).is_zero()) continue;
            if (!active[t]) throw std::logic_error("face_simplify: inactive remnant");
            int e = detail::entry_power(m(pr, t));
            K c = m(pr, t).sole_coeff() / lambda;
            Monomial mono = e == best ? Monomial::one()
                                      : Monomial(f == Face::V ? Monomial::V : Monomial::U,
                                                 e - best);
            detail::apply_elementary(m, s, sinv, pc, t, RElement<K>::monomial(mono, c));
        }
        // clear the other sources shooting into the pivot target
        for (size_t q = 0; q < sz; ++q) {
            if (q == pr || m(q, pc).is_zero()) continue;
            if (!active[q]) throw std::logic_error("face_simplify: inactive remnant");
            int e = detail::entry_power(m(q, pc));
            K c = -(m(q, pc).sole_coeff() / lambda);
            Monomial mono = e == best ? Monomial::one()
                                      : Monomial(f == Face::V ? Monomial::V : Monomial::U,
                                                 e - best);
            detail::apply_elementary(m, s, sinv, q, pr, RElement<K>::monomial(mono, c));
        }
        // d^2 = 0 forces the rest of the pivot pair's row and column to vanish
        for (size_t k = 0; k < sz; ++k) {
            if (k != pr && !m(k, pr).is_zero())
                throw std::logic_error("face_simplify: pivot source row not clean");
            if (k != pc && !m(pc, k).is_zero())
                throw std::logic_error("face_simplify: pivot target column not clean");
        }
        active[pr] = false;
        active[pc] = false;
    }

    FaceSimplification<K> out;
    out.pairing.roles.resize(sz);
    for (size_t i = 0; i < sz; ++i)
        for (size_t j = 0; j < sz; ++j)
            if (!m(i, j).is_zero())
                out.pairing.add_arrow(i, j, detail::entry_power(m(i, j)), m(i, j).sole_coeff());
    out.change = s;
    out.change_inv = sinv;
    out.change0 = Matrix<K>(sz, sz);
    for (size_t i = 0; i < sz; ++i)
        for (size_t j = 0; j < sz; ++j) out.change0(i, j) = s(i, j).constant_term();
    out.simple = m;
    return out;
}

// The full simply-faced form: simplify both faces and read the gluing matrix
// off the two changes of basis at u = v = 0.
template <class K>
inline SimplyFacedPrecurve<K> to_simply_faced(const TypeDR<K>& n) {
    if (!n.graded()) throw std::invalid_argument("to_simply_faced: gradings required");
    validate(n);
    if (!is_reduced(n)) throw std::invalid_argument("to_simply_faced: input must be reduced");
    auto rep = check_compatibility(n);
    if (!rep.ok) throw std::invalid_argument("to_simply_faced: not compatible: " + rep.detail);

    auto sv = face_simplify(n, Face::V);
    auto su = face_simplify(n, Face::U);
    SimplyFacedPrecurve<K> p;
    p.n = n.size();
    p.v_pairing = sv.pairing;
    p.u_pairing = su.pairing;
    p.phi = sv.change0 * inverse(su.change0);
    return p;
}

// Rebuilds a type D structure over R from precurve data: the v-matching in
// xi-coordinates plus the u-matching conjugated through phi.
template <class K>
inline TypeDR<K> precurve_to_typeD(const SimplyFacedPrecurve<K>& p) {
    TypeDR<K> n(AlgebraTag::R);
    for (size_t i = 0; i < p.n; ++i)
        n.add_generator({"s" + std::to_string(i + 1), std::nullopt, std::nullopt});
    for (size_t i = 0; i < p.n; ++i)
        if (p.v_pairing.is_src(i)) {
            const auto& r = p.v_pairing.roles[i];
            n.add_arrow(i, r.partner, RElement<K>::v(r.power, r.coeff));
        }
    // u-part: M^xi = phi * M^eta * phi^{-1}
    Matrix<K> phi_inv = inverse(p.phi);
    for (size_t a = 0; a < p.n; ++a)
        if (p.u_pairing.is_src(a)) {
            const auto& r = p.u_pairing.roles[a];
            for (size_t i = 0; i < p.n; ++i)
                for (size_t j = 0; j < p.n; ++j) {
                    K c = p.phi(i, a) * r.coeff * phi_inv(r.partner, j);
                    if (!c.is_zero()) n.add_arrow(i, j, RElement<K>::u(r.power, c));
                }
        }
    return n;
}

} // namespace floer
