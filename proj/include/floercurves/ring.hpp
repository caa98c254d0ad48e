// The ground ring R = k[u,v]/(uv), its single-variable truncations k[u], k[v],
// and the monomial bigrading gr(u) = (-1,1), gr(v) = (1,1).

#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "floercurves/field.hpp"

namespace floer {

// Alexander grading is an integer; the delta grading is allowed to be a
// half-integer, stored as twice its value.
struct Bigrading {
    long long alexander = 0;
    long long delta2 = 0; // 2 * delta

    Bigrading() = default;
    Bigrading(long long a, long long d2) : alexander(a), delta2(d2) {}

    static Bigrading of_int(long long a, long long delta) { return Bigrading(a, 2 * delta); }

    Bigrading operator+(const Bigrading& o) const {
        return Bigrading(alexander + o.alexander, delta2 + o.delta2);
    }
    Bigrading operator-(const Bigrading& o) const {
        return Bigrading(alexander - o.alexander, delta2 - o.delta2);
    }
    Bigrading operator-() const { return Bigrading(-alexander, -delta2); }
    bool operator==(const Bigrading& o) const {
        return alexander == o.alexander && delta2 == o.delta2;
    }
    bool operator!=(const Bigrading& o) const { return !(*this == o); }
    bool operator<(const Bigrading& o) const {
        if (alexander != o.alexander) return alexander < o.alexander;
        return delta2 < o.delta2;
    }

    std::string delta_str() const {
        if (delta2 % 2 == 0) return std::to_string(delta2 / 2);
        return std::to_string(delta2) + "/2";
    }
    std::string str() const {
        return "(" + std::to_string(alexander) + "," + delta_str() + ")";
    }
};

// A monomial of R: 1, u^k or v^k with k >= 1.
struct Monomial {
    enum Kind { ONE = 0, U = 1, V = 2 };
    Kind kind = ONE;
    int power = 0; // 0 iff kind == ONE

    Monomial() = default;
    Monomial(Kind k, int p) : kind(k), power(p) {
        if ((k == ONE) != (p == 0)) throw std::invalid_argument("Monomial: bad power");
        if (p < 0) throw std::invalid_argument("Monomial: negative power");
    }
    static Monomial one() { return Monomial(); }
    static Monomial u(int k) { return Monomial(U, k); }
    static Monomial v(int k) { return Monomial(V, k); }

    bool is_one() const { return kind == ONE; }

    bool operator<(const Monomial& o) const {
        if (kind != o.kind) return kind < o.kind;
        return power < o.power;
    }
    bool operator==(const Monomial& o) const { return kind == o.kind && power == o.power; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    std::string str() const {
        switch (kind) {
            case ONE: return "1";
            case U: return power == 1 ? "u" : "u^" + std::to_string(power);
            default: return power == 1 ? "v" : "v^" + std::to_string(power);
        }
    }
};

// gr(u^k) = (-k, k), gr(v^k) = (k, k), gr(1) = (0, 0).
inline Bigrading grading_of(const Monomial& m) {
    switch (m.kind) {
        case Monomial::ONE: return Bigrading::of_int(0, 0);
        case Monomial::U: return Bigrading::of_int(-m.power, m.power);
        default: return Bigrading::of_int(m.power, m.power);
    }
}

// Product in R; u^a v^b = 0 whenever a, b >= 1. Returns false for a vanishing
// product so callers can drop the term.
inline bool mono_mul(const Monomial& x, const Monomial& y, Monomial& out) {
    if (x.is_one()) { out = y; return true; }
    if (y.is_one()) { out = x; return true; }
    if (x.kind != y.kind) return false;
    out = Monomial(x.kind, x.power + y.power);
    return true;
}

// An element of R = k[u,v]/(uv): finitely many monomials with nonzero
// coefficients. Also used for the subrings k[u] and k[v].
template <class K>
class RElement {
public:
    using Scalar = K;
    using Terms = std::map<Monomial, K>;

    RElement() = default;
    explicit RElement(const K& c) { add_term(Monomial::one(), c); }

    static RElement zero() { return RElement(); }
    static RElement one() { return RElement(K::one()); }
    static RElement monomial(const Monomial& m, const K& c = K::one()) {
        RElement r;
        r.add_term(m, c);
        return r;
    }
    static RElement u(int k, const K& c = K::one()) { return monomial(Monomial::u(k), c); }
    static RElement v(int k, const K& c = K::one()) { return monomial(Monomial::v(k), c); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_monomial() const { return terms_.size() == 1; }
    const Monomial& sole_monomial() const {
        if (!is_monomial()) throw std::logic_error("RElement: not a monomial");
        return terms_.begin()->first;
    }
    const K& sole_coeff() const {
        if (!is_monomial()) throw std::logic_error("RElement: not a monomial");
        return terms_.begin()->second;
    }

    K coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? K::zero() : it->second;
    }
    K constant_term() const { return coeff(Monomial::one()); }

    void add_term(const Monomial& m, const K& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    RElement operator+(const RElement& o) const {
        RElement r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    RElement operator-() const {
        RElement r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    RElement operator-(const RElement& o) const { return *this + (-o); }
    RElement& operator+=(const RElement& o) { return *this = *this + o; }
    RElement& operator-=(const RElement& o) { return *this = *this - o; }

    RElement operator*(const RElement& o) const {
        RElement r;
        Monomial prod;
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_)
                if (mono_mul(m1, m2, prod)) r.add_term(prod, c1 * c2);
        return r;
    }
    RElement& operator*=(const RElement& o) { return *this = *this * o; }
    RElement scaled(const K& c) const {
        RElement r;
        if (c.is_zero()) return r;
        for (const auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
        return r;
    }

    bool operator==(const RElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const RElement& o) const { return !(*this == o); }

    // Homogeneous elements are single monomials; distinct monomials of R have
    // distinct bigradings.
    bool is_homogeneous() const { return terms_.size() <= 1; }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            if (c.is_one() && !m.is_one()) os << m.str();
            else if (m.is_one()) os << c;
            else os << c << "*" << m.str();
        }
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const RElement& x) { return os << x.str(); }

private:
    Terms terms_;
};

template <class K>
inline RElement<K> r_mul(const RElement<K>& x, const RElement<K>& y) {
    return x * y;
}

} // namespace floer
