// The extended torus algebra of the once-punctured torus arc system and its
// quotient by rho_0. Basis: the two idempotents and the cyclic-interval words
// rho_I with I an interval in (0,1,2,3) mod 4 of length 1..4. Relations:
// rho_{i+1} rho_i = 0, rho_i rho_{i+1} = rho_{i(i+1)}, and words of length
// >= 5 are truncated to zero. The curvature term is
// c = rho_0123 + rho_1230 + rho_2301 + rho_3012.

#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "floercurves/field.hpp"

namespace floer {

enum class Idem : uint8_t { Dot = 0, Circle = 1 }; // Dot = bullet, Circle = hollow

inline const char* idem_name(Idem i) { return i == Idem::Dot ? "dot" : "circle"; }

// rho_i runs from vertex start(i) to vertex start(i+1); odd indices start at
// the bullet vertex.
inline Idem rho_start_vertex(int i) {
    return (i % 2 == 1) ? Idem::Dot : Idem::Circle;
}

// A basis word: an idempotent or an interval word rho_{s, s+1, ..., s+len-1}.
struct RhoWord {
    bool is_idem = true;
    Idem idem = Idem::Dot;
    int start = 0; // interval start in 0..3
    int len = 0;   // interval length 1..4

    RhoWord() = default;
    static RhoWord idempotent(Idem i) {
        RhoWord w;
        w.is_idem = true;
        w.idem = i;
        return w;
    }
    static RhoWord interval(int start, int len) {
        if (len < 1 || len > 4 || start < 0 || start > 3)
            throw std::invalid_argument("RhoWord: bad interval");
        RhoWord w;
        w.is_idem = false;
        w.start = start;
        w.len = len;
        return w;
    }
    // Parses digit strings like "1", "12", "0123".
    static RhoWord parse(const std::string& digits) {
        if (digits.empty() || digits.size() > 4)
            throw std::invalid_argument("RhoWord: bad word '" + digits + "'");
        int s = digits[0] - '0';
        if (s < 0 || s > 3) throw std::invalid_argument("RhoWord: bad digit");
        for (size_t i = 1; i < digits.size(); ++i)
            if (digits[i] - '0' != (s + static_cast<int>(i)) % 4)
                throw std::invalid_argument("RhoWord: not a cyclic interval '" + digits + "'");
        return interval(s, static_cast<int>(digits.size()));
    }

    Idem left_idem() const { return is_idem ? idem : rho_start_vertex(start); }
    Idem right_idem() const { return is_idem ? idem : rho_start_vertex((start + len) % 4); }
    bool contains_rho0() const {
        if (is_idem) return false;
        return start + len > 4 || start == 0;
    }

    bool operator<(const RhoWord& o) const {
        if (is_idem != o.is_idem) return is_idem > o.is_idem; // idempotents first
        if (is_idem) return idem < o.idem;
        if (len != o.len) return len < o.len;
        return start < o.start;
    }
    bool operator==(const RhoWord& o) const {
        if (is_idem != o.is_idem) return false;
        if (is_idem) return idem == o.idem;
        return start == o.start && len == o.len;
    }
    bool operator!=(const RhoWord& o) const { return !(*this == o); }

    std::string str() const {
        if (is_idem) return idem == Idem::Dot ? "i." : "i:";
        std::string s = "r";
        for (int k = 0; k < len; ++k) s += static_cast<char>('0' + (start + k) % 4);
        return s;
    }
    std::string digits() const {
        std::string s;
        for (int k = 0; k < len; ++k) s += static_cast<char>('0' + (start + k) % 4);
        return s;
    }
};

// Concatenation product on basis words; nullopt encodes zero.
inline std::optional<RhoWord> rho_mul(const RhoWord& x, const RhoWord& y) {
    if (x.is_idem && y.is_idem)
        return x.idem == y.idem ? std::optional<RhoWord>(x) : std::nullopt;
    if (x.is_idem)
        return x.idem == y.left_idem() ? std::optional<RhoWord>(y) : std::nullopt;
    if (y.is_idem)
        return y.idem == x.right_idem() ? std::optional<RhoWord>(x) : std::nullopt;
    // Words concatenate when y starts right after x ends; length >= 5 truncates.
    if (y.start != (x.start + x.len) % 4) return std::nullopt;
    if (x.len + y.len > 4) return std::nullopt;
    return RhoWord::interval(x.start, x.len + y.len);
}

template <class K>
class TorusElement {
public:
    using Scalar = K;
    using Terms = std::map<RhoWord, K>;

    TorusElement() = default;

    static TorusElement zero() { return TorusElement(); }
    // The unit is the sum of the two idempotents.
    static TorusElement one() {
        TorusElement t;
        t.add_term(RhoWord::idempotent(Idem::Dot), K::one());
        t.add_term(RhoWord::idempotent(Idem::Circle), K::one());
        return t;
    }
    static TorusElement idem(Idem i, const K& c = K::one()) {
        TorusElement t;
        t.add_term(RhoWord::idempotent(i), c);
        return t;
    }
    static TorusElement word(const RhoWord& w, const K& c = K::one()) {
        TorusElement t;
        t.add_term(w, c);
        return t;
    }
    static TorusElement rho(const std::string& digits, const K& c = K::one()) {
        return word(RhoWord::parse(digits), c);
    }
    static TorusElement curvature() {
        TorusElement c;
        for (int s = 0; s < 4; ++s) c.add_term(RhoWord::interval(s, 4), K::one());
        return c;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    K coeff(const RhoWord& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? K::zero() : it->second;
    }
    // Coefficient on the invertible part: the idempotent components.
    K idem_coeff(Idem i) const { return coeff(RhoWord::idempotent(i)); }
    bool has_idem_part() const {
        return !idem_coeff(Idem::Dot).is_zero() || !idem_coeff(Idem::Circle).is_zero();
    }

    void add_term(const RhoWord& w, const K& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TorusElement operator+(const TorusElement& o) const {
        TorusElement r = *this;
        for (const auto& [w, c] : o.terms_) r.add_term(w, c);
        return r;
    }
    TorusElement operator-() const {
        TorusElement r;
        for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
        return r;
    }
    TorusElement operator-(const TorusElement& o) const { return *this + (-o); }
    TorusElement& operator+=(const TorusElement& o) { return *this = *this + o; }
    TorusElement& operator-=(const TorusElement& o) { return *this = *this - o; }

    TorusElement operator*(const TorusElement& o) const {
        TorusElement r;
        for (const auto& [w1, c1] : terms_)
            for (const auto& [w2, c2] : o.terms_)
                if (auto w = rho_mul(w1, w2)) r.add_term(*w, c1 * c2);
        return r;
    }
    TorusElement& operator*=(const TorusElement& o) { return *this = *this * o; }
    TorusElement scaled(const K& c) const {
        TorusElement r;
        if (c.is_zero()) return r;
        for (const auto& [w, cc] : terms_) r.terms_.emplace(w, cc * c);
        return r;
    }

    bool operator==(const TorusElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const TorusElement& o) const { return !(*this == o); }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            if (c.is_one()) os << w.str();
            else os << c << "*" << w.str();
        }
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const TorusElement& x) {
        return os << x.str();
    }

private:
    Terms terms_;
};

template <class K>
inline TorusElement<K> torus_mul(const TorusElement<K>& x, const TorusElement<K>& y) {
    return x * y;
}

// Quotient A = Atilde / (rho_0): drops every term whose word contains rho_0.
template <class K>
inline TorusElement<K> quotient_rho0(const TorusElement<K>& x) {
    TorusElement<K> r;
    for (const auto& [w, c] : x.terms())
        if (!w.contains_rho0()) r.add_term(w, c);
    return r;
}

// Enumerates all basis words (2 idempotents + 16 intervals).
inline std::vector<RhoWord> all_rho_words() {
    std::vector<RhoWord> ws;
    ws.push_back(RhoWord::idempotent(Idem::Dot));
    ws.push_back(RhoWord::idempotent(Idem::Circle));
    for (int len = 1; len <= 4; ++len)
        for (int s = 0; s < 4; ++s) ws.push_back(RhoWord::interval(s, len));
    return ws;
}

} // namespace floer
