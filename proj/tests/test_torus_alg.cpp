#include <catch2/catch_amalgamated.hpp>

#include "floercurves/torus_alg.hpp"

using namespace floer;

using TQ = TorusElement<Rational>;
using TF = TorusElement<F2>;

TEST_CASE("torus_mul basic relations") {
    // rho_2 * rho_1 = 0
    CHECK(torus_mul(TQ::rho("2"), TQ::rho("1")).is_zero());
    // rho_1 * rho_2 = rho_12
    CHECK(torus_mul(TQ::rho("1"), TQ::rho("2")) == TQ::rho("12"));
    // rho_0 * rho_123 = rho_0123
    CHECK(torus_mul(TQ::rho("0"), TQ::rho("123")) == TQ::rho("0123"));
    // length >= 5 truncates to zero
    CHECK(torus_mul(TQ::rho("0123"), TQ::rho("0")).is_zero());
    CHECK(torus_mul(TQ::rho("12"), TQ::rho("301")).is_zero());
}

TEST_CASE("idempotents act as units on compatible words") {
    // rho_1 runs from the bullet vertex to the hollow one.
    CHECK(RhoWord::parse("1").left_idem() == Idem::Dot);
    CHECK(RhoWord::parse("1").right_idem() == Idem::Circle);
    CHECK(RhoWord::parse("0").left_idem() == Idem::Circle);
    CHECK(RhoWord::parse("12").right_idem() == Idem::Dot);

    CHECK(torus_mul(TQ::idem(Idem::Dot), TQ::rho("1")) == TQ::rho("1"));
    CHECK(torus_mul(TQ::idem(Idem::Circle), TQ::rho("1")).is_zero());
    CHECK(torus_mul(TQ::rho("1"), TQ::idem(Idem::Circle)) == TQ::rho("1"));
    CHECK(torus_mul(TQ::rho("1"), TQ::idem(Idem::Dot)).is_zero());
    CHECK(torus_mul(TQ::one(), TQ::rho("23")) == TQ::rho("23"));
    CHECK(torus_mul(TQ::rho("23"), TQ::one()) == TQ::rho("23"));
}

TEST_CASE("associativity on all basis words") {
    auto words = all_rho_words();
    for (const auto& a : words)
        for (const auto& b : words)
            for (const auto& c : words) {
                auto lhs = torus_mul(torus_mul(TF::word(a), TF::word(b)), TF::word(c));
                auto rhs = torus_mul(TF::word(a), torus_mul(TF::word(b), TF::word(c)));
                CHECK(lhs == rhs);
            }
}

TEST_CASE("quotient_rho0") {
    CHECK(quotient_rho0(TQ::rho("0")).is_zero());
    CHECK(quotient_rho0(TQ::rho("12")) == TQ::rho("12"));
    CHECK(quotient_rho0(TQ::rho("230") + TQ::rho("1")) == TQ::rho("1"));
    // rho_30 and rho_3012 contain rho_0 even though the word does not start with 0
    CHECK(quotient_rho0(TQ::rho("30")).is_zero());
    CHECK(quotient_rho0(TQ::rho("3012")).is_zero());
}

TEST_CASE("quotient_rho0 is an algebra homomorphism") {
    auto words = all_rho_words();
    for (const auto& a : words)
        for (const auto& b : words) {
            auto lhs = quotient_rho0(torus_mul(TQ::word(a), TQ::word(b)));
            auto rhs = torus_mul(quotient_rho0(TQ::word(a)), quotient_rho0(TQ::word(b)));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("curvature term") {
    auto c = TQ::curvature();
    CHECK(c.terms().size() == 4);
    for (const auto& [w, coeff] : c.terms()) {
        CHECK(w.len == 4);
        CHECK(coeff.is_one());
    }
    // c kills every generator up to truncation: words of length >= 5 vanish
    for (int i = 0; i < 4; ++i) {
        auto r = TQ::rho(std::string(1, static_cast<char>('0' + i)));
        CHECK(torus_mul(c, r).is_zero());
        CHECK(torus_mul(r, c).is_zero());
    }
}
