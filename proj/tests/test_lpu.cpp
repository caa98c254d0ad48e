#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "floercurves/field.hpp"
#include "floercurves/lpu.hpp"

using namespace floer;

namespace {

Matrix<Rational> matq(std::initializer_list<std::initializer_list<long long>> rows) {
    Matrix<Rational> m(rows.size(), rows.begin()->size());
    size_t r = 0;
    for (const auto& row : rows) {
        size_t c = 0;
        for (long long x : row) m(r, c++) = Rational(x);
        ++r;
    }
    return m;
}

} // namespace

TEST_CASE("lpu reproduces the 3x3 strip matrix factorization") {
    auto phi = matq({{0, 0, 1}, {-1, 1, 0}, {1, 0, 0}});
    auto f = lpu_decompose(phi);
    CHECK(f.lower == matq({{1, 0, 0}, {0, 1, 0}, {0, -1, 1}}));
    CHECK(f.middle == matq({{0, 0, 1}, {-1, 0, 0}, {0, 1, 0}}));
    CHECK(f.upper == matq({{1, -1, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(f.lower * f.middle * f.upper == phi);
    CHECK(f.moves_product() == phi);
}

TEST_CASE("lpu reproduces the 2x2 identity for lambda = 2") {
    auto phi = matq({{2, 1}, {1, 0}});
    auto f = lpu_decompose(phi);
    CHECK(f.lower(0, 0) == Rational(1));
    CHECK(f.lower(0, 1) == Rational(0));
    CHECK(f.lower(1, 1) == Rational(1));
    CHECK(f.lower(1, 0) == Rational(1, 2));
    CHECK(f.middle(0, 0) == Rational(2));
    CHECK(f.middle(1, 1) == Rational(-1, 2));
    CHECK(f.middle(0, 1) == Rational(0));
    CHECK(f.middle(1, 0) == Rational(0));
    CHECK(f.upper(0, 1) == Rational(1, 2));
    CHECK(f.lower * f.middle * f.upper == phi);
    CHECK(f.moves_product() == phi);
}

TEST_CASE("lpu on the identity is trivial") {
    auto id = Matrix<Rational>::identity(4);
    auto f = lpu_decompose(id);
    CHECK(f.moves.empty());
    CHECK(f.lower.is_identity());
    CHECK(f.middle.is_identity());
    CHECK(f.upper.is_identity());
}

TEST_CASE("lpu rejects singular matrices") {
    Matrix<Rational> z(3, 3);
    CHECK_THROWS(lpu_decompose(z));
    auto deg = matq({{1, 2}, {2, 4}});
    CHECK_THROWS(lpu_decompose(deg));
}

TEST_CASE("lpu product check on random invertible matrices") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 120; ++trial) {
        size_t n = 1 + rng() % 5;
        Matrix<Rational> m(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m(i, j) = Rational(entry(rng));
        if (!is_invertible(m)) continue;
        auto f = lpu_decompose(m);
        CHECK(f.lower * f.middle * f.upper == m);
        CHECK(f.moves_product() == m);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                CHECK(f.lower(i, j) == Rational(0));
                CHECK(f.upper(j, i) == Rational(0));
            }
        for (size_t i = 0; i < n; ++i) {
            CHECK(f.lower(i, i) == Rational(1));
            CHECK(f.upper(i, i) == Rational(1));
        }
        for (size_t i = 0; i < n; ++i) {
            size_t nz = 0;
            for (size_t j = 0; j < n; ++j)
                if (f.middle(i, j) != Rational(0)) ++nz;
            CHECK(nz == 1);
        }
    }
}

TEST_CASE("lpu over F2") {
    Matrix<F2> m(3, 3);
    m(0, 1) = F2(1);
    m(1, 0) = F2(1);
    m(1, 1) = F2(1);
    m(2, 2) = F2(1);
    auto f = lpu_decompose(m);
    CHECK(f.lower * f.middle * f.upper == m);
    CHECK(f.moves_product() == m);
}
