#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kpos/matrix.hpp"

using namespace kpos;

namespace {

RationalMatrix from_longs(const std::vector<std::vector<long>>& rows) {
    int n = static_cast<int>(rows.size());
    RationalMatrix m(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) m.at(i, j) = rows[i - 1][j - 1];
    return m;
}

RationalMatrix pascal(int n) {
    RationalMatrix m(n);
    for (int i = 1; i <= n; ++i) m.at(i, 1) = m.at(1, i) = 1;
    for (int i = 2; i <= n; ++i)
        for (int j = 2; j <= n; ++j) m.at(i, j) = m.at(i - 1, j) + m.at(i, j - 1);
    return m;
}

// The small epsilon-power matrix with a lone negative 2x2 minor.
RationalMatrix spiked_example(const Rational& eps) {
    RationalMatrix m(3);
    m.at(1, 1) = eps;          m.at(1, 2) = 1; m.at(1, 3) = eps * eps;
    m.at(2, 1) = 1;            m.at(2, 2) = eps; m.at(2, 3) = 1;
    m.at(3, 1) = eps * eps;    m.at(3, 2) = 1; m.at(3, 3) = 1 / (eps * eps);
    return m;
}

// Independent cofactor-expansion oracle, deliberately naive.
Rational naive_det(const std::vector<std::vector<Rational>>& a) {
    const size_t n = a.size();
    if (n == 1) return a[0][0];
    Rational total(0);
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<Rational>> sub;
        for (size_t i = 1; i < n; ++i) {
            std::vector<Rational> row;
            for (size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(a[i][j]);
            sub.push_back(std::move(row));
        }
        Rational term = a[0][c] * naive_det(sub);
        total += c % 2 == 0 ? term : -term;
    }
    return total;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(rational_str(Rational(3, 2)) == "3/2");
    CHECK(rational_str(Rational(-5)) == "-5");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("rational_pow handles signed exponents") {
    CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(rational_pow(Rational(7), 0) == Rational(1));
    CHECK_THROWS_AS(rational_pow(Rational(0), -1), InputError);
}

TEST_CASE("minor id validation and ordering") {
    MinorId ok({1, 3}, {2, 4});
    CHECK_NOTHROW(ok.validate(4));
    CHECK_THROWS_AS(MinorId({3, 1}, {2, 4}).validate(4), InputError);
    CHECK_THROWS_AS(MinorId({1, 3}, {2, 5}).validate(4), InputError);
    CHECK_THROWS_AS(MinorId({1}, {}).validate(4), InputError);
    CHECK(solid_minor(2, 3, 2) == MinorId({2, 3}, {3, 4}));
    CHECK(ok.str() == "{1,3},{2,4}");
}

TEST_CASE("minor values: known matrices") {
    RationalMatrix p3 = pascal(3);
    CHECK(minor(p3, MinorId({1, 2, 3}, {1, 2, 3})) == 1);
    CHECK(minor(pascal(4), MinorId({1, 2, 3, 4}, {1, 2, 3, 4})) == 1);
    RationalMatrix ex = spiked_example(Rational(1, 10));
    CHECK(minor(ex, MinorId({1, 2}, {1, 2})) == Rational(-99, 100));
}

TEST_CASE("bareiss determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 4 + static_cast<int>(trial % 2);
        RationalMatrix m(n);
        std::vector<std::vector<Rational>> raw(n, std::vector<Rational>(n));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                Rational v(d(rng), 1 + (trial % 3));
                m.at(i, j) = v;
                raw[i - 1][j - 1] = v;
            }
        std::vector<int> all;
        for (int i = 1; i <= n; ++i) all.push_back(i);
        CHECK(minor(m, MinorId(all, all)) == naive_det(raw));
    }
}

TEST_CASE("minor enumeration counts and order") {
    CHECK(enumerate_minor_ids(3, 3).size() == 19);
    CHECK(enumerate_minor_ids(4, 2).size() == 52);
    // sum_l C(n,l)^2 = C(2n,n) - 1
    CHECK(enumerate_minor_ids(4, 4).size() == 69);   // C(8,4)-1
    CHECK(enumerate_minor_ids(5, 5).size() == 251);  // C(10,5)-1
    auto ids = enumerate_minor_ids(3, 2);
    CHECK(ids.front() == MinorId({1}, {1}));
    CHECK(ids[1] == MinorId({1}, {2}));
    CHECK(ids[9] == MinorId({1, 2}, {1, 2}));  // orders grouped, lex within
    CHECK(ids.back() == MinorId({2, 3}, {2, 3}));
    CHECK_THROWS_AS(enumerate_minor_ids(3, 4), InputError);
}

TEST_CASE("k-positivity oracle") {
    RationalMatrix ones = from_longs({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    auto v1 = is_k_positive(ones, 1);
    CHECK(v1.positive);
    auto v2 = is_k_positive(ones, 2);
    REQUIRE_FALSE(v2.positive);
    CHECK(*v2.failing == MinorId({1, 2}, {1, 2}));
    CHECK(v2.value == 0);

    CHECK(is_k_positive(pascal(4), 4).positive);

    RationalMatrix ex = spiked_example(Rational(1, 10));
    CHECK(is_k_positive(ex, 1).positive);
    auto vex = is_k_positive(ex, 2);
    REQUIRE_FALSE(vex.positive);
    CHECK(*vex.failing == MinorId({1, 2}, {1, 2}));
}

TEST_CASE("dodgson residual vanishes") {
    RationalMatrix p3 = pascal(3);
    CHECK(dodgson_residual(p3, 1, 3, 1, 3) == 0);
    CHECK(dodgson_residual(p3, 1, 2, 2, 3) == 0);
    RationalMatrix p2 = pascal(2);
    CHECK(dodgson_residual(p2, 1, 2, 1, 2) == 0);  // inner empty det = 1
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int trial = 0; trial < 10; ++trial) {
        RationalMatrix m(4);
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j) m.at(i, j) = make_rational(d(rng), 3);
        for (int a = 1; a <= 4; ++a)
            for (int a2 = a + 1; a2 <= 4; ++a2)
                for (int b = 1; b <= 4; ++b)
                    for (int b2 = b + 1; b2 <= 4; ++b2)
                        CHECK(dodgson_residual(m, a, a2, b, b2) == 0);
    }
    CHECK_THROWS_AS(dodgson_residual(p3, 2, 1, 1, 3), InputError);
}

TEST_CASE("matrix json round trip") {
    RationalMatrix ex = spiked_example(Rational(1, 10));
    nlohmann::json j = matrix_to_json(ex);
    CHECK(j["n"] == 3);
    CHECK(j["entries"][0][0] == "1/10");
    CHECK(matrix_from_json(j) == ex);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json{{"n", 2}}), InputError);
    MinorId id({1, 3}, {2, 4});
    CHECK(minor_id_from_json(minor_id_to_json(id)) == id);
}
