#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "kpos/polynomial.hpp"

using namespace kpos;

namespace {

Polynomial x(int i, int j) { return Polynomial::variable(i, j); }

Polynomial random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-5, 5), idx(1, 3), nterms(1, 4), nfac(0, 3);
    Polynomial p;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Polynomial term = Polynomial::constant(coef(rng));
        int f = nfac(rng);
        for (int j = 0; j < f; ++j) term = term * x(idx(rng), idx(rng));
        p += term;
    }
    return p;
}

RationalMatrix random_matrix3(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-9, 9);
    RationalMatrix m(3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) m.at(i, j) = make_rational(d(rng), 2);
    return m;
}

}  // namespace

TEST_CASE("polynomial arithmetic basics") {
    Polynomial zero;
    CHECK(zero.is_zero());
    CHECK((x(1, 1) - x(1, 1)).is_zero());
    Polynomial p = x(1, 1) + x(2, 2);
    Polynomial q = x(2, 2) + x(1, 1);
    CHECK(p == q);
    CHECK(p.canonical_key() == q.canonical_key());
    CHECK((p + Polynomial::constant(0)).canonical_key() == p.canonical_key());
    CHECK(Polynomial::constant(0).is_zero());
}

TEST_CASE("ring laws on random polynomials") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Polynomial a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK((a * b) == (b * a));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
        CHECK((a + b) == (b + a));
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial a = random_poly(rng), b = random_poly(rng);
        RationalMatrix m = random_matrix3(rng);
        CHECK((a * b).eval(m) == a.eval(m) * b.eval(m));
        CHECK((a + b).eval(m) == a.eval(m) + b.eval(m));
    }
}

TEST_CASE("exact division recovers factors") {
    std::mt19937_64 rng(13);
    int done = 0;
    while (done < 30) {
        Polynomial a = random_poly(rng), b = random_poly(rng);
        if (b.is_zero()) continue;
        CHECK(poly_exact_div(a * b, b) == a);
        ++done;
    }
}

TEST_CASE("division guards") {
    CHECK_THROWS_AS(poly_exact_div(Polynomial::constant(2), x(1, 1)), DivisibilityError);
    CHECK_THROWS_AS(poly_exact_div(x(1, 1) + x(2, 2), x(1, 2)), DivisibilityError);
    CHECK_THROWS_AS(poly_exact_div(x(1, 1), Polynomial()), InputError);
    // 2*x divided by 3*x would need coefficient 2/3.
    Polynomial two_x = Polynomial::constant(2) * x(1, 1);
    Polynomial three_x = Polynomial::constant(3) * x(1, 1);
    CHECK_THROWS_AS(poly_exact_div(two_x, three_x), DivisibilityError);
}

TEST_CASE("symbolic minors") {
    Polynomial a_minor = minor_poly(3, MinorId({2, 3}, {2, 3}));
    Polynomial expected = x(2, 2) * x(3, 3) - x(2, 3) * x(3, 2);
    CHECK(a_minor == expected);
    CHECK(minor_poly(3, MinorId({1}, {2})) == x(1, 2));

    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        RationalMatrix m = random_matrix3(rng);
        for (const MinorId& id : enumerate_minor_ids(3, 3))
            CHECK(minor_poly(3, id).eval(m) == minor(m, id));
    }

    std::set<std::string> keys;
    for (const MinorId& id : enumerate_minor_ids(3, 3))
        keys.insert(minor_poly(3, id).canonical_key());
    CHECK(keys.size() == 19);
}

TEST_CASE("text and json forms") {
    Polynomial p = Polynomial::constant(-2) * x(1, 1) * x(1, 1) + x(2, 3);
    std::string s = p.str();
    CHECK(s == "-2*x[1,1]^2 + x[2,3]");
    CHECK(Polynomial().str() == "0");
    CHECK(Polynomial::constant(-7).str() == "-7");

    nlohmann::json j = poly_to_json(p);
    CHECK(poly_from_json(j) == p);
    CHECK(poly_from_json(poly_to_json(Polynomial())) == Polynomial());
}
