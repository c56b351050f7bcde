#include <doctest.h>

#include "levelbound/intpoly.hpp"
#include "levelbound/errors.hpp"

#include <random>

using namespace levelbound;

TEST_CASE("rational canonical form") {
    mpq_class q = make_rational(6, -4);
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 2);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        long n = static_cast<long>(rng() % 4000) - 2000;
        long d = static_cast<long>(rng() % 999) + 1;
        mpq_class r = make_rational(n, d);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
        CHECK(g == 1);
        CHECK(r.get_den() >= 1);
    }
}

TEST_CASE("vp valuation") {
    CHECK(vp(12, 2) == 2);
    CHECK(vp(12, 3) == 1);
    CHECK(vp(-161051, 11) == 5);
    CHECK(vp_q(make_rational(1, 72), 2) == -3);
    CHECK(vp_q(make_rational(1, 72), 3) == -2);
}

TEST_CASE("intpoly ring ops") {
    IntPoly f{1, 0, 1};      // x^2 + 1
    IntPoly g{-1, 1};        // x - 1
    CHECK((f * g).coeff_list() == "-1,1,-1,1");
    CHECK((f + g).coeff_list() == "0,1,1");
    CHECK(f.eval(2) == 5);
    CHECK(f.eval_q(make_rational(1, 2)) == make_rational(5, 4));
    CHECK(f.derivative().coeff_list() == "0,2");
    CHECK(IntPoly::parse_coeff_list("1,0,1") == f);
    CHECK(IntPoly({2, 4, 6}).primitive_part().coeff_list() == "1,2,3");
    CHECK(IntPoly({0, -2, -4}).primitive_part().coeff_list() == "0,1,2");
}

TEST_CASE("pseudo division invariant") {
    std::mt19937_64 rng(11);
    auto rnd_poly = [&](int deg) {
        std::vector<mpz_class> c(deg + 1);
        for (auto& v : c)
            v = static_cast<long>(rng() % 21) - 10;
        if (c.back() == 0)
            c.back() = 3;
        return IntPoly(c);
    };
    for (int it = 0; it < 300; ++it) {
        IntPoly f = rnd_poly(2 + static_cast<int>(rng() % 6));
        IntPoly g = rnd_poly(1 + static_cast<int>(rng() % 3));
        if (f.degree() < g.degree())
            std::swap(f, g);
        IntPoly q, r;
        IntPoly::pseudo_divrem(f, g, q, r);
        mpz_class dpow;
        mpz_pow_ui(dpow.get_mpz_t(), g.lc().get_mpz_t(), f.degree() - g.degree() + 1);
        CHECK(f * dpow == q * g + r);
        CHECK(r.degree() < g.degree());
    }
}

TEST_CASE("exact division and gcd") {
    IntPoly f{-1, 0, 1}; // x^2-1
    IntPoly g{1, 1};
    auto q = f.exact_div(g);
    REQUIRE(q.has_value());
    CHECK(q->coeff_list() == "-1,1");
    CHECK_FALSE(IntPoly({1, 0, 1}).exact_div(g).has_value());
    CHECK(IntPoly::gcd(f, IntPoly{1, 2, 1}).coeff_list() == "1,1");

    std::mt19937_64 rng(23);
    auto rnd_poly = [&](int deg) {
        std::vector<mpz_class> c(deg + 1);
        for (auto& v : c)
            v = static_cast<long>(rng() % 9) - 4;
        if (c.back() == 0)
            c.back() = 1;
        return IntPoly(c);
    };
    for (int it = 0; it < 200; ++it) {
        IntPoly a = rnd_poly(1 + static_cast<int>(rng() % 4));
        IntPoly b = rnd_poly(1 + static_cast<int>(rng() % 4));
        IntPoly c = rnd_poly(static_cast<int>(rng() % 3));
        if (c.is_zero())
            c = IntPoly{1};
        IntPoly prod = a * b * c;
        CHECK(prod.exact_div(b).has_value());
        IntPoly g2 = IntPoly::gcd(a * c, b * c);
        CHECK((c.primitive_part() * (g2.is_zero() ? 0 : 1)).degree() <= g2.degree());
    }
}

TEST_CASE("resultant and discriminant") {
    // disc(x^2+1) = -4
    CHECK(IntPoly({1, 0, 1}).poly_disc() == -4);
    // disc(x^2-x-1) = 5
    CHECK(IntPoly({-1, -1, 1}).poly_disc() == 5);
    // disc(x^3 - x) = 4 (roots 0, 1, -1: prod of squared diffs 1*1*4)
    CHECK(IntPoly({0, -1, 0, 1}).poly_disc() == 4);
    // disc(x^4+1) = 256
    CHECK(IntPoly({1, 0, 0, 0, 1}).poly_disc() == 256);
    // Res(f,g) = prod of f evaluated at roots of g, up to lc powers:
    // Res(x^2-2, x^2-3) = (2-3)^2 = 1
    CHECK(IntPoly::resultant(IntPoly{-2, 0, 1}, IntPoly{-3, 0, 1}) == 1);
    // multiplicativity on random inputs
    std::mt19937_64 rng(5);
    auto rnd_poly = [&](int deg) {
        std::vector<mpz_class> c(deg + 1);
        for (auto& v : c)
            v = static_cast<long>(rng() % 7) - 3;
        if (c.back() == 0)
            c.back() = 2;
        return IntPoly(c);
    };
    for (int it = 0; it < 100; ++it) {
        IntPoly a = rnd_poly(1 + static_cast<int>(rng() % 3));
        IntPoly b = rnd_poly(1 + static_cast<int>(rng() % 3));
        IntPoly c = rnd_poly(1 + static_cast<int>(rng() % 3));
        CHECK(IntPoly::resultant(a, b * c) ==
              IntPoly::resultant(a, b) * IntPoly::resultant(a, c));
    }
}

TEST_CASE("monicized keeps the field") {
    IntPoly f{-29, 5, 5}; // 5x^2+5x-29, roots (-1 +- sqrt(121/5))/2...
    IntPoly m = f.monicized();
    CHECK(m.is_monic());
    CHECK(m.coeff_list() == "-145,5,1"); // x^2 + 5x - 145
    CHECK(m.poly_disc() == 605);         // 121 * 5: same field Q(sqrt 5)
}
