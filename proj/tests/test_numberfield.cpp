#include <doctest.h>

#include "levelbound/errors.hpp"
#include "levelbound/numberfield.hpp"
#include "levelbound/zfactor.hpp"

#include <cmath>
#include <random>

using namespace levelbound;

namespace {

// independent splitting oracle for quadratic fields: Jacobi symbol by
// quadratic reciprocity, no modular exponentiation
int jacobi(mpz_class a, mpz_class n) {
    a = a % n;
    if (a < 0)
        a += n;
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            mpz_class r = n % 8;
            if (r == 3 || r == 5)
                t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            t = -t;
        a = a % n;
    }
    return n == 1 ? t : 0;
}

NumberField gaussian() { return make_field(IntPoly{1, 0, 1}); }

} // namespace

TEST_CASE("make_field basics") {
    NumberField K = gaussian();
    CHECK(K.degree == 2);
    CHECK(K.disc() == -4);
    CHECK(K.index_certified_primes.at(2) == true);
    CHECK(K.serialize() == "1,0,1");

    NumberField Q1 = make_field(IntPoly{-3, 1}); // x - 3
    CHECK(Q1.degree == 1);
    CHECK(Q1.disc() == 1);

    CHECK_THROWS_AS(make_field(IntPoly{-1, 0, 1}), Reducible); // x^2-1
    CHECK_THROWS_AS(make_field(IntPoly{1, 0, 2}), NotMonic);
    CHECK_THROWS_AS(make_field(IntPoly{1, 0, 0, 0, 0, 0, 0, 0, 0, 1}),
                    DegreeUnsupported);
    try {
        make_field(IntPoly{-1, 0, 1});
        FAIL("expected Reducible");
    } catch (const Reducible& e) {
        CHECK(e.witness == "x - 1");
    }
}

TEST_CASE("make_field certified discs") {
    // cyclotomic oracle: |disc Q(zeta_8)| = 2^8 = 256
    NumberField Z8 = make_field(IntPoly{1, 0, 0, 0, 1});
    CHECK(Z8.disc() == 256);
    // x^2-x-1: disc 5 (golden field)
    CHECK(make_field(IntPoly{-1, -1, 1}).disc() == 5);
    // x^2-5: poly disc 20, Dedekind fails at 2 (theta = sqrt5, index 2)
    NumberField K5 = make_field(IntPoly{-5, 0, 1});
    CHECK_FALSE(K5.disc_exact());
    CHECK(K5.field_disc.abs_lo == 5);
    CHECK(K5.field_disc.abs_hi == 20);
    CHECK_THROWS_AS(rel_log_disc(K5), DiscUncertain);
    // Stickelberger: exact discs are 0 or 1 mod 4
    for (auto f : {IntPoly{1, 0, 1}, IntPoly{-1, -1, 1}, IntPoly{1, 0, 0, 0, 1},
                   IntPoly{-2, 0, 1}, IntPoly{2, 2, 1}}) {
        NumberField K = make_field(f);
        mpz_class m = ((K.disc() % 4) + 4) % 4;
        CHECK((m == 0 || m == 1));
    }
}

TEST_CASE("factor_prime examples") {
    NumberField K = gaussian();
    auto f5 = factor_prime(K, 5);
    REQUIRE(f5.size() == 2);
    CHECK(f5[0].e == 1);
    CHECK(f5[0].f == 1);
    CHECK(f5[1].f == 1);
    auto f2 = factor_prime(K, 2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].e == 2);
    CHECK(f2[0].f == 1);
    auto f3 = factor_prime(K, 3);
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].e == 1);
    CHECK(f3[0].f == 2);
    auto fq = factor_prime(rationals(), 7);
    REQUIRE(fq.size() == 1);
    CHECK(fq[0].e * fq[0].f == 1);
    // index divisor refusal
    NumberField K5 = make_field(IntPoly{-5, 0, 1});
    CHECK_THROWS_AS(factor_prime(K5, 2), IndexDivisor);
}

TEST_CASE("quadratic splitting against reciprocity oracle") {
    std::mt19937_64 rng(41);
    int tested = 0;
    while (tested < 1000) {
        long d = static_cast<long>(rng() % 400) - 200;
        if (d == 0 || d == 1)
            continue;
        mpz_class dz = d;
        // squarefree d only, and use the right generator
        bool sqfree = true;
        for (auto& [p, e] : factor_integer(dz))
            if (e >= 2)
                sqfree = false;
        if (!sqfree)
            continue;
        IntPoly f = (((d % 4) + 4) % 4 == 1)
                        ? IntPoly({static_cast<long>((1 - d) / 4), -1, 1})
                        : IntPoly({-d, 0, 1});
        NumberField K = make_field(f);
        mpz_class D = K.disc();
        // random odd prime not dividing disc
        mpz_class p;
        do {
            p = static_cast<unsigned long>(rng() % 9000) + 3;
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        } while (D % p == 0);
        auto fac = factor_prime(K, p);
        int sum = 0;
        for (auto& q : fac)
            sum += q.e * q.f;
        CHECK(sum == 2);
        int sym = jacobi(D, p);
        if (sym == 1)
            CHECK(fac.size() == 2);
        else
            CHECK((fac.size() == 1 && fac[0].f == 2));
        ++tested;
    }
}

TEST_CASE("splitting law in Q(zeta_8)") {
    // oracle: for odd p, the residue degree above p in Q(zeta_8) is the
    // multiplicative order of p mod 8, with 8/f primes above p
    NumberField Z8 = make_field(IntPoly{1, 0, 0, 0, 1});
    auto f2 = factor_prime(Z8, 2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].e == 4);
    CHECK(f2[0].f == 1);
    for (long p : {3, 5, 7, 11, 13, 17, 41, 73, 97}) {
        long ord = 1, t = p % 8;
        while (t != 1) {
            t = (t * (p % 8)) % 8;
            ++ord;
        }
        auto fac = factor_prime(Z8, p);
        CHECK(static_cast<long>(fac.size()) == 4 / ord);
        for (auto& q : fac) {
            CHECK(q.e == 1);
            CHECK(q.f == ord);
        }
    }
}

TEST_CASE("rel_log_disc knowns") {
    auto rQ = rel_log_disc(rationals());
    CHECK(rQ.total.is_zero());
    CHECK(rQ.local_coeff.empty());

    auto ri = rel_log_disc(gaussian());
    CHECK(ri.total == LogSum::term(2, 1)); // (1/2) log 4 = log 2
    CHECK(ri.total_value() == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    auto r8 = rel_log_disc(make_field(IntPoly{1, 0, 0, 0, 1}));
    CHECK(r8.total == LogSum::term(2, 2)); // (1/4) log 256 = 2 log 2
    REQUIRE(r8.local_coeff.size() == 1);
    CHECK(r8.local_coeff.at(2) == 2);
}

TEST_CASE("discriminant report additivity") {
    // total = sum of local parts, exactly on the coefficient maps
    for (auto f : {IntPoly{1, 0, 1}, IntPoly{-1, -1, 1}, IntPoly{1, 0, 0, 0, 1},
                   IntPoly{2, 2, 1}, IntPoly{-2, 0, 1}, IntPoly{3, -1, 1}}) {
        auto rep = rel_log_disc(make_field(f));
        LogSum sum;
        for (auto& [p, c] : rep.local_coeff)
            sum += LogSum::term(p, c);
        CHECK(sum == rep.total);
    }
}

TEST_CASE("tower formula on Q(i) in Q(zeta_8)") {
    NumberField Ki = gaussian();
    NumberField L = make_field(IntPoly{1, 0, 0, 0, 1});
    auto d = tower_relative_disc(Ki, L);
    // norm-route oracle: 256 = N(rel disc) * 4^2 -> N = 16, d = (1/2)log 16
    CHECK(d.total == LogSum::term(2, 2));
    CHECK(d.total_value() == doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));
    // base case and trivial extension
    CHECK(tower_relative_disc(rationals(), L).total == rel_log_disc(L).total);
    CHECK(tower_relative_disc(L, L).total.is_zero());
    CHECK_THROWS_AS(tower_relative_disc(L, Ki), DegreeMismatch);
    // exact tower identity d_Q(L) = (1/[K:Q]) d_K(L) + d_Q(K)
    LogSum lhs = rel_log_disc(L).total;
    LogSum rhs = d.total * make_rational(1, Ki.degree) + rel_log_disc(Ki).total;
    CHECK(lhs == rhs);
}

TEST_CASE("quadratic compositum certifies biquadratic discs") {
    // Q(i), Q(sqrt 5): disc -4, 5 coprime; Disc(L) = 400
    NumberField K1 = gaussian();
    NumberField K2 = make_field(IntPoly{-1, -1, 1});
    NumberField L = quadratic_compositum(K1, K2);
    CHECK(L.degree == 4);
    CHECK(L.disc() == 400);
    // conductor-discriminant oracle: subfields Q(i), Q(sqrt5), Q(sqrt-5):
    // |-4 * 5 * -20| = 400
    CHECK(abs(mpz_class(-4) * 5 * -20) == 400);
}

TEST_CASE("element valuation") {
    // rationals
    auto q2 = factor_prime(rationals(), 2)[0];
    CHECK(element_valuation(rationals(), {mpq_class(12)}, q2) == 2);
    CHECK(element_valuation(rationals(), {mpq_class(0)}, q2) == VAL_INFINITY);
    CHECK(element_valuation(rationals(), {make_rational(1, 72)}, q2) == -3);
    // Q(i): v(1+i) = 1 at the ramified prime over 2
    NumberField K = gaussian();
    auto over2 = factor_prime(K, 2)[0];
    FieldElem onePlusI = {mpq_class(1), mpq_class(1)};
    CHECK(element_valuation(K, onePlusI, over2) == 1);
    FieldElem two = {mpq_class(2), mpq_class(0)};
    CHECK(element_valuation(K, two, over2) == 2);
    // degree > 2 elements are refused
    NumberField Z8 = make_field(IntPoly{1, 0, 0, 0, 1});
    auto q17 = factor_prime(Z8, 17)[0];
    CHECK_THROWS_AS(element_valuation(Z8, {mpq_class(1), mpq_class(2)}, q17),
                    UnsupportedDegree);
    // split prime 5 = (2+i)(2-i): v(2+i) is 1 at one factor, 0 at the other
    auto over5 = factor_prime(K, 5);
    FieldElem z = {mpq_class(2), mpq_class(1)};
    long v0 = element_valuation(K, z, over5[0]);
    long v1 = element_valuation(K, z, over5[1]);
    CHECK(((v0 == 1 && v1 == 0) || (v0 == 0 && v1 == 1)));
    // inert prime 3: v_3(3) = 1, v_3(i) = 0
    auto over3 = factor_prime(K, 3)[0];
    CHECK(element_valuation(K, {mpq_class(3), mpq_class(0)}, over3) == 1);
    CHECK(element_valuation(K, {mpq_class(0), mpq_class(1)}, over3) == 0);
    // multiplicativity and ultrametric on random pairs
    std::mt19937_64 rng(59);
    auto rnd_elem = [&]() {
        FieldElem e(2);
        e[0] = make_rational(static_cast<long>(rng() % 41) - 20,
                             static_cast<long>(rng() % 6) + 1);
        e[1] = make_rational(static_cast<long>(rng() % 41) - 20,
                             static_cast<long>(rng() % 6) + 1);
        return e;
    };
    auto mul_elem = [&](const FieldElem& a, const FieldElem& b) {
        // (a0+a1 i)(b0+b1 i) over x^2+1
        FieldElem c(2);
        c[0] = a[0] * b[0] - a[1] * b[1];
        c[1] = a[0] * b[1] + a[1] * b[0];
        return c;
    };
    auto add_elem = [&](const FieldElem& a, const FieldElem& b) {
        return FieldElem{a[0] + b[0], a[1] + b[1]};
    };
    std::vector<PrimeIdealFactor> qs = {over2, over3, over5[0], over5[1]};
    for (int it = 0; it < 300; ++it) {
        FieldElem a = rnd_elem(), b = rnd_elem();
        for (auto& q : qs) {
            long va = element_valuation(K, a, q);
            long vb = element_valuation(K, b, q);
            long vab = element_valuation(K, mul_elem(a, b), q);
            if (va != VAL_INFINITY && vb != VAL_INFINITY)
                CHECK(vab == va + vb);
            long vsum = element_valuation(K, add_elem(a, b), q);
            CHECK(vsum >= std::min(va, vb));
        }
    }
}

TEST_CASE("neukirch valuation bound across random certified fields") {
    std::mt19937_64 rng(67);
    int done = 0;
    while (done < 40) {
        std::vector<mpz_class> c(3);
        c[2] = 1;
        c[1] = static_cast<long>(rng() % 11) - 5;
        c[0] = static_cast<long>(rng() % 41) - 20;
        IntPoly f{c};
        NumberField K;
        try {
            K = make_field(f);
        } catch (const error&) {
            continue;
        }
        if (!K.disc_exact())
            continue;
        long n = K.degree;
        for (auto& [p, e] : factor_integer(K.disc()))
            CHECK(e <= n * (1 + n));
        ++done;
    }
}
