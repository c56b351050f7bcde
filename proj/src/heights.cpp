#include "levelbound/heights.hpp"
#include "levelbound/errors.hpp"
#include "levelbound/zfactor.hpp"

#include <algorithm>
#include <cmath>

namespace levelbound {

namespace {

bool elem_is_zero(const FieldElem& x) {
    for (auto& c : x)
        if (c != 0)
            return false;
    return true;
}

// archimedean part of the height for degree <= 2, from exact conjugate data
double archimedean_height(const NumberField& K, const FieldElem& j) {
    if (K.degree == 1 || j.size() < 2 || j[1] == 0) {
        mpq_class v = j.empty() ? mpq_class(0) : j[0];
        mpq_class a = abs(v);
        return a > 1 ? std::log(a.get_d()) : 0.0;
    }
    if (K.degree > 2)
        throw UnsupportedDegree("abs_log_height: degree > 2");
    const mpz_class b = K.defining_poly.coeff(1);
    const mpz_class c = K.defining_poly.coeff(0);
    const mpz_class D = b * b - 4 * c;
    const mpq_class u = j[0], v = j[1];
    if (D < 0) {
        // one complex place of local degree 2: |j|^2 = N(j) exactly
        mpq_class N = u * u - mpq_class(b) * u * v + mpq_class(c) * v * v;
        return N > 1 ? 0.5 * std::log(N.get_d()) : 0.0;
    }
    // two real places: theta = (-b +- sqrt(D))/2
    double sq = std::sqrt(D.get_d());
    double t1 = (-b.get_d() + sq) / 2, t2 = (-b.get_d() - sq) / 2;
    double z1 = std::fabs(u.get_d() + v.get_d() * t1);
    double z2 = std::fabs(u.get_d() + v.get_d() * t2);
    double s = 0;
    if (z1 > 1)
        s += std::log(z1);
    if (z2 > 1)
        s += std::log(z2);
    return 0.5 * s;
}

mpz_class denominator_of(const FieldElem& j) {
    mpz_class m = 1;
    for (auto& c : j)
        mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), c.get_den().get_mpz_t());
    return m;
}

} // namespace

long cusp_multiplicity(const NumberField& K, const FieldElem& j,
                       const PrimeIdealFactor& q) {
    if (elem_is_zero(j))
        return 0;
    long v = element_valuation(K, j, q);
    if (v == VAL_INFINITY)
        return 0;
    return v < 0 ? -v : 0;
}

mpq_class scaled_multiplicity(long n, long e) {
    if (n < 0 || e < 1)
        throw error("scaled_multiplicity: need n >= 0, e >= 1");
    return make_rational(n, e);
}

HeightBreakdown truncated_counting(const NumberField& K, const FieldElem& j,
                                   const mpz_class& prime_bound) {
    if (K.degree > 2)
        throw UnsupportedDegree("truncated_counting: degree > 2");
    HeightBreakdown b;
    b.point = j;
    b.field_degree = K.degree;
    mpq_class inv_deg = make_rational(1, K.degree);
    mpz_class m = denominator_of(j);
    if (m > 1) {
        for (auto& [p, e] : factor_integer(m)) {
            if (p > prime_bound)
                throw DenominatorPrimeTooLarge(
                    "denominator prime " + p.get_str() + " exceeds prime bound " +
                    prime_bound.get_str());
            for (auto& q : factor_prime(K, p)) {
                long n = cusp_multiplicity(K, j, q);
                if (n > 0) {
                    b.cusp_contributions.push_back({q, mpq_class(n)});
                    b.finite_sym += LogSum::term(p, inv_deg * n * q.f);
                    b.n1_sym += LogSum::term(p, inv_deg * q.f);
                }
            }
        }
    }
    b.finite_part = b.finite_sym.value();
    b.truncated = b.n1_sym.value();
    b.archimedean_part = archimedean_height(K, j);
    b.height = b.finite_part + b.archimedean_part;
    return b;
}

double abs_log_height(const NumberField& K, const FieldElem& j) {
    return truncated_counting(K, j).height;
}

ChainCheck counting_height_check(const HeightBreakdown& b) {
    ChainCheck c;
    LogSum diff = b.finite_sym - b.n1_sym;
    c.lower_exact = b.n1_sym.coeffwise_leq(b.finite_sym);
    c.slack_lower = diff.value();
    c.slack_upper = b.height - b.finite_sym.value();
    c.pass = c.lower_exact && c.slack_upper >= -1e-9;
    return c;
}

HeightBreakdown truncated_counting_q(const mpq_class& j, const mpz_class& prime_bound) {
    return truncated_counting(rationals(), {j}, prime_bound);
}

double abs_log_height_q(const mpq_class& j) {
    return abs_log_height(rationals(), {j});
}

} // namespace levelbound
