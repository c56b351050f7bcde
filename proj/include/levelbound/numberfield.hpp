#ifndef LEVELBOUND_NUMBERFIELD_HPP
#define LEVELBOUND_NUMBERFIELD_HPP

#include "levelbound/intpoly.hpp"
#include "levelbound/logsum.hpp"

#include <limits>
#include <map>
#include <vector>

namespace levelbound {

// one prime ideal q above p in a certified factorization of p O_K
struct PrimeIdealFactor {
    mpz_class p;      // rational prime below
    int e = 1;        // ramification index
    int f = 1;        // residue degree; |kappa(q)| = p^f
    IntPoly kernel_poly; // monic-mod-p irreducible identifying the factor

    mpz_class residue_size() const {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), f);
        return r;
    }
};

// exact field discriminant, or the interval [disc(f)/s^2, disc(f)] (in
// absolute value) when Z[theta]-maximality failed certification somewhere
struct DiscValue {
    bool exact = true;
    mpz_class value;   // signed, meaningful when exact
    mpz_class abs_lo;  // |disc| lower bound when not exact
    mpz_class abs_hi;  // |disc| upper bound when not exact
};

struct NumberField {
    IntPoly defining_poly; // monic irreducible
    int degree = 0;
    std::map<mpz_class, bool> index_certified_primes; // Dedekind verdicts
    DiscValue field_disc;

    bool disc_exact() const { return field_disc.exact; }
    const mpz_class& disc() const; // throws DiscUncertain when interval
    bool is_rationals() const { return degree == 1; }
    std::string serialize() const { return defining_poly.coeff_list(); }
};

// d_K(E) carried symbolically: total = sum over p of c_p log p
struct DiscriminantReport {
    LogSum total;
    std::map<mpz_class, mpq_class> local_coeff; // p -> c_p
    double total_value() const { return total.value(); }
    double local_value(const mpz_class& p) const;
};

// degree 1..8, monic, irreducibility certified by exact factorization;
// Dedekind criterion applied at every p with p^2 | disc(f)
NumberField make_field(const IntPoly& f);

// the rational field as a degree-1 NumberField (f = x)
const NumberField& rationals();

// Kummer-Dedekind factorization of p in O_K; valid when Z[theta] is
// p-maximal (certified) or p^2 nmid disc(f)
std::vector<PrimeIdealFactor> factor_prime(const NumberField& K,
                                           const mpz_class& p);

// d_Q(E) = (1/[E:Q]) log |Disc(O_E)| with per-prime local parts
DiscriminantReport rel_log_disc(const NumberField& E);

// d_K(L) = [K:Q] (d_Q(L) - d_Q(K)), local parts by the same rearrangement
DiscriminantReport tower_relative_disc(const NumberField& K,
                                       const NumberField& L);

// field elements are coordinate vectors in powers of theta, length <= degree
using FieldElem = std::vector<mpq_class>;

inline constexpr long VAL_INFINITY = std::numeric_limits<long>::max();

// q-adic valuation of x (VAL_INFINITY for 0); degree <= 2 only
long element_valuation(const NumberField& K, const FieldElem& x,
                       const PrimeIdealFactor& q);

// Q(sqrt m) for squarefree m != 0, 1, via the canonical maximal-order
// generator: x^2 - x + (1-m)/4 when m = 1 mod 4, else x^2 - m
NumberField quadratic_field_from_radicand(const mpz_class& m);

// compositum of two quadratic fields with coprime fundamental discriminants:
// O_L = O_K1 O_K2, so Disc(L) = (d1 d2)^2 exactly
NumberField quadratic_compositum(const NumberField& K1, const NumberField& K2);

} // namespace levelbound

#endif
