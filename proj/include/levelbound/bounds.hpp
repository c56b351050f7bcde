#ifndef LEVELBOUND_BOUNDS_HPP
#define LEVELBOUND_BOUNDS_HPP

#include "levelbound/ellcurve.hpp"
#include "levelbound/heights.hpp"
#include "levelbound/numberfield.hpp"

#include <string>
#include <vector>

namespace levelbound {

// exact quadratic surd a + b sqrt(r), r squarefree >= 1
struct Surd {
    mpq_class a;
    mpq_class b;
    mpz_class r = 1;
    static Surd make(mpq_class a, mpq_class b, mpz_class radicand);
    double value() const;
    bool operator==(const Surd&) const = default;
    // exact comparison against a rational
    bool less_than(const mpq_class& q) const;
};

// gamma = (1 + 2^(d/2))^2: full level-p with p > gamma forces bad
// reduction at every prime over 2
Surd gamma_exact(int d);
double gamma(int d);

// smallest prime strictly greater than gamma(d)
mpz_class min_forced_prime(int d);

// (1 + sqrt(Nq))^2: torsion injection bound mod a prime of residue size Nq
Surd torsion_reduction_bound_exact(const mpz_class& Nq);
double torsion_reduction_bound(const mpz_class& Nq);

struct BoundParameters {
    int field_degree = 1;
    int g = 1;
    mpq_class alpha = 1;
    int M = 1;
    int a_max = 1;
    static BoundParameters classical(int degree = 1);
    // alpha = 1/M with M = |SL_2(Z/12)| = 1152, the degree of the full
    // level-12 cover used for integral lifting
    static BoundParameters paper_mode(int degree = 1);
};

struct Verdict {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
    enum Status { pass, fail, precondition_unmet } status = pass;
    bool exact = false; // slack certified by symbolic comparison
    std::string notes;
    const char* status_str() const {
        switch (status) {
        case pass: return "pass";
        case fail: return "fail";
        default: return "precondition_unmet";
        }
    }
};

// the explicit constants together with every per-curve inequality verdict
// for one detected (E, p)
struct BoundReport {
    double gamma_value = 0;
    mpz_class forced_prime;
    std::vector<Verdict> verdicts;
    bool any_fail() const {
        for (auto& v : verdicts)
            if (v.status == Verdict::fail)
                return true;
        return false;
    }
};

// assembles divisibility, dichotomy, height-growth, truncated-counting and
// disc-growth verdicts for a curve with detected full level-p structure
BoundReport curve_bound_report(const WeierstrassCurve& E, int p,
                               const mpq_class& eps,
                               const BoundParameters& params);

// v_p(|Disc(O_E)|) <= n(1+n) with n the degree over Q
Verdict neukirch_check(const NumberField& field, const mpz_class& p);

// discriminant of the p-torsion x-coordinate subfield Q(x(P)) against
// beta log p, beta = 1 + [Q(x(P)):Q]; a lower-bound proxy for d_K(T_x)
Verdict disc_growth_check(const WeierstrassCurve& E, int p);

// epsilon-scaled height growth at the primes over 2:
// eps sum_{q|2} n_q log|kappa(q)| >= eps alpha (log 2) p  when p > gamma(1)
Verdict epsm_check(const WeierstrassCurve& E, int p, const mpq_class& eps,
                   const BoundParameters& params = BoundParameters::classical());
// synthetic core on a given multiplicity n_2 at the prime 2
Verdict epsm_core(long n2, int p, const mpq_class& eps, const mpq_class& alpha);

// p alpha N1 <= finite part of h(j), exactly (O(1) = 0)
Verdict truncated_lemma_check(const WeierstrassCurve& E, int p,
                              const mpq_class& eps,
                              const BoundParameters& params = BoundParameters::classical());

// per bad prime q of j: p | -v_q(j) (Tate-parameter divisibility)
std::vector<Verdict> level_divisibility_checks(const WeierstrassCurve& E, int p);

// p <= gamma(1) or E has bad reduction at 2
Verdict level_dichotomy_check(const WeierstrassCurve& E, int p);

// Hasse across good primes < bound: #E(F_p) <= (1 + sqrt p)^2
Verdict hasse_check(const WeierstrassCurve& E, long prime_bound = 200);

// torsion order divides #E(F_p) at good p prime to the order
Verdict torsion_injection_check(const WeierstrassCurve& E, long prime_bound = 200);

} // namespace levelbound

#endif
