#ifndef LEVELBOUND_HEIGHTS_HPP
#define LEVELBOUND_HEIGHTS_HPP

#include "levelbound/numberfield.hpp"

namespace levelbound {

// one prime where the point meets the cusp: n_q = max(0, -v_q(j))
struct LocalContribution {
    PrimeIdealFactor q;
    mpq_class n; // nonnegative; integral unless scaled by 1/e under base change
    double log_residue() const {
        return q.f * std::log(q.p.get_d());
    }
};

struct HeightBreakdown {
    FieldElem point;
    int field_degree = 1;
    double height = 0;
    double finite_part = 0;
    double archimedean_part = 0;
    double truncated = 0;
    LogSum finite_sym;   // (1/[K:Q]) sum_q n_q log|kappa(q)|, exact
    LogSum n1_sym;       // (1/[K:Q]) sum_{n_q>0} log|kappa(q)|, exact
    std::vector<LocalContribution> cusp_contributions;
};

// absolute logarithmic Weil height; exact finite part, conjugate-formula
// archimedean part (degree <= 2)
double abs_log_height(const NumberField& K, const FieldElem& j);

// boundary intersection multiplicity on the j-line: max(0, -v_q(j))
long cusp_multiplicity(const NumberField& K, const FieldElem& j,
                       const PrimeIdealFactor& q);

// ramified-base-change scaling n/e, exact
mpq_class scaled_multiplicity(long n, long e);

inline constexpr long DEFAULT_PRIME_BOUND = 1000000;

HeightBreakdown truncated_counting(const NumberField& K, const FieldElem& j,
                                   const mpz_class& prime_bound = DEFAULT_PRIME_BOUND);

struct ChainCheck {
    double slack_lower = 0;  // middle - N1
    double slack_upper = 0;  // height - middle
    bool lower_exact = false; // certified by coefficientwise comparison
    bool pass = false;
};

// verifies N1 <= (1/[K:Q]) sum n_q log|kappa(q)| <= h with O(1) = 0
ChainCheck counting_height_check(const HeightBreakdown& b);

// convenience for rational points
HeightBreakdown truncated_counting_q(const mpq_class& j,
                                     const mpz_class& prime_bound = DEFAULT_PRIME_BOUND);
double abs_log_height_q(const mpq_class& j);

} // namespace levelbound

#endif
