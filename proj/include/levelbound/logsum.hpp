#ifndef LEVELBOUND_LOGSUM_HPP
#define LEVELBOUND_LOGSUM_HPP

#include <cmath>
#include <gmpxx.h>
#include <map>

namespace levelbound {

// finite sum  sum_p c_p * log p  with exact rational coefficients, natural
// logs; additivity and tower identities are tested as exact equalities on
// the coefficient maps
class LogSum {
    std::map<mpz_class, mpq_class> c_;
    void prune() {
        for (auto it = c_.begin(); it != c_.end();)
            it = (it->second == 0) ? c_.erase(it) : std::next(it);
    }

public:
    LogSum() = default;

    static LogSum term(const mpz_class& p, const mpq_class& coeff) {
        LogSum s;
        if (coeff != 0)
            s.c_[p] = coeff;
        return s;
    }

    const std::map<mpz_class, mpq_class>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    mpq_class coeff(const mpz_class& p) const {
        auto it = c_.find(p);
        return it == c_.end() ? mpq_class(0) : it->second;
    }

    LogSum& operator+=(const LogSum& o) {
        for (auto& [p, v] : o.c_)
            c_[p] += v;
        prune();
        return *this;
    }
    LogSum& operator-=(const LogSum& o) {
        for (auto& [p, v] : o.c_)
            c_[p] -= v;
        prune();
        return *this;
    }
    friend LogSum operator+(LogSum a, const LogSum& b) { return a += b; }
    friend LogSum operator-(LogSum a, const LogSum& b) { return a -= b; }
    LogSum operator*(const mpq_class& s) const {
        LogSum r;
        if (s == 0)
            return r;
        for (auto& [p, v] : c_)
            r.c_[p] = v * s;
        return r;
    }
    bool operator==(const LogSum& o) const { return c_ == o.c_; }

    // every coefficient of *this <= matching coefficient of o; since all
    // keys are primes >= 2 with positive logs, this implies value <= value
    bool coeffwise_leq(const LogSum& o) const {
        for (auto& [p, v] : c_)
            if (v > o.coeff(p))
                return false;
        for (auto& [p, v] : o.c_)
            if (c_.find(p) == c_.end() && v < 0)
                return false;
        return true;
    }

    bool all_nonneg() const {
        for (auto& [p, v] : c_)
            if (v < 0)
                return false;
        return true;
    }

    double value() const {
        double s = 0;
        for (auto& [p, v] : c_)
            s += v.get_d() * std::log(p.get_d());
        return s;
    }
};

} // namespace levelbound

#endif
