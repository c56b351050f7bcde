#include "levelbound/intpoly.hpp"
#include "levelbound/errors.hpp"

#include <algorithm>
#include <sstream>

namespace levelbound {

mpq_class make_rational(const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

long vp(const mpz_class& n, const mpz_class& p) {
    mpz_class a = abs(n);
    if (a == 0)
        throw error("vp of zero");
    long v = 0;
    mpz_class q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        if (r != 0)
            return v;
        a = q;
        ++v;
    }
}

long vp_q(const mpq_class& x, const mpz_class& p) {
    return vp(x.get_num(), p) - vp(x.get_den(), p);
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs)
        c_.emplace_back(v);
    trim();
}

IntPoly IntPoly::constant(const mpz_class& a) {
    IntPoly p;
    if (a != 0)
        p.c_.push_back(a);
    return p;
}

IntPoly IntPoly::monomial(const mpz_class& a, int deg) {
    IntPoly p;
    if (a != 0) {
        p.c_.assign(deg + 1, mpz_class(0));
        p.c_[deg] = a;
    }
    return p;
}

const mpz_class& IntPoly::lc() const {
    if (c_.empty())
        throw error("lc of zero polynomial");
    return c_.back();
}

mpz_class IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size()))
        return 0;
    return c_[i];
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& v : r.c_)
        v = -v;
    return r;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.c_.size())
            c[i] += a.c_[i];
        if (i < b.c_.size())
            c[i] += b.c_[i];
    }
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero())
        return IntPoly();
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator*(const mpz_class& a) const {
    IntPoly r = *this;
    for (auto& v : r.c_)
        v *= a;
    r.trim();
    return r;
}

IntPoly IntPoly::derivative() const {
    if (degree() <= 0)
        return IntPoly();
    std::vector<mpz_class> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        c[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly(std::move(c));
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& v : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero())
        return IntPoly();
    mpz_class g = content();
    if (lc() < 0)
        g = -g;
    IntPoly r = *this;
    for (auto& v : r.c_)
        v /= g;
    return r;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = r * x + *it;
    return r;
}

mpq_class IntPoly::eval_q(const mpq_class& x) const {
    mpq_class r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = r * x + mpq_class(*it);
    return r;
}

mpz_class IntPoly::inf_norm() const {
    mpz_class m = 0;
    for (const auto& v : c_)
        if (abs(v) > m)
            m = abs(v);
    return m;
}

void IntPoly::pseudo_divrem(const IntPoly& f, const IntPoly& g,
                            IntPoly& q, IntPoly& r) {
    if (g.is_zero())
        throw error("pseudo division by zero");
    int m = f.degree(), n = g.degree();
    if (m < n) {
        q = IntPoly();
        r = f;
        return;
    }
    const mpz_class& d = g.lc();
    std::vector<mpz_class> rr = f.c_;
    std::vector<mpz_class> qq(m - n + 1);
    // each step: q := q*d + top*x^k,  r := r*d - top*x^k*g
    for (int k = m - n; k >= 0; --k) {
        mpz_class top = rr[n + k];
        for (auto& v : qq)
            v *= d;
        qq[k] = top;
        for (int j = 0; j < k; ++j)
            rr[j] *= d;
        for (int i = 0; i < n; ++i)
            rr[i + k] = rr[i + k] * d - top * g.c_[i];
        rr[n + k] = 0;
    }
    rr.resize(n);
    q = IntPoly(std::move(qq));
    r = IntPoly(std::move(rr));
}

std::optional<IntPoly> IntPoly::exact_div(const IntPoly& g) const {
    if (g.is_zero())
        return std::nullopt;
    if (is_zero())
        return IntPoly();
    int m = degree(), n = g.degree();
    if (m < n)
        return std::nullopt;
    // long division over Q, verify integrality
    std::vector<mpq_class> rr(c_.begin(), c_.end());
    std::vector<mpz_class> qq(m - n + 1);
    mpq_class d(g.lc());
    for (int k = m - n; k >= 0; --k) {
        mpq_class t = rr[n + k] / d;
        t.canonicalize();
        if (t.get_den() != 1)
            return std::nullopt;
        qq[k] = t.get_num();
        for (int i = 0; i <= n; ++i)
            rr[i + k] -= t * mpq_class(g.c_[i]);
    }
    for (int i = 0; i < n; ++i)
        if (rr[i] != 0)
            return std::nullopt;
    return IntPoly(std::move(qq));
}

IntPoly IntPoly::gcd(IntPoly a, IntPoly b) {
    if (a.is_zero())
        return b.is_zero() ? b : b.primitive_part();
    if (b.is_zero())
        return a.primitive_part();
    mpz_class ca = a.content(), cb = b.content();
    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree())
        std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly q, r;
        pseudo_divrem(a, b, q, r);
        a = b;
        b = r.is_zero() ? IntPoly() : r.primitive_part();
    }
    return a.primitive_part() * cg;
}

// Sylvester determinant by fraction-free Bareiss elimination; degrees here
// are small (<= 24) so O(n^3) exact arithmetic is fine.
mpz_class IntPoly::resultant(const IntPoly& f, const IntPoly& g) {
    int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0)
        return 0;
    if (m == 0 && n == 0)
        return 1;
    if (m == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), f.lc().get_mpz_t(), n);
        return r;
    }
    if (n == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), g.lc().get_mpz_t(), m);
        return r;
    }
    int N = m + n;
    std::vector<std::vector<mpz_class>> a(N, std::vector<mpz_class>(N, mpz_class(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            a[i][i + (m - j)] = f.coeff(j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            a[n + i][i + (n - j)] = g.coeff(j);
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < N; ++i)
                if (a[i][k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[N - 1][N - 1] : mpz_class(-a[N - 1][N - 1]);
}

mpz_class IntPoly::poly_disc() const {
    int n = degree();
    if (n <= 0)
        throw error("discriminant needs degree >= 1");
    if (n == 1)
        return 1;
    mpz_class res = resultant(*this, derivative());
    mpz_class d = res / lc();
    int s = (n % 4 == 2 || n % 4 == 3) ? -1 : 1; // (-1)^(n(n-1)/2)
    return s > 0 ? d : mpz_class(-d);
}

IntPoly IntPoly::monicized() const {
    int n = degree();
    if (n < 1)
        throw error("monicized needs degree >= 1");
    // coefficients of lc^(n-1) f(x/lc): c_i -> c_i * lc^(n-1-i), c_n -> 1
    std::vector<mpz_class> c(c_.size());
    c[n] = 1;
    mpz_class pw = 1;
    for (int i = n - 1; i >= 0; --i) {
        c[i] = c_[i] * pw;
        pw *= lc();
    }
    return IntPoly(std::move(c));
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class v = coeff(i);
        if (v == 0)
            continue;
        if (!first)
            os << (v > 0 ? " + " : " - ");
        else if (v < 0)
            os << "-";
        mpz_class av = abs(v);
        if (av != 1 || i == 0)
            os << av.get_str();
        if (i > 0) {
            if (av != 1)
                os << "*";
            os << var;
            if (i > 1)
                os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

std::string IntPoly::coeff_list() const {
    std::ostringstream os;
    for (int i = 0; i <= degree(); ++i) {
        if (i)
            os << ",";
        os << coeff(i).get_str();
    }
    return os.str();
}

IntPoly IntPoly::parse_coeff_list(const std::string& s) {
    std::vector<mpz_class> c;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) {
        // trim spaces
        size_t b = cur.find_first_not_of(" \t");
        size_t e = cur.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw error("empty coefficient in list: " + s);
        c.emplace_back(cur.substr(b, e - b + 1));
    }
    return IntPoly(std::move(c));
}

} // namespace levelbound
