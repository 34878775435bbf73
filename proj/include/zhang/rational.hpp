#pragma once
// Exact rational scalar and small helpers shared by every module.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zhang {

using Q = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                        boost::multiprecision::et_off>;
using Z = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                        boost::multiprecision::et_off>;
using Vec = std::vector<Q>;

inline Z numer(const Q& q) { return Z(boost::multiprecision::numerator(q)); }
inline Z denom(const Q& q) { return Z(boost::multiprecision::denominator(q)); }

inline double to_double(const Q& q) { return q.convert_to<double>(); }

inline Q qfrac(long long n, long long d = 1) { return Q(n) / Q(d); }

inline Z floor_z(const Q& q) {
    Z n = numer(q), d = denom(q);
    Z f = n / d;  // truncates toward zero
    if (n < 0 && f * d != n) f -= 1;
    return f;
}
inline Z ceil_z(const Q& q) { return -floor_z(-q); }
inline bool is_integer(const Q& q) { return denom(q) == 1; }

inline Q qabs(const Q& q) { return q < 0 ? Q(-q) : q; }

inline Q qpow(const Q& b, unsigned e) {
    Q r = 1, x = b;
    while (e) {
        if (e & 1u) r *= x;
        x *= x;
        e >>= 1u;
    }
    return r;
}

inline Q dot(const Vec& a, const Vec& b) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline Vec scale(const Vec& a, const Q& s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}
inline bool is_zero(const Vec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

// Multiply by a positive rational so the entries become coprime integers.
inline Q primitive_factor(const Vec& v) {
    Z l = 1, g = 0;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, denom(x));
    for (const auto& x : v) {
        Z k = numer(x) * (l / denom(x));
        g = boost::multiprecision::gcd(g, k < 0 ? Z(-k) : k);
    }
    if (g == 0) return Q(1);
    return Q(l) / Q(g);
}
inline Vec primitive(const Vec& v) { return scale(v, primitive_factor(v)); }

// sqrt of a rational when it is a perfect square
inline std::optional<Q> exact_sqrt(const Q& q) {
    if (q < 0) return std::nullopt;
    Z n = numer(q), d = denom(q);
    Z rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Q(rn) / Q(rd);
}

inline Q binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    Q r = 1;
    for (long long i = 1; i <= k; ++i) r = r * Q(n - k + i) / Q(i);
    return r;
}

// generalized binomial C(d+p, d) for real p
inline double binom_real(int d, double p) {
    double r = 1.0;
    for (int i = 1; i <= d; ++i) r *= (p + i) / i;
    return r;
}

inline Q parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        auto dotpos = s.find('.');
        if (dotpos == std::string::npos) return Q(Z(s));
        std::string ip = s.substr(0, dotpos), fp = s.substr(dotpos + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        Z scale10 = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale10 *= 10;
        Z whole = Z((ip.empty() || ip == "-") ? std::string("0") : ip);
        Z frac = fp.empty() ? Z(0) : Z(fp);
        Q r = Q(whole < 0 ? Z(-whole) : whole) + Q(frac) / Q(scale10);
        return neg ? Q(-r) : r;
    }
    Z n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator in " + s);
    return Q(n) / Q(d);
}

inline std::string to_string(const Q& q) {
    if (denom(q) == 1) return numer(q).str();
    return numer(q).str() + "/" + denom(q).str();
}

inline bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

}  // namespace zhang
