#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "pointwave/errors.hpp"

// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving ~32 decimal digits.  Used where catastrophic cancellation exceeds
// double precision (superoscillation sums, the small-|z| Lambda series,
// discrete moment gaps).  Requires round-to-nearest and a real fma.

namespace pointwave {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
    constexpr dd(int v) : hi(static_cast<double>(v)), lo(0.0) {}
};

// error-free transforms
inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) {
    // requires |a| >= |b| or a == 0
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    dd t = two_sum(a.lo, b.lo);
    dd r = quick_two_sum(s.hi, s.lo + t.hi);
    return quick_two_sum(r.hi, r.lo + t.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    double lo = p.lo + (a.hi * b.lo + a.lo * b.hi);
    return quick_two_sum(p.hi, lo);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }
inline dd& operator/=(dd& a, dd b) { a = a / b; return a; }

inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b) { return b < a; }
inline bool operator<=(dd a, dd b) { return !(b < a); }
inline bool operator>=(dd a, dd b) { return !(a < b); }

inline double to_double(dd a) { return a.hi; }
inline constexpr double to_double(double a) { return a; }
inline dd dd_abs(dd a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }
inline bool dd_isfinite(dd a) { return std::isfinite(a.hi) && std::isfinite(a.lo); }

inline dd ldexp(dd a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

// hi parts are the correctly rounded doubles; lo parts complete them
inline constexpr dd dd_pi        {3.141592653589793, 1.2246467991473532e-16};
inline constexpr dd dd_pi_2      {1.5707963267948966, 6.123233995736766e-17};
inline constexpr dd dd_pi_4      {0.7853981633974483, 3.061616997868383e-17};
inline constexpr dd dd_two_pi    {6.283185307179586, 2.4492935982947064e-16};
inline constexpr dd dd_sqrt_pi   {1.772453850905516, -7.666586499825799e-17};
inline constexpr dd dd_inv_sqrt_pi {0.5641895835477563, 7.66772980658294e-18};
inline constexpr dd dd_two_inv_sqrt_pi {1.1283791670955126, 1.533545961316588e-17};
inline constexpr dd dd_ln2       {0.6931471805599453, 2.3190468138462996e-17};
inline constexpr dd dd_sqrt2_2   {0.7071067811865476, -4.833646656726457e-17};

inline dd dd_sqrt(dd a) {
    if (a.hi == 0.0 && a.lo == 0.0) return dd(0.0);
    if (a.hi < 0.0) throw DomainError("dd_sqrt: negative argument");
    // one Newton correction on top of the double estimate
    double x = 1.0 / std::sqrt(a.hi);
    double y = a.hi * x;
    dd diff = a - two_prod(y, y);
    return quick_two_sum(y, diff.hi * (x * 0.5));
}

inline dd dd_exp(dd x) {
    if (x.hi > 709.0) throw RangeError("dd_exp: overflow");
    if (x.hi < -745.0) return dd(0.0);
    // e^x = 2^k e^r, |r| <= ln2/2, Taylor on r
    double k = std::nearbyint(x.hi / dd_ln2.hi);
    dd r = x - dd_ln2 * dd(k);
    dd sum = dd(1.0) + r;
    dd term = r;
    for (int n = 2; n < 40; ++n) {
        term = term * r / dd(n);
        sum += term;
        if (std::fabs(term.hi) < 1e-35 * std::fabs(sum.hi)) break;
    }
    return ldexp(sum, static_cast<int>(k));
}

namespace detail {

// Taylor on |r| <= pi/4 + tiny
inline dd sin_taylor(dd r) {
    dd r2 = r * r;
    dd term = r;
    dd sum = r;
    for (int n = 1; n < 20; ++n) {
        term = term * r2 / dd(static_cast<double>(2 * n) * (2 * n + 1));
        term = -term;
        sum += term;
        if (std::fabs(term.hi) < 1e-35) break;
    }
    return sum;
}

inline dd cos_taylor(dd r) {
    dd r2 = r * r;
    dd term(1.0);
    dd sum(1.0);
    for (int n = 1; n < 20; ++n) {
        term = term * r2 / dd(static_cast<double>(2 * n - 1) * (2 * n));
        term = -term;
        sum += term;
        if (std::fabs(term.hi) < 1e-35) break;
    }
    return sum;
}

} // namespace detail

// Simultaneous sin/cos.  Arguments up to ~1e15 reduce exactly (the quotient
// fits a double and the product with pi/2 is error-free via fma), beyond that
// precision degrades like |x|*1e-32 absolute.
inline void dd_sincos(dd x, dd& s, dd& c) {
    if (!dd_isfinite(x)) throw DomainError("dd_sincos: non-finite argument");
    double k = std::nearbyint(x.hi / dd_pi_2.hi);
    dd r = x - dd_pi_2 * dd(k);
    dd st = detail::sin_taylor(r);
    dd ct = detail::cos_taylor(r);
    long long q = static_cast<long long>(k) & 3; // k fits long long for all reduced inputs
    switch (q < 0 ? q + 4 : q) {
        case 0: s = st; c = ct; break;
        case 1: s = ct; c = -st; break;
        case 2: s = -st; c = -ct; break;
        default: s = -ct; c = st; break;
    }
}

inline dd dd_sin(dd x) { dd s, c; dd_sincos(x, s, c); return s; }
inline dd dd_cos(dd x) { dd s, c; dd_sincos(x, s, c); return c; }

// integer power by squaring
inline dd dd_powi(dd b, long long n) {
    if (n < 0) return dd(1.0) / dd_powi(b, -n);
    dd r(1.0);
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

} // namespace pointwave
