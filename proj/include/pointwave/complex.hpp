#pragma once

#include <cmath>

#include "pointwave/dd.hpp"

// Minimal complex template usable with both double and dd scalars.
// std::complex is specified for float/double/long double only, so the
// extended-precision paths need their own type.  Branch cuts never appear
// here: every square root in the library is constructed explicitly from
// modulus and phase at the call site.

namespace pointwave {

template <class R>
struct cplx {
    R re{};
    R im{};

    constexpr cplx() = default;
    constexpr cplx(R r) : re(r), im(R(0.0)) {}
    constexpr cplx(R r, R i) : re(r), im(i) {}
};

using ComplexScalar = cplx<double>;
using ComplexDD = cplx<dd>;

template <class R> inline cplx<R> operator+(cplx<R> a, cplx<R> b) { return {a.re + b.re, a.im + b.im}; }
template <class R> inline cplx<R> operator-(cplx<R> a, cplx<R> b) { return {a.re - b.re, a.im - b.im}; }
template <class R> inline cplx<R> operator-(cplx<R> a) { return {-a.re, -a.im}; }

template <class R> inline cplx<R> operator*(cplx<R> a, cplx<R> b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class R> inline cplx<R> operator*(cplx<R> a, R s) { return {a.re * s, a.im * s}; }
template <class R> inline cplx<R> operator*(R s, cplx<R> a) { return a * s; }

template <class R> inline cplx<R> operator/(cplx<R> a, cplx<R> b) {
    // Smith's scaling: the naive |b|^2 under/overflows for extreme b
    if (std::fabs(to_double(b.re)) >= std::fabs(to_double(b.im))) {
        R r = b.im / b.re;
        R den = b.re + b.im * r;
        return {(a.re + a.im * r) / den, (a.im - a.re * r) / den};
    }
    R r = b.re / b.im;
    R den = b.im + b.re * r;
    return {(a.im + a.re * r) / den, (a.im * r - a.re) / den};
}

template <class R> inline cplx<R> operator/(cplx<R> a, R s) { return {a.re / s, a.im / s}; }

template <class R> inline cplx<R>& operator+=(cplx<R>& a, cplx<R> b) { a = a + b; return a; }
template <class R> inline cplx<R>& operator-=(cplx<R>& a, cplx<R> b) { a = a - b; return a; }
template <class R> inline cplx<R>& operator*=(cplx<R>& a, cplx<R> b) { a = a * b; return a; }

template <class R> inline cplx<R> conj(cplx<R> a) { return {a.re, -a.im}; }

// scalar function dispatch so templates work for double and dd alike
inline double pw_exp(double x) { return std::exp(x); }
inline dd pw_exp(dd x) { return dd_exp(x); }
inline double pw_sqrt(double x) { return std::sqrt(x); }
inline dd pw_sqrt(dd x) { return dd_sqrt(x); }
inline void pw_sincos(double x, double& s, double& c) { s = std::sin(x); c = std::cos(x); }
inline void pw_sincos(dd x, dd& s, dd& c) { dd_sincos(x, s, c); }
inline double pw_abs(double x) { return std::fabs(x); }
inline dd pw_abs(dd x) { return dd_abs(x); }
inline bool pw_isfinite(double x) { return std::isfinite(x); }
inline bool pw_isfinite(dd x) { return dd_isfinite(x); }

inline double cx_abs(ComplexScalar a) { return std::hypot(a.re, a.im); }
inline dd cx_abs(ComplexDD a) { return dd_sqrt(a.re * a.re + a.im * a.im); }

template <class R> inline R cx_norm2(cplx<R> a) { return a.re * a.re + a.im * a.im; }

template <class R> inline bool cx_isfinite(cplx<R> a) { return pw_isfinite(a.re) && pw_isfinite(a.im); }

// e^{i theta}
template <class R> inline cplx<R> cis(R theta) {
    R s, c;
    pw_sincos(theta, s, c);
    return {c, s};
}

// e^{x + iy}
template <class R> inline cplx<R> cx_exp(cplx<R> z) {
    R m = pw_exp(z.re);
    cplx<R> u = cis(z.im);
    return {m * u.re, m * u.im};
}

inline ComplexScalar round_to_double(ComplexDD a) { return {a.re.hi + a.re.lo, a.im.hi + a.im.lo}; }
inline ComplexDD widen(ComplexScalar a) { return {dd(a.re), dd(a.im)}; }

// integer power by squaring; exact exponent handling
template <class R> inline cplx<R> cx_powi(cplx<R> b, long long n) {
    cplx<R> r{R(1.0), R(0.0)};
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

} // namespace pointwave
