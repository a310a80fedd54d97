#pragma once

#include <cmath>
#include <string>
#include <type_traits>

#include "pointwave/complex.hpp"
#include "pointwave/errors.hpp"

// Lambda(z) = e^{z^2} erfc(z), the kernel of the point-interaction
// propagators.  Evaluation strategy:
//   |z| <= series_radius          alternating power series, double-double sums
//   |z| >  series_radius, Re >= 0 Laplace continued fraction (modified Lentz);
//                                 near the imaginary axis (Re < 0.1|z|) the
//                                 fraction converges too slowly, so the series
//                                 is stretched up to |z| <= 6 there
//   Re < 0                        reflection Lambda(z) = 2 e^{z^2} - Lambda(-z)
// The reflection exponent is screened before exponentiation; overflow raises
// instead of returning Inf.

namespace pointwave {

struct LambdaEvalConfig {
    double series_radius = 4.0;
    double series_tol = 1e-18;
    int max_terms = 600;
};

inline void validate(const LambdaEvalConfig& cfg) {
    if (!(cfg.series_radius > 0.0)) throw DomainError("lambda config: series_radius must be > 0");
    if (!(cfg.series_tol > 0.0 && cfg.series_tol < 1.0)) throw DomainError("lambda config: series_tol must lie in (0,1)");
    if (cfg.max_terms < 32) throw DomainError("lambda config: max_terms must be >= 32");
}

template <class R>
inline LambdaEvalConfig default_lambda_config() { return {}; }

template <>
inline LambdaEvalConfig default_lambda_config<dd>() { return {4.0, 1e-34, 900}; }

// Gamma(n/2 + 1) by upward recurrence from Gamma(1) = 1, Gamma(3/2) = sqrt(pi)/2.
inline double gamma_half_integer(int n) {
    if (n < 0) throw DomainError("gamma_half_integer: n must be >= 0");
    double g = (n % 2 == 0) ? 1.0 : 0.5 * dd_sqrt_pi.hi; // Gamma(1) or Gamma(3/2)
    double x = (n % 2 == 0) ? 1.0 : 1.5;
    while (x < 0.5 * n + 1.0 - 0.25) {
        g *= x;
        x += 1.0;
        if (!std::isfinite(g)) throw RangeError("gamma_half_integer: overflow at n = " + std::to_string(n));
    }
    if (!std::isfinite(g)) throw RangeError("gamma_half_integer: overflow at n = " + std::to_string(n));
    return g;
}

// Power series split into even and odd halves, both with positive-ratio term
// recurrences; accumulation always runs in double-double because the
// alternating sum loses ~|z|^2 digits to cancellation.
template <class R>
inline cplx<R> lambda_series(cplx<R> z, const LambdaEvalConfig& cfg) {
    ComplexDD zd{dd(z.re), dd(z.im)};
    ComplexDD z2 = zd * zd;

    ComplexDD even_sum{dd(1.0), dd(0.0)};   // sum z^{2m} / m!
    ComplexDD odd_sum{dd_two_inv_sqrt_pi, dd(0.0)}; // sum z^{2m} / Gamma(m + 3/2)
    ComplexDD et = even_sum, ot = odd_sum;
    double zabs = std::hypot(to_double(zd.re), to_double(zd.im));
    double last = 0.0;
    bool converged = false;
    for (int m = 1; m <= cfg.max_terms; ++m) {
        et = et * z2 / dd(static_cast<double>(m));
        ot = ot * z2 / dd(m + 0.5);
        even_sum += et;
        odd_sum += ot;
        double tmag = std::hypot(et.re.hi, et.im.hi) + zabs * std::hypot(ot.re.hi, ot.im.hi);
        double smag = std::hypot(even_sum.re.hi, even_sum.im.hi) + zabs * std::hypot(odd_sum.re.hi, odd_sum.im.hi);
        last = tmag;
        if (tmag <= cfg.series_tol * (smag + 1e-300)) { converged = true; break; }
    }
    if (!converged)
        throw TruncationError("lambda_series: no convergence within max_terms", last);
    ComplexDD r = even_sum - zd * odd_sum;
    if constexpr (std::is_same_v<R, double>) {
        return round_to_double(r);
    } else {
        return r;
    }
}

// Laplace continued fraction for Re(z) > 0:
//   Lambda(z) = (1/sqrt(pi)) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
// evaluated by the modified Lentz algorithm.  Convergence slows toward the
// imaginary axis; the iteration cap turns a stall into a truncation error.
template <class R>
inline cplx<R> lambda_cf(cplx<R> z, int max_iter = 2000) {
    const R tiny = R(1e-290);
    const double tol = std::is_same_v<R, double> ? 1e-15 : 1e-30;
    cplx<R> f{tiny, R(0.0)};
    cplx<R> C = f;
    cplx<R> D{R(0.0), R(0.0)};
    double dev = 1.0;
    for (int n = 1; n <= max_iter; ++n) {
        R a = (n == 1) ? R(1.0) : R(0.5 * (n - 1));
        D = z + cplx<R>{a, R(0.0)} * D;
        if (to_double(cx_norm2(D)) == 0.0) D = {tiny, R(0.0)};
        D = cplx<R>{R(1.0), R(0.0)} / D;
        C = z + cplx<R>{a, R(0.0)} / C;
        if (to_double(cx_norm2(C)) == 0.0) C = {tiny, R(0.0)};
        cplx<R> delta = C * D;
        f *= delta;
        dev = std::hypot(to_double(delta.re) - 1.0, to_double(delta.im));
        if (dev < tol) {
            cplx<R> inv_sqrt_pi{R(dd_inv_sqrt_pi.hi), R(0.0)};
            if constexpr (!std::is_same_v<R, double>) inv_sqrt_pi.re = dd_inv_sqrt_pi;
            return f * inv_sqrt_pi;
        }
    }
    throw TruncationError("lambda_cf: continued fraction stalled (argument too close to the imaginary axis?)", dev);
}

template <class R>
cplx<R> lambda(cplx<R> z, const LambdaEvalConfig& cfg);

namespace detail {

template <class R>
inline cplx<R> lambda_right_half(cplx<R> z, const LambdaEvalConfig& cfg) {
    // Re(z) >= 0 and |z| > series_radius here
    double re = to_double(z.re), im = to_double(z.im);
    double zabs = std::hypot(re, im);
    if (re < 0.1 * zabs && zabs <= 6.0) return lambda_series(z, cfg);
    return lambda_cf(z);
}

} // namespace detail

template <class R>
inline cplx<R> lambda(cplx<R> z, const LambdaEvalConfig& cfg) {
    validate(cfg);
    if (!cx_isfinite(z)) throw DomainError("lambda: non-finite argument");
    double re = to_double(z.re), im = to_double(z.im);
    double zabs = std::hypot(re, im);
    cplx<R> result;
    if (zabs <= cfg.series_radius) {
        result = lambda_series(z, cfg);
    } else if (re >= 0.0) {
        result = detail::lambda_right_half(z, cfg);
    } else {
        // reflection: Lambda(z) = 2 e^{z^2} - Lambda(-z), exponent screened first
        double re_z2 = (re - im) * (re + im);
        if (re_z2 > 709.0)
            throw RangeError("lambda: e^{z^2} overflows in the reflection branch");
        cplx<R> z2 = z * z;
        result = cx_exp(z2) * R(2.0) - detail::lambda_right_half(-z, cfg);
    }
    if (!cx_isfinite(result)) throw RangeError("lambda: non-finite result");
    return result;
}

template <class R>
inline cplx<R> lambda(cplx<R> z) {
    return lambda(z, default_lambda_config<R>());
}

// Lambda'(z) = 2 z Lambda(z) - 2/sqrt(pi)
template <class R>
inline cplx<R> lambda_derivative(cplx<R> z, const LambdaEvalConfig& cfg) {
    cplx<R> l = lambda(z, cfg);
    cplx<R> r = z * l * R(2.0);
    r.re = r.re - R(dd_two_inv_sqrt_pi.hi);
    if constexpr (!std::is_same_v<R, double>) r.re = r.re - R(dd_two_inv_sqrt_pi.lo);
    return r;
}

template <class R>
inline cplx<R> lambda_derivative(cplx<R> z) {
    return lambda_derivative(z, default_lambda_config<R>());
}

// Leading asymptotic form only; the O(1/|z|^2) correction is deliberately
// not included so tests can measure it.
inline ComplexScalar lambda_asymptotic(ComplexScalar z) {
    double zabs = cx_abs(z);
    if (!(zabs >= 2.0)) throw DomainError("lambda_asymptotic: requires |z| >= 2");
    ComplexScalar tail = ComplexScalar{dd_inv_sqrt_pi.hi, 0.0} / z;
    if (z.re >= 0.0) return tail;
    double re_z2 = (z.re - z.im) * (z.re + z.im);
    if (re_z2 > 709.0) throw RangeError("lambda_asymptotic: e^{z^2} overflows");
    return cx_exp(z * z) * 2.0 + tail;
}

} // namespace pointwave
