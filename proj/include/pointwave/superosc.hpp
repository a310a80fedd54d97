#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pointwave/complex.hpp"
#include "pointwave/errors.hpp"

// Superoscillating sequences F_n(z) = sum_j C_j e^{i k_j z} with
//   C_j = (n choose j) ((1+k)/2)^{n-j} ((1-k)/2)^j,  k_j = 1 - 2j/n.
// |C_j| reaches ((|k|+1)/2)^n while F_n stays O(1) on the superoscillatory
// region, so every coefficient and every sum here is carried in double-double:
// each term stores a correction slot (c_err, k_err) on top of the double
// fields.  Plain-double noise kills the sum near n ~ 55; the double-double
// path is good to n ~ 105 (measured); beyond that use closed_form().

namespace pointwave {

struct SuperoscSpec {
    double k = 2.0;
    int n = 1;
};

inline void validate(const SuperoscSpec& s) {
    if (!(std::fabs(s.k) > 1.0) || !std::isfinite(s.k))
        throw DomainError("SuperoscSpec: |k| must exceed 1");
    if (s.n < 1) throw DomainError("SuperoscSpec: n must be >= 1");
}

struct FourierTerm {
    ComplexScalar c{};      // coefficient, double part
    ComplexScalar c_err{};  // coefficient correction (0 for plain user input)
    double k = 0.0;         // wavenumber, double part
    double k_err = 0.0;     // wavenumber correction
};

struct FourierSum {
    std::vector<FourierTerm> terms;
};

inline void validate(const FourierSum& f) {
    if (f.terms.empty()) throw DomainError("FourierSum: term list must be nonempty");
    for (const auto& t : f.terms)
        if (!std::isfinite(t.k) || !cx_isfinite(t.c))
            throw DomainError("FourierSum: non-finite term");
}

struct A1Bound {
    double A = 0.0;
    double B = 0.0;
};

inline void validate(const A1Bound& b) {
    if (!(b.A >= 0.0) || !(b.B >= 0.0) || !std::isfinite(b.A) || !std::isfinite(b.B))
        throw DomainError("A1Bound: A and B must be finite and >= 0");
}

// The coefficient test-relaxation: k = 1 exactly is allowed (C_0 = 1, rest 0).
inline FourierSum coefficients(const SuperoscSpec& spec) {
    if (!(std::fabs(spec.k) >= 1.0) || !std::isfinite(spec.k))
        throw DomainError("coefficients: |k| must be >= 1");
    if (spec.n < 1) throw DomainError("coefficients: n must be >= 1");
    const int n = spec.n;
    dd a = (dd(1.0) + dd(spec.k)) * dd(0.5);
    dd b = (dd(1.0) - dd(spec.k)) * dd(0.5);
    FourierSum out;
    out.terms.resize(n + 1);
    dd c = dd_powi(a, n); // C_0 = a^n
    for (int j = 0; j <= n; ++j) {
        if (!dd_isfinite(c) || std::fabs(c.hi) > 1e290)
            throw RangeError("coefficients: |C_j| overflows at j = " + std::to_string(j));
        dd kj = dd(static_cast<double>(n - 2 * j)) / dd(static_cast<double>(n));
        FourierTerm& t = out.terms[j];
        t.c = {c.hi, 0.0};
        t.c_err = {c.lo, 0.0};
        t.k = kj.hi;
        t.k_err = kj.lo;
        if (j < n) {
            // C_{j+1}/C_j = (n-j)/(j+1) * b/a
            c = c * dd(static_cast<double>(n - j)) * b / (dd(static_cast<double>(j + 1)) * a);
        }
    }
    return out;
}

// Full-precision evaluation; public evaluate() rounds the result.
inline ComplexDD evaluate_full(const FourierSum& f, ComplexDD z) {
    validate(f);
    ComplexDD acc{dd(0.0), dd(0.0)};
    for (const auto& t : f.terms) {
        dd kj{t.k, t.k_err};
        // e^{i k z} = e^{-k Im z} (cos(k Re z) + i sin(k Re z))
        dd mag_exp = -(kj * z.im);
        if (mag_exp.hi > 706.0)
            throw RangeError("evaluate: e^{i k z} overflows for this Im(z)");
        dd m = dd_exp(mag_exp);
        dd s, c;
        dd_sincos(kj * z.re, s, c);
        ComplexDD e{m * c, m * s};
        ComplexDD coeff{dd(t.c.re) + dd(t.c_err.re), dd(t.c.im) + dd(t.c_err.im)};
        acc += coeff * e;
    }
    return acc;
}

inline ComplexScalar evaluate(const FourierSum& f, ComplexScalar z) {
    return round_to_double(evaluate_full(f, ComplexDD{dd(z.re), dd(z.im)}));
}

// (cos(z/n) + i k sin(z/n))^n, the binomial re-summation of F_n; exact in the
// exponent, so it stays accurate long after the coefficient sum drowns.
inline ComplexScalar closed_form(const SuperoscSpec& spec, ComplexScalar z) {
    if (spec.n < 1) throw DomainError("closed_form: n must be >= 1");
    double wr = z.re / spec.n, wi = z.im / spec.n;
    if (std::fabs(wi) > 700.0) throw RangeError("closed_form: cosh overflow");
    // cos(a+bi), sin(a+bi)
    ComplexScalar cw{std::cos(wr) * std::cosh(wi), -std::sin(wr) * std::sinh(wi)};
    ComplexScalar sw{std::sin(wr) * std::cosh(wi), std::cos(wr) * std::sinh(wi)};
    ComplexScalar base = cw + ComplexScalar{0.0, spec.k} * sw;
    ComplexScalar r = cx_powi(base, spec.n);
    if (!cx_isfinite(r)) throw RangeError("closed_form: overflow");
    return r;
}

inline std::vector<ComplexScalar> uniform_real_grid(double lo, double hi, int count) {
    if (count < 1) throw DomainError("uniform_real_grid: count must be >= 1");
    std::vector<ComplexScalar> g(count);
    for (int i = 0; i < count; ++i) {
        double s = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        g[i] = {lo + (hi - lo) * s, 0.0};
    }
    return g;
}

// max over the grid of |F(z) - e^{ikz}| e^{-B|z|}, for any evaluator F.
template <class F>
inline double a1_distance_fn(F&& eval, double k, double bound_B, const std::vector<ComplexScalar>& grid) {
    if (grid.empty()) throw DomainError("a1_distance: grid must be nonempty");
    double best = 0.0;
    for (const ComplexScalar& z : grid) {
        ComplexScalar target = cx_exp(ComplexScalar{-k * z.im, k * z.re});
        ComplexScalar diff = eval(z) - target;
        double v = cx_abs(diff) * std::exp(-bound_B * cx_abs(z));
        if (v > best) best = v;
    }
    return best;
}

inline double a1_distance(const FourierSum& f, double k, double bound_B, const std::vector<ComplexScalar>& grid) {
    validate(f);
    return a1_distance_fn([&](ComplexScalar z) { return evaluate(f, z); }, k, bound_B, grid);
}

inline bool is_superoscillating(const FourierSum& f, double k) {
    validate(f);
    double m = 0.0;
    for (const auto& t : f.terms) m = std::max(m, std::fabs(t.k));
    return m < std::fabs(k);
}

} // namespace pointwave
