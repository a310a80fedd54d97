#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pointwave/evolution.hpp"

// Truncated power-series calculus on entire functions of exponential order
// one: growth envelopes, the infinite-order operator sum_m (-i)^m c_m d^m,
// difference quotients, and the propagator symbols that reproduce the
// evolved plane waves as U e^{ik xi}|_{xi=0}.
//
// Symbols are stored as k-power coefficients c_0..c_M.  Weights of the
// interaction symbols are handled as log-magnitude plus an exact eighth-root
// phase: the raw terms span hundreds of orders of magnitude but their
// products stay inside double range.

namespace pointwave {

struct EntireFunctionSeries {
    std::vector<ComplexScalar> coeffs;
    std::optional<A1Bound> bound; // certified growth |f_n| <= A (eB)^n / n!
};

struct OperatorSymbol {
    std::vector<ComplexScalar> coeffs; // c_m, m = 0..M
    std::string description;
};

inline constexpr double kEuler = 2.718281828459045;

// A (eB)^n, the z = 0 envelope of |F^(n)|
inline double derivative_growth_bound(const A1Bound& b, int n) {
    validate(b);
    if (n < 0) throw DomainError("derivative_growth_bound: n must be >= 0");
    double v = b.A * std::pow(kEuler * b.B, n);
    if (!std::isfinite(v)) throw RangeError("derivative_growth_bound: overflow");
    return v;
}

// Taylor coefficients of e^{ik xi}, certified with (A, B) = (1, |k|)
inline EntireFunctionSeries series_of_exp_ik(double k, int len) {
    if (len < 1) throw DomainError("series_of_exp_ik: len must be >= 1");
    EntireFunctionSeries f;
    f.coeffs.resize(len);
    ComplexScalar v{1.0, 0.0};
    ComplexScalar ik{0.0, k};
    for (int q = 0; q < len; ++q) {
        f.coeffs[q] = v;
        v = v * ik / static_cast<double>(q + 1);
    }
    f.bound = A1Bound{1.0, std::fabs(k)};
    return f;
}

// sum_j C_j e^{i k_j xi} as a Taylor series; coefficients cancel
// catastrophically, so they are accumulated in double-double.
inline EntireFunctionSeries series_of_fourier_sum(const FourierSum& fs, int len) {
    validate(fs);
    if (len < 1) throw DomainError("series_of_fourier_sum: len must be >= 1");
    EntireFunctionSeries f;
    f.coeffs.resize(len);
    std::size_t nt = fs.terms.size();
    std::vector<ComplexDD> pw(nt, ComplexDD{dd(1.0), dd(0.0)}); // (i k_j)^q / q!
    double amass = 0.0, bmax = 0.0;
    for (const auto& t : fs.terms) {
        amass += cx_abs(t.c);
        bmax = std::max(bmax, std::fabs(t.k));
    }
    for (int q = 0; q < len; ++q) {
        ComplexDD acc{dd(0.0), dd(0.0)};
        for (std::size_t j = 0; j < nt; ++j) {
            const auto& t = fs.terms[j];
            ComplexDD coeff{dd(t.c.re) + dd(t.c_err.re), dd(t.c.im) + dd(t.c_err.im)};
            acc += coeff * pw[j];
            dd kj = dd(t.k) + dd(t.k_err);
            // multiply by (i k_j) / (q+1)
            ComplexDD ikj{dd(0.0), kj / dd(q + 1)};
            pw[j] = pw[j] * ikj;
        }
        f.coeffs[q] = round_to_double(acc);
    }
    f.bound = A1Bound{amass, bmax};
    return f;
}

// S_B = sum |c_m| B^m
inline double symbol_mass(const OperatorSymbol& sym, double B) {
    if (!(B >= 0.0)) throw DomainError("symbol_mass: B must be >= 0");
    double s = 0.0, p = 1.0;
    for (std::size_t m = 0; m < sym.coeffs.size(); ++m) {
        s += cx_abs(sym.coeffs[m]) * p;
        p *= B;
        if (!std::isfinite(s)) throw RangeError("symbol_mass: overflow");
    }
    return s;
}

// g_n = sum_m (-i)^m c_m f_{n+m} (n+m)!/n!  for n = 0..out_len-1.
// Coefficients beyond the stored length of f are zero (a polynomial is a
// legitimate entire function); if f carries a growth bound certifying a
// nonzero tail above the stored length, the estimated missing mass is
// checked against tail_tol first.
inline EntireFunctionSeries apply_operator(const OperatorSymbol& sym, const EntireFunctionSeries& f,
                                           int out_len, double tail_tol = 1e-12) {
    if (out_len < 1) throw DomainError("apply_operator: out_len must be >= 1");
    const std::size_t M = sym.coeffs.size();
    const std::size_t L = f.coeffs.size();
    if (f.bound && L < static_cast<std::size_t>(out_len) + M - 1) {
        // estimated contribution of the unstored f coefficients
        const double A = f.bound->A, eB = kEuler * f.bound->B;
        double worst = 0.0;
        for (int n = 0; n < out_len; ++n) {
            double est = 0.0;
            double lnfac_n = std::lgamma(n + 1.0);
            for (std::size_t m = 0; m < M; ++m) {
                std::size_t q = n + m;
                if (q < L) continue;
                double ab = cx_abs(sym.coeffs[m]);
                if (ab == 0.0 || eB == 0.0) continue;
                double lt = std::log(ab) + std::log(A) + q * std::log(eB) - lnfac_n;
                if (lt < 700.0) est += std::exp(lt);
                else est = std::numeric_limits<double>::infinity();
            }
            worst = std::max(worst, est);
        }
        if (worst > tail_tol)
            throw TruncationError("apply_operator: input series too short for certified tail", worst);
    }
    EntireFunctionSeries g;
    g.coeffs.resize(out_len);
    for (int n = 0; n < out_len; ++n) {
        dd acc_re(0.0), acc_im(0.0);
        for (std::size_t m = 0; m < M && n + m < L; ++m) {
            ComplexScalar val = f.coeffs[n + m];
            for (std::size_t i = 1; i <= m; ++i) val = val * static_cast<double>(n + i);
            val = val * sym.coeffs[m];
            // times (-i)^m
            switch (m & 3) {
                case 0: break;
                case 1: val = {val.im, -val.re}; break;
                case 2: val = {-val.re, -val.im}; break;
                default: val = {-val.im, val.re}; break;
            }
            if (!cx_isfinite(val)) throw RangeError("apply_operator: term overflow");
            acc_re += dd(val.re);
            acc_im += dd(val.im);
        }
        g.coeffs[n] = {to_double(acc_re), to_double(acc_im)};
    }
    if (f.bound) {
        double s = symbol_mass(sym, kEuler * f.bound->B);
        double A2 = f.bound->A * s;
        if (!std::isfinite(A2)) throw RangeError("apply_operator: bound constant overflow");
        g.bound = A1Bound{A2, kEuler * f.bound->B};
    }
    return g;
}

inline ComplexScalar eval_series(const EntireFunctionSeries& f, ComplexScalar z) {
    ComplexScalar acc{0.0, 0.0};
    for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = acc * z + f.coeffs[i];
    return acc;
}

struct SeriesEvalResult {
    ComplexScalar value{};
    bool tail_certified = false;
    double tail_bound = std::numeric_limits<double>::infinity();
};

// Horner value plus a factorial tail certificate from the attached bound:
// tail <= A (eB|z|)^L / L! * 1/(1 - eB|z|/(L+1)).
inline SeriesEvalResult eval_series_checked(const EntireFunctionSeries& f, ComplexScalar z, double tol = 1e-12) {
    SeriesEvalResult r;
    r.value = eval_series(f, z);
    if (!f.bound) return r;
    double L = static_cast<double>(f.coeffs.size());
    double w = kEuler * f.bound->B * cx_abs(z);
    if (w == 0.0) { r.tail_bound = 0.0; r.tail_certified = true; return r; }
    double ratio = w / (L + 1.0);
    if (ratio >= 1.0) return r; // factorial decay has not set in yet
    double lt = std::log(f.bound->A) + L * std::log(w) - std::lgamma(L + 1.0) - std::log(1.0 - ratio);
    r.tail_bound = lt > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(lt);
    r.tail_certified = r.tail_bound <= tol;
    return r;
}

namespace detail {

// binom(n, k): exact in 64-bit when possible, log-Gamma beyond
inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n <= 66) {
        std::uint64_t r = 1;
        int kk = std::min(k, n - k);
        for (int i = 1; i <= kk; ++i) r = r * (n - kk + i) / i;
        return static_cast<double>(r);
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

} // namespace detail

// (F(z+a) - F(z))/a re-expanded about 0:
// g_n = sum_m f_{n+m+1} binom(n+m+1, m+1) a^m
inline EntireFunctionSeries difference_quotient(const EntireFunctionSeries& f, ComplexScalar a, int out_len) {
    if (cx_abs(a) == 0.0) throw DomainError("difference_quotient: a must be nonzero");
    if (out_len < 1) throw DomainError("difference_quotient: out_len must be >= 1");
    EntireFunctionSeries g;
    g.coeffs.resize(out_len);
    const std::size_t L = f.coeffs.size();
    for (int n = 0; n < out_len; ++n) {
        dd acc_re(0.0), acc_im(0.0);
        ComplexScalar apow{1.0, 0.0};
        for (std::size_t m = 0; n + m + 1 < L; ++m) {
            std::size_t idx = n + m + 1;
            ComplexScalar val = f.coeffs[idx] * detail::binom(static_cast<int>(idx), static_cast<int>(m) + 1) * apow;
            if (!cx_isfinite(val)) throw RangeError("difference_quotient: term overflow");
            acc_re += dd(val.re);
            acc_im += dd(val.im);
            apow = apow * a;
        }
        g.coeffs[n] = {to_double(acc_re), to_double(acc_im)};
    }
    if (f.bound) {
        // |(F(z+a)-F(z))/a| <= 2 A e^{B|a|} e^{B|z|} / |a|
        double A2 = 2.0 * f.bound->A * std::exp(f.bound->B * cx_abs(a)) / cx_abs(a);
        if (std::isfinite(A2)) g.bound = A1Bound{A2, f.bound->B};
    }
    return g;
}

// exact unit phases at multiples of pi/4
namespace detail {

inline ComplexScalar eighth_root(int idx) {
    static const double h = dd_sqrt2_2.hi;
    switch (((idx % 8) + 8) % 8) {
        case 0: return {1.0, 0.0};
        case 1: return {h, h};
        case 2: return {0.0, 1.0};
        case 3: return {-h, h};
        case 4: return {-1.0, 0.0};
        case 5: return {-h, -h};
        case 6: return {0.0, -1.0};
        default: return {h, -h};
    }
}

inline ComplexScalar quarter_root(int idx) {
    switch (((idx % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

} // namespace detail

// Coefficients of e^{ikx - ik^2 t} in powers of k:
//   c_j = sum_{m=ceil(j/2)}^{j} (ix)^{2m-j} (-it)^{j-m} / ((j-m)! (2m-j)!)
// evaluated as log-magnitude plus exact i-power phase.
inline OperatorSymbol symbol_psi_free(double t, double x, int M) {
    if (!(t > 0.0)) throw DomainError("symbol_psi_free: t must be > 0");
    if (M < 1) throw DomainError("symbol_psi_free: M must be >= 1");
    OperatorSymbol sym;
    sym.coeffs.assign(M + 1, ComplexScalar{0.0, 0.0});
    sym.description = "free evolution symbol";
    const double lnx = x == 0.0 ? 0.0 : std::log(std::fabs(x));
    const double lnt = std::log(t);
    for (int j = 0; j <= M; ++j) {
        ComplexScalar acc{0.0, 0.0};
        for (int m = (j + 1) / 2; m <= j; ++m) {
            int a = 2 * m - j; // power of (ix)
            int b = j - m;     // power of (-it)
            if (x == 0.0 && a > 0) continue;
            double lm = a * lnx + b * lnt - std::lgamma(a + 1.0) - std::lgamma(b + 1.0);
            if (lm < -745.0) continue;
            double mag = std::exp(lm);
            ComplexScalar ph = detail::quarter_root(a - b); // i^a (-i)^b
            if (x < 0.0 && (a & 1)) mag = -mag;
            acc += ph * mag;
        }
        sym.coeffs[j] = acc;
    }
    return sym;
}

namespace detail {

// Shared core of the interaction symbols.  Computes, for j = 0..M,
//   series_part[j]  = sum_{s>=0} w_{s+1} B_j(s)          (phi_delta shape)
//   direct_part[j]  = sum_{s>=j} w_s  binom(s,j) p^{s-j}  (Lambda(v) shape)
// where p = |x|/(2it), w_N = (-sqrt(it))^N / Gamma(N/2+1), and
//   B_j(S) = sum_{s=j}^{S} (p+strength)^{S-s} binom(s,j) p^{s-j}.
struct SymbolCore {
    std::vector<ComplexScalar> series_part;
    std::vector<ComplexScalar> direct_part;
};

inline SymbolCore interaction_symbol_core(double t, double x, double strength, int M, int S, bool want_direct) {
    SymbolCore core;
    core.series_part.assign(M + 1, ComplexScalar{0.0, 0.0});
    core.direct_part.assign(M + 1, ComplexScalar{0.0, 0.0});
    const double q = std::fabs(x) / (2.0 * t);
    const ComplexScalar p{0.0, -q}; // |x|/(2it)
    const ComplexScalar ps{strength, -q};
    const double lnst = 0.5 * std::log(t);

    std::vector<ComplexScalar> ppow(S + 1);
    ppow[0] = {1.0, 0.0};
    for (int e = 1; e <= S; ++e) ppow[e] = ppow[e - 1] * p;

    std::vector<double> binrow(M + 1, 0.0);
    std::vector<ComplexScalar> B(M + 1, ComplexScalar{0.0, 0.0});
    binrow[0] = 1.0;

    for (int s = 0; s <= S; ++s) {
        if (s > 0)
            for (int j = std::min(s, M); j >= 1; --j) binrow[j] += binrow[j - 1];
        const int jtop = std::min(s, M);
        // weight for N = s+1 (series part) and N = s (direct part)
        double lw1 = (s + 1) * lnst - std::lgamma(0.5 * (s + 3));
        double lw0 = s * lnst - std::lgamma(0.5 * s + 1.0);
        ComplexScalar w1 = lw1 < -700.0 ? ComplexScalar{0.0, 0.0} : eighth_root(5 * (s + 1)) * std::exp(lw1);
        ComplexScalar w0 = lw0 < -700.0 ? ComplexScalar{0.0, 0.0} : eighth_root(5 * s) * std::exp(lw0);
        for (int j = jtop; j >= 0; --j) {
            B[j] = ps * B[j] + binrow[j] * ppow[s - j];
            if (!cx_isfinite(B[j])) throw RangeError("interaction symbol: intermediate overflow");
            if (!(w1.re == 0.0 && w1.im == 0.0)) core.series_part[j] += w1 * B[j];
            if (want_direct && !(w0.re == 0.0 && w0.im == 0.0))
                core.direct_part[j] += w0 * (binrow[j] * ppow[s - j]);
        }
    }
    return core;
}

} // namespace detail

// Coefficients of phi_delta(t, x; k) in powers of k.
inline OperatorSymbol symbol_phi_delta(double t, double x, double alpha, int M, int S = 360) {
    if (!(t > 0.0)) throw DomainError("symbol_phi_delta: t must be > 0");
    if (M < 1) throw DomainError("symbol_phi_delta: M must be >= 1");
    if (S < M) throw DomainError("symbol_phi_delta: series cutoff S must be >= M");
    auto core = detail::interaction_symbol_core(t, x, alpha, M, S, false);
    OperatorSymbol sym;
    sym.coeffs.resize(M + 1);
    sym.description = "delta interaction symbol";
    ComplexScalar pref = cis(x * x / (4.0 * t)) * (0.5 * alpha);
    for (int j = 0; j <= M; ++j)
        sym.coeffs[j] = pref * detail::quarter_root(-j) * core.series_part[j];
    return sym;
}

// Coefficients of phi_delta_prime(t, x; k) in powers of k.
inline OperatorSymbol symbol_phi_delta_prime(double t, double x, double beta, int M, int S = 360) {
    if (!(t > 0.0)) throw DomainError("symbol_phi_delta_prime: t must be > 0");
    if (x == 0.0) throw DomainError("symbol_phi_delta_prime: undefined at x = 0");
    if (M < 1) throw DomainError("symbol_phi_delta_prime: M must be >= 1");
    if (S < M) throw DomainError("symbol_phi_delta_prime: series cutoff S must be >= M");
    auto core = detail::interaction_symbol_core(t, x, beta, M, S, true);
    OperatorSymbol sym;
    sym.coeffs.resize(M + 1);
    sym.description = "delta-prime interaction symbol";
    double sg = x > 0.0 ? 1.0 : -1.0;
    ComplexScalar pref = cis(x * x / (4.0 * t)) * (0.5 * sg);
    for (int j = 0; j <= M; ++j)
        sym.coeffs[j] = pref * detail::quarter_root(-j) * (beta * core.series_part[j] + core.direct_part[j]);
    return sym;
}

// Composite symbol of the full evolved wave: free + phi(x) + phi(-x) with
// k -> -k on the reflected term realized as c_j -> (-1)^j c_j.
inline OperatorSymbol symbol_psi_pot(double t, double x, const PotentialSpec& pot, int M, int S = 360) {
    validate(pot);
    OperatorSymbol sym = symbol_psi_free(t, x, M);
    OperatorSymbol own = pot.kind == Potential::delta
        ? symbol_phi_delta(t, x, pot.strength, M, S)
        : symbol_phi_delta_prime(t, x, pot.strength, M, S);
    OperatorSymbol mirror = pot.kind == Potential::delta
        ? symbol_phi_delta(t, -x, pot.strength, M, S)
        : symbol_phi_delta_prime(t, -x, pot.strength, M, S);
    sym.description = pot.kind == Potential::delta ? "delta propagator symbol" : "delta-prime propagator symbol";
    for (int j = 0; j <= M; ++j) {
        ComplexScalar m = mirror.coeffs[j];
        if (j & 1) m = -m;
        sym.coeffs[j] += own.coeffs[j] + m;
    }
    return sym;
}

// U_pot applied to a series, evaluated at xi = 0.
inline ComplexScalar propagator_apply(double t, double x, const PotentialSpec& pot,
                                      const EntireFunctionSeries& f, int M = 120, int S = 360) {
    OperatorSymbol sym = symbol_psi_pot(t, x, pot, M, S);
    EntireFunctionSeries g = apply_operator(sym, f, 1);
    return g.coeffs[0];
}

// bound constants of the operator-norm estimates
inline double bound_constant_free(double B, double t, double x) {
    if (!(B >= 0.0)) throw DomainError("bound_constant_free: B must be >= 0");
    if (!(t > 0.0)) throw DomainError("bound_constant_free: t must be > 0");
    double e = B * std::fabs(x) + B * B * t;
    if (e > 709.0) throw RangeError("bound_constant_free: overflow");
    return std::exp(e);
}

inline double bound_constant_delta_plus(double B, double t, double x, double alpha) {
    if (!(B >= 0.0)) throw DomainError("bound_constant_delta_plus: B must be >= 0");
    if (!(t > 0.0)) throw DomainError("bound_constant_delta_plus: t must be > 0");
    double aa = std::fabs(alpha);
    if (aa + B == 0.0) throw DomainError("bound_constant_delta_plus: need |alpha| + B > 0");
    double st = std::sqrt(t);
    double q = std::fabs(x) / (2.0 * st);
    double l1 = lambda(ComplexScalar{-q - (2.0 * B + aa) * st, 0.0}).re;
    double l2 = lambda(ComplexScalar{-q - B * st, 0.0}).re;
    return 0.5 * aa * (l1 - l2) / ((aa + B) * st);
}

inline double bound_constant_deltaprime_one(double B, double t, double x) {
    if (!(B >= 0.0)) throw DomainError("bound_constant_deltaprime_one: B must be >= 0");
    if (!(t > 0.0)) throw DomainError("bound_constant_deltaprime_one: t must be > 0");
    double st = std::sqrt(t);
    double q = std::fabs(x) / (2.0 * st);
    return 0.5 * lambda(ComplexScalar{-q - B * st, 0.0}).re;
}

// Discrete moment gaps of a Fourier sum against the target plane wave:
//   gap_m = sum_j C_j k_j^m - k^m,
// carried in double-double; the implemented superposition minus its limit is
// then sum_m c_m gap_m for any evolved-wave symbol c.
inline std::vector<ComplexDD> superosc_moment_gaps(const FourierSum& f, double k, int M) {
    validate(f);
    if (M < 1) throw DomainError("superosc_moment_gaps: M must be >= 1");
    const std::size_t nt = f.terms.size();
    std::vector<dd> pw(nt, dd(1.0));
    dd kpow(1.0);
    dd kd(k);
    std::vector<ComplexDD> gaps(M + 1);
    for (int m = 0; m <= M; ++m) {
        ComplexDD acc{dd(0.0), dd(0.0)};
        for (std::size_t j = 0; j < nt; ++j) {
            const auto& term = f.terms[j];
            ComplexDD coeff{dd(term.c.re) + dd(term.c_err.re), dd(term.c.im) + dd(term.c_err.im)};
            acc += coeff * ComplexDD{pw[j], dd(0.0)};
            pw[j] = pw[j] * (dd(term.k) + dd(term.k_err));
        }
        acc.re -= kpow;
        gaps[m] = acc;
        kpow *= kd;
    }
    return gaps;
}

// sum_m c_m gap_m: the pointwise defect of the superposed wave, evaluated
// through the symbol route (the direct coefficient sum drowns in double
// precision long before n = 80).
inline ComplexScalar superposition_defect(double t, double x, const PotentialSpec& pot,
                                          const std::vector<ComplexDD>& gaps, int M, int S = 360) {
    if (static_cast<int>(gaps.size()) < M + 1)
        throw DomainError("superposition_defect: gaps shorter than symbol");
    OperatorSymbol sym = symbol_psi_pot(t, x, pot, M, S);
    ComplexDD acc{dd(0.0), dd(0.0)};
    for (int m = 0; m <= M; ++m) {
        ComplexDD c{dd(sym.coeffs[m].re), dd(sym.coeffs[m].im)};
        acc += c * gaps[m];
    }
    return round_to_double(acc);
}

} // namespace pointwave
