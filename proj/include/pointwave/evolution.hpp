#pragma once

#include <cmath>
#include <utility>

#include "pointwave/lambda.hpp"
#include "pointwave/superosc.hpp"

// Closed-form time evolution of plane waves under a delta or delta' point
// interaction at x = 0, written with the jump-condition conventions
//   delta :  psi continuous,  d_x psi(0+) - d_x psi(0-) = 2 a psi(0)
//   delta':  d_x psi continuous,  psi(0+) - psi(0-) = (2/b) d_x psi(0)
// All square roots are constructed explicitly: sqrt(it) = sqrt(t) e^{i pi/4},
// so e^{-x^2/(4it)} is the pure phase e^{i x^2/(4t)} and the Lambda arguments
// lie on the +-pi/4 rays where both evaluation branches are well conditioned.

namespace pointwave {

enum class Potential { delta, delta_prime };

struct PotentialSpec {
    Potential kind = Potential::delta;
    double strength = 1.0; // alpha for delta, beta for delta_prime
};

inline void validate(const PotentialSpec& p) {
    if (p.strength == 0.0 || !std::isfinite(p.strength))
        throw DomainError("PotentialSpec: strength must be finite and nonzero");
}

struct SpaceTimePoint {
    double t = 1.0;
    double x = 0.0;
};

inline void validate(const SpaceTimePoint& p) {
    if (!(p.t > 0.0) || !std::isfinite(p.t) || !std::isfinite(p.x))
        throw DomainError("SpaceTimePoint: requires finite x and t > 0");
}

using WaveValue = ComplexScalar;

// principal branch of sqrt(it) for t > 0
template <class R>
inline cplx<R> sqrt_it(R t) {
    if (!(to_double(t) > 0.0)) throw DomainError("sqrt_it: t must be > 0");
    R r = pw_sqrt(t);
    R h = R(dd_sqrt2_2.hi);
    if constexpr (!std::is_same_v<R, double>) h = dd_sqrt2_2;
    return {r * h, r * h};
}

template <class R>
inline cplx<R> psi_free(R t, R x, R k) {
    return cis(k * x - k * k * t);
}

namespace detail {

// shared pieces of the two interaction terms
template <class R>
struct PhiParts {
    cplx<R> root;    // sqrt(it)
    cplx<R> arg0;    // |x| / (2 sqrt(it))
    cplx<R> phase;   // e^{i x^2/(4t)}
};

template <class R>
inline PhiParts<R> phi_parts(R t, R x) {
    PhiParts<R> p;
    p.root = sqrt_it(t);
    R ax = pw_abs(x);
    // |x|/(2 sqrt(it)) = (|x|/(2 sqrt t)) e^{-i pi/4}
    R m = ax / (R(2.0) * pw_sqrt(t));
    R h = R(dd_sqrt2_2.hi);
    if constexpr (!std::is_same_v<R, double>) h = dd_sqrt2_2;
    p.arg0 = {m * h, -(m * h)};
    p.phase = cis(x * x / (R(4.0) * t));
    return p;
}

} // namespace detail

template <class R>
inline cplx<R> phi_delta(R t, R x, R k, double alpha, const LambdaEvalConfig& cfg) {
    if (alpha == 0.0) throw DomainError("phi_delta: alpha must be nonzero");
    auto parts = detail::phi_parts(t, x);
    cplx<R> a{R(alpha), R(0.0)};
    cplx<R> ik{R(0.0), k};
    cplx<R> u = parts.arg0 + cplx<R>{R(alpha), R(0.0)} * parts.root;
    cplx<R> v = parts.arg0 - ik * parts.root;
    cplx<R> pref = a / ((a + ik) * R(2.0));
    return pref * parts.phase * (lambda(u, cfg) - lambda(v, cfg));
}

template <class R>
inline cplx<R> phi_delta_prime(R t, R x, R k, double beta, const LambdaEvalConfig& cfg) {
    if (beta == 0.0) throw DomainError("phi_delta_prime: beta must be nonzero");
    if (to_double(x) == 0.0) throw DomainError("phi_delta_prime: undefined at x = 0");
    auto parts = detail::phi_parts(t, x);
    cplx<R> b{R(beta), R(0.0)};
    cplx<R> ik{R(0.0), k};
    cplx<R> u = parts.arg0 + b * parts.root;
    cplx<R> v = parts.arg0 - ik * parts.root;
    double sg = to_double(x) > 0.0 ? 0.5 : -0.5;
    cplx<R> pref = cplx<R>{R(sg), R(0.0)} / (b + ik);
    return pref * parts.phase * (b * lambda(u, cfg) + ik * lambda(v, cfg));
}

// psi_delta extends continuously to x = 0; psi_delta_prime does not.
template <class R>
inline cplx<R> psi_delta(R t, R x, R k, double alpha, const LambdaEvalConfig& cfg) {
    return psi_free(t, x, k) + phi_delta(t, x, k, alpha, cfg) + phi_delta(t, -x, -k, alpha, cfg);
}

template <class R>
inline cplx<R> psi_delta_prime(R t, R x, R k, double beta, const LambdaEvalConfig& cfg) {
    return psi_free(t, x, k) + phi_delta_prime(t, x, k, beta, cfg) + phi_delta_prime(t, -x, -k, beta, cfg);
}

template <class R>
inline cplx<R> psi_pot(R t, R x, R k, const PotentialSpec& pot, const LambdaEvalConfig& cfg) {
    validate(pot);
    if (pot.kind == Potential::delta) return psi_delta(t, x, k, pot.strength, cfg);
    return psi_delta_prime(t, x, k, pot.strength, cfg);
}

// double-precision front ends
inline WaveValue psi_free(const SpaceTimePoint& p, double k) {
    validate(p);
    return psi_free<double>(p.t, p.x, k);
}

inline WaveValue phi_delta(const SpaceTimePoint& p, double k, double alpha) {
    validate(p);
    return phi_delta<double>(p.t, p.x, k, alpha, default_lambda_config<double>());
}

inline WaveValue phi_delta_prime(const SpaceTimePoint& p, double k, double beta) {
    validate(p);
    return phi_delta_prime<double>(p.t, p.x, k, beta, default_lambda_config<double>());
}

inline WaveValue psi_delta(const SpaceTimePoint& p, double k, double alpha) {
    validate(p);
    return psi_delta<double>(p.t, p.x, k, alpha, default_lambda_config<double>());
}

inline WaveValue psi_delta_prime(const SpaceTimePoint& p, double k, double beta) {
    validate(p);
    return psi_delta_prime<double>(p.t, p.x, k, beta, default_lambda_config<double>());
}

inline WaveValue psi_pot(const SpaceTimePoint& p, double k, const PotentialSpec& pot) {
    validate(p);
    return psi_pot<double>(p.t, p.x, k, pot, default_lambda_config<double>());
}

// sum_j C_j psi(t, x; k_j), carried in double-double end to end: the C_j
// cancel catastrophically and the Lambda arguments sit on rays where the
// extended-precision series keeps its full accuracy.
inline WaveValue psi_superposed(const SpaceTimePoint& p, const FourierSum& f, const PotentialSpec& pot) {
    validate(p);
    validate(f);
    validate(pot);
    if (pot.kind == Potential::delta_prime && p.x == 0.0)
        throw DomainError("psi_superposed: delta_prime undefined at x = 0");
    const LambdaEvalConfig cfg = default_lambda_config<dd>();
    dd t(p.t), x(p.x);
    ComplexDD acc{dd(0.0), dd(0.0)};
    for (const auto& term : f.terms) {
        dd kj = dd(term.k) + dd(term.k_err);
        ComplexDD val = psi_pot<dd>(t, x, kj, pot, cfg);
        ComplexDD coeff{dd(term.c.re) + dd(term.c_err.re), dd(term.c.im) + dd(term.c_err.im)};
        acc += coeff * val;
    }
    return round_to_double(acc);
}

// large-time forms, without the O(1/t) remainder
inline WaveValue asymptotic_delta(const SpaceTimePoint& p, double k, double alpha) {
    validate(p);
    if (alpha == 0.0) throw DomainError("asymptotic_delta: alpha must be nonzero");
    double ak = std::fabs(k);
    ComplexScalar osc = cis(-k * k * p.t) *
        (cis(k * p.x) - ComplexScalar{alpha, 0.0} / ComplexScalar{alpha, -ak} * cis(std::fabs(k * p.x)));
    if (alpha < 0.0) {
        double w = 2.0 * alpha * alpha / (alpha * alpha + k * k);
        osc += ComplexScalar{w * std::exp(alpha * std::fabs(p.x)), 0.0} * cis(alpha * alpha * p.t);
    }
    return osc;
}

inline WaveValue asymptotic_delta_prime(const SpaceTimePoint& p, double k, double beta) {
    validate(p);
    if (beta == 0.0) throw DomainError("asymptotic_delta_prime: beta must be nonzero");
    if (p.x == 0.0) throw DomainError("asymptotic_delta_prime: undefined at x = 0");
    double ak = std::fabs(k);
    double sg = p.x > 0.0 ? 1.0 : -1.0;
    ComplexScalar osc = cis(-k * k * p.t) *
        (cis(k * p.x) + ComplexScalar{0.0, k * sg} / ComplexScalar{beta, -ak} * cis(std::fabs(k * p.x)));
    if (beta < 0.0) {
        ComplexScalar w = ComplexScalar{0.0, -2.0 * beta * k * sg / (beta * beta + k * k)};
        osc += w * ComplexScalar{std::exp(beta * std::fabs(p.x)), 0.0} * cis(beta * beta * p.t);
    }
    return osc;
}

inline WaveValue asymptotic_pot(const SpaceTimePoint& p, double k, const PotentialSpec& pot) {
    validate(pot);
    if (pot.kind == Potential::delta) return asymptotic_delta(p, k, pot.strength);
    return asymptotic_delta_prime(p, k, pot.strength);
}

// time evolution of the negative-energy eigenfunctions (attractive case)
inline WaveValue bound_state_delta(const SpaceTimePoint& p, double alpha) {
    validate(p);
    return ComplexScalar{std::exp(alpha * std::fabs(p.x)), 0.0} * cis(alpha * alpha * p.t);
}

inline WaveValue bound_state_delta_prime(const SpaceTimePoint& p, double beta) {
    validate(p);
    if (p.x == 0.0) throw DomainError("bound_state_delta_prime: undefined at x = 0");
    double sg = p.x > 0.0 ? 1.0 : -1.0;
    return ComplexScalar{sg * std::exp(beta * std::fabs(p.x)), 0.0} * cis(beta * beta * p.t);
}

// |i D_t psi + D_xx psi| with centered 4th-order stencils on the analytic
// solution; order-4 decay distinguishes discretization error from the
// Lambda noise floor.
template <class F>
inline double pde_residual_of(F&& psi, const SpaceTimePoint& p, double h_x, double h_t) {
    validate(p);
    if (!(h_x > 0.0) || !(h_t > 0.0)) throw DomainError("pde_residual: step sizes must be > 0");
    if (!(std::fabs(p.x) > 4.0 * h_x))
        throw DomainError("pde_residual: spatial stencil would straddle the interface (need |x| > 4 h_x)");
    if (!(p.t - 2.0 * h_t > 0.0))
        throw DomainError("pde_residual: temporal stencil reaches t <= 0 (need t > 2 h_t)");
    auto at = [&](double t, double x) { return psi(t, x); };
    ComplexScalar fm2 = at(p.t, p.x - 2 * h_x), fm1 = at(p.t, p.x - h_x), f0 = at(p.t, p.x);
    ComplexScalar fp1 = at(p.t, p.x + h_x), fp2 = at(p.t, p.x + 2 * h_x);
    ComplexScalar dxx = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h_x * h_x);
    ComplexScalar gm2 = at(p.t - 2 * h_t, p.x), gm1 = at(p.t - h_t, p.x);
    ComplexScalar gp1 = at(p.t + h_t, p.x), gp2 = at(p.t + 2 * h_t, p.x);
    ComplexScalar dt = (gm2 - 8.0 * gm1 + 8.0 * gp1 - gp2) / (12.0 * h_t);
    ComplexScalar resid = ComplexScalar{0.0, 1.0} * dt + dxx;
    return cx_abs(resid);
}

inline double pde_residual(const SpaceTimePoint& p, double k, const PotentialSpec& pot, double h_x, double h_t) {
    validate(pot);
    return pde_residual_of([&](double t, double x) {
        return psi_pot(SpaceTimePoint{t, x}, k, pot);
    }, p, h_x, h_t);
}

struct JumpResiduals {
    double continuity = 0.0; // delta: value continuity; delta': derivative continuity
    double jump = 0.0;       // residual of the strength-coupled jump equation
};

namespace detail {

// One-sided value/derivative limits at the interface from samples at
// +-{h/2, h, 3h/2, 2h, 3h}: 3-point one-sided stencils Richardson-
// extrapolated once (value error O(h^4), derivative error O(h^3)).
template <class F>
inline void one_sided_limits(F&& psi, double sign, double h, ComplexScalar& value, ComplexScalar& deriv) {
    auto at = [&](double m) { return psi(sign * m * h); };
    ComplexScalar f05 = at(0.5), f1 = at(1.0), f15 = at(1.5), f2 = at(2.0), f3 = at(3.0);
    ComplexScalar v_h = 3.0 * f1 - 3.0 * f2 + f3;
    ComplexScalar v_h2 = 3.0 * f05 - 3.0 * f1 + f15;
    value = (8.0 * v_h2 - v_h) / 7.0;
    double s = sign * h;
    ComplexScalar d_h = (-2.5 * f1 + 4.0 * f2 - 1.5 * f3) / s;
    ComplexScalar d_h2 = (-2.5 * f05 + 4.0 * f1 - 1.5 * f15) / (0.5 * s);
    deriv = (4.0 * d_h2 - d_h) / 3.0;
}

} // namespace detail

inline JumpResiduals jump_residuals(double t, double k, const PotentialSpec& pot, double h) {
    validate(pot);
    if (!(t > 0.0)) throw DomainError("jump_residuals: t must be > 0");
    if (!(h > 0.0)) throw DomainError("jump_residuals: h must be > 0");
    auto psi = [&](double x) { return psi_pot(SpaceTimePoint{t, x}, k, pot); };
    ComplexScalar vp, dp, vm, dm;
    detail::one_sided_limits(psi, +1.0, h, vp, dp);
    detail::one_sided_limits(psi, -1.0, h, vm, dm);
    JumpResiduals r;
    if (pot.kind == Potential::delta) {
        ComplexScalar at0 = psi_delta(SpaceTimePoint{t, 0.0}, k, pot.strength);
        r.continuity = cx_abs(vp - vm);
        r.jump = cx_abs(dp - dm - 2.0 * pot.strength * at0);
    } else {
        ComplexScalar dmid = (dp + dm) * 0.5;
        r.continuity = cx_abs(dp - dm);
        r.jump = cx_abs(vp - vm - (2.0 / pot.strength) * dmid);
    }
    return r;
}

} // namespace pointwave
