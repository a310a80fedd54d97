#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include "pointwave/evolution.hpp"

// Gaussian wave packets as quadrature superpositions of the evolved plane
// waves.  The plane-wave solutions are not square-integrable; packets are
// the bridge that makes an independent finite-difference cross-check
// possible on a bounded domain.

namespace pointwave {

struct PacketSpec {
    double k0 = 2.0;   // carrier wavenumber
    double sigma = 0.5; // Gaussian width
    double x0 = -3.0;  // center
};

inline void validate(const PacketSpec& p) {
    if (!(p.sigma > 0.0)) throw DomainError("PacketSpec: sigma must be > 0");
    if (!(std::fabs(p.x0) >= 4.0 * p.sigma))
        throw DomainError("PacketSpec: need |x0| >= 4 sigma so the packet clears the interface");
    if (!std::isfinite(p.k0)) throw DomainError("PacketSpec: k0 must be finite");
}

// g(x) = exp(i k0 x - (x - x0)^2 / (2 sigma^2))
inline ComplexScalar packet_initial(const PacketSpec& p, double x) {
    double d = x - p.x0;
    double env = std::exp(-d * d / (2.0 * p.sigma * p.sigma));
    return cis(p.k0 * x) * env;
}

struct GaussHermiteRule {
    std::vector<double> nodes;   // ascending
    std::vector<double> weights; // against e^{-u^2} du; underflowed entries are 0
};

namespace detail {

// eigenvalues of the Hermite Jacobi matrix (diag 0, off-diag sqrt(k/2))
// below lambda, by the LDL^T sign count; exact bracketing, no convergence
// traps
inline int hermite_count_below(int n, double lambda) {
    double q = -lambda;
    int cnt = q < 0.0 ? 1 : 0;
    for (int k = 1; k < n; ++k) {
        double d = q;
        if (std::fabs(d) < 1e-300) d = d < 0.0 ? -1e-300 : 1e-300;
        q = -lambda - 0.5 * k / d;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

struct HermitePass {
    double value = 0.0;     // h_n, scaled by 2^{-offset}
    double prev = 0.0;      // h_{n-1}, same scale
    double log_weight = 0.0; // ln of the Christoffel weight 1 / sum h_k^2
};

// One sweep of the orthonormal recurrence with power-of-two rescaling; the
// magnitudes reach e^{x^2/2} far outside double range for large n, so the
// state carries a shared binary exponent.
inline HermitePass hermite_pass(int n, double x) {
    double p0 = 0.0, p1 = 0.7511255444649425; // pi^{-1/4}
    double ssum = p1 * p1;
    long offset = 0;
    for (int k = 0; k < n; ++k) {
        double p2 = x * std::sqrt(2.0 / (k + 1)) * p1 - std::sqrt(static_cast<double>(k) / (k + 1)) * p0;
        p0 = p1;
        p1 = p2;
        ssum += p1 * p1;
        if (std::fabs(p1) > 1e120) {
            // keep p1^2 and the accumulated sum inside double range
            p0 = std::ldexp(p0, -400);
            p1 = std::ldexp(p1, -400);
            ssum = std::ldexp(ssum, -800);
            offset += 400;
        }
    }
    HermitePass r;
    r.value = p1;
    r.prev = p0;
    // Christoffel sum runs over k = 0..n-1; h_n^2 was folded in above
    r.log_weight = -(std::log(ssum - p1 * p1) + 2.0 * static_cast<double>(offset) * dd_ln2.hi);
    return r;
}

// Bisection on the Sturm count for every node whose weight is representable
// (|u| <= 28.5 covers e^{-u^2} down past underflow), two Newton polish
// steps, Christoffel weights.  Nodes beyond the window get WKB placeholder
// positions and exact zero weights.
inline GaussHermiteRule gauss_hermite_compute(int n) {
    GaussHermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const double turning = std::sqrt(2.0 * n + 1.0);
    const double window = std::min(turning + 1.0, 28.5);
    const int c0 = hermite_count_below(n, -window); // symmetric count above +window
    const int mid = (n - 1) / 2;
    double prev_root = -window;
    for (int j = c0; j <= mid; ++j) {
        double lo = prev_root, hi = window;
        for (int it = 0; it < 60 && hi - lo > 1e-15 * (1.0 + std::fabs(lo)); ++it) {
            double m = 0.5 * (lo + hi);
            if (hermite_count_below(n, m) <= j) lo = m;
            else hi = m;
        }
        double x = 0.5 * (lo + hi);
        HermitePass hp{};
        for (int polish = 0; polish < 2; ++polish) {
            hp = hermite_pass(n, x);
            double deriv = std::sqrt(2.0 * n) * hp.prev;
            if (deriv != 0.0) {
                double dx = hp.value / deriv;
                if (std::fabs(dx) < 1e-3) x -= dx;
            }
        }
        hp = hermite_pass(n, x);
        double w = hp.log_weight < -745.0 ? 0.0 : std::exp(hp.log_weight);
        prev_root = x;
        if (n % 2 == 1 && j == mid) x = 0.0; // exact center
        rule.nodes[j] = x;
        rule.weights[j] = w;
        rule.nodes[n - 1 - j] = -x;
        rule.weights[n - 1 - j] = w;
    }
    // placeholder positions outside the representable-weight window
    for (int j = c0 - 1; j >= 0; --j) {
        double gap = (turning + 1.0 - window) / std::max(1, c0);
        double x = -window - (c0 - j) * gap;
        rule.nodes[j] = x;
        rule.nodes[n - 1 - j] = -x;
    }
    return rule;
}

inline const GaussHermiteRule& gauss_hermite(int n) {
    if (n < 1) throw DomainError("gauss_hermite: n must be >= 1");
    static std::map<int, GaussHermiteRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_hermite_compute(n)).first;
    return it->second;
}

// shared quadrature loop: kernel(k_i) is the evolved plane wave at the point
template <typename Kernel>
ComplexScalar packet_quadrature(const PacketSpec& packet, int n_quad, Kernel&& kernel) {
    const GaussHermiteRule& rule = gauss_hermite(n_quad);
    const double inv_sqrt_pi = dd_inv_sqrt_pi.hi;
    const double scale = dd_sqrt2_2.hi * 2.0 / packet.sigma; // sqrt(2)/sigma
    dd acc_re(0.0), acc_im(0.0);
    for (int i = 0; i < n_quad; ++i) {
        double w = rule.weights[i];
        if (w == 0.0) continue;
        double u = rule.nodes[i];
        double k = packet.k0 + scale * u;
        ComplexScalar v = kernel(k) * cis(-(k - packet.k0) * packet.x0) * w;
        acc_re += dd(v.re);
        acc_im += dd(v.im);
    }
    return {to_double(acc_re) * inv_sqrt_pi, to_double(acc_im) * inv_sqrt_pi};
}

} // namespace detail

// closed-form free evolution of the Gaussian packet
inline ComplexScalar free_packet_closed(const SpaceTimePoint& p, const PacketSpec& packet) {
    validate(p);
    validate(packet);
    const double s2 = packet.sigma * packet.sigma;
    const double d = p.x - packet.x0 - 2.0 * packet.k0 * p.t;
    std::complex<double> spread(1.0, 2.0 * p.t / s2);
    std::complex<double> arg = -d * d / (2.0 * s2 * spread);
    std::complex<double> v = std::exp(arg) / std::sqrt(spread);
    ComplexScalar carrier = cis(packet.k0 * p.x - packet.k0 * packet.k0 * p.t);
    return carrier * ComplexScalar{v.real(), v.imag()};
}

// quadrature value without the convergence check; compare() uses this on the
// bulk grid and verifies doubling at sentinel points instead
inline ComplexScalar packet_value_raw(const SpaceTimePoint& p, const PacketSpec& packet,
                                      const PotentialSpec& pot, int n_quad) {
    validate(p);
    validate(packet);
    validate(pot);
    if (n_quad < 32) throw DomainError("packet reference: n_quad must be >= 32");
    return detail::packet_quadrature(packet, n_quad,
                                     [&](double k) { return psi_pot(p, k, pot); });
}

inline ComplexScalar packet_value_raw_free(const SpaceTimePoint& p, const PacketSpec& packet, int n_quad) {
    validate(p);
    validate(packet);
    if (n_quad < 32) throw DomainError("packet reference: n_quad must be >= 32");
    return detail::packet_quadrature(packet, n_quad,
                                     [&](double k) { return psi_free(p, k); });
}

// evolved packet under the point interaction, with a node-doubling
// convergence certificate
inline ComplexScalar analytic_packet_reference(const SpaceTimePoint& p, const PacketSpec& packet,
                                               const PotentialSpec& pot, int n_quad = 4096) {
    ComplexScalar v1 = packet_value_raw(p, packet, pot, n_quad);
    ComplexScalar v2 = packet_value_raw(p, packet, pot, 2 * n_quad);
    if (cx_abs(v2 - v1) > 1e-8 * (1.0 + cx_abs(v2)))
        throw AccuracyError("analytic_packet_reference: quadrature not converged under node doubling");
    return v2;
}

inline ComplexScalar analytic_packet_reference_free(const SpaceTimePoint& p, const PacketSpec& packet,
                                                    int n_quad = 4096) {
    ComplexScalar v1 = packet_value_raw_free(p, packet, n_quad);
    ComplexScalar v2 = packet_value_raw_free(p, packet, 2 * n_quad);
    if (cx_abs(v2 - v1) > 1e-8 * (1.0 + cx_abs(v2)))
        throw AccuracyError("analytic_packet_reference: quadrature not converged under node doubling");
    return v2;
}

} // namespace pointwave
