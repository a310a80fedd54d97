#pragma once

#include <cmath>
#include <vector>

#include "pointwave/packet.hpp"
#include "pointwave/threads.hpp"

// Crank-Nicolson finite differences for i dPsi/dt = -Psi_xx on [-L, L] with
// Dirichlet walls and the point interaction imposed between the two middle
// grid points by ghost-value elimination.  The grid is staggered so that
// x = 0 falls halfway between nodes n_x/2 - 1 and n_x/2; both interface
// couplings come out symmetric, so H is self-adjoint and CN is exactly
// unitary for either interaction.

namespace pointwave {

struct FdGrid {
    double L = 40.0;
    int n_x = 4096;
    double dt = 2.5e-4;
    int n_t = 4000;
};

inline void validate(const FdGrid& g) {
    if (!(g.L > 0.0)) throw DomainError("FdGrid: L must be > 0");
    if (g.n_x < 2 || g.n_x % 2 != 0) throw DomainError("FdGrid: n_x must be even and >= 2");
    if (!(g.dt > 0.0)) throw DomainError("FdGrid: dt must be > 0");
    if (g.n_t < 1) throw DomainError("FdGrid: n_t must be >= 1");
}

inline double grid_h(const FdGrid& g) { return 2.0 * g.L / (g.n_x + 1); }
inline double grid_point(const FdGrid& g, int i) { return -g.L + (i + 1) * grid_h(g); }

inline std::vector<double> grid_points(const FdGrid& g) {
    validate(g);
    std::vector<double> xs(g.n_x);
    for (int i = 0; i < g.n_x; ++i) xs[i] = grid_point(g, i);
    return xs;
}

inline double l2_norm(const std::vector<ComplexScalar>& state, double h) {
    dd acc(0.0);
    for (const auto& v : state) acc += dd(cx_norm2(v));
    return std::sqrt(h * to_double(acc));
}

// Symmetric tridiagonal H = -Laplacian with the interface built in, plus the
// frozen LU factorization of I + i (dt/2) H.
class CrankNicolsonSolver {
public:
    CrankNicolsonSolver(const FdGrid& grid, const PotentialSpec& pot) : grid_(grid) {
        validate(grid);
        validate(pot);
        const int n = grid.n_x;
        const double h = grid_h(grid);
        const double ih2 = 1.0 / (h * h);
        diag_.assign(n, 2.0 * ih2);
        off_.assign(n - 1, -ih2);
        const int m = n / 2;
        const double s = pot.strength;
        const double denom = 2.0 + s * h;
        if (std::fabs(denom) < 1e-8)
            throw RangeError("CrankNicolsonSolver: interface coupling is singular at this resolution");
        if (pot.kind == Potential::delta) {
            diag_[m - 1] = diag_[m] = (2.0 + s * h / denom) * ih2;
            off_[m - 1] = -2.0 * ih2 / denom;
        } else {
            diag_[m - 1] = diag_[m] = (2.0 - 2.0 / denom) * ih2;
            off_[m - 1] = -s / (denom * h);
        }
        factorize();
    }

    const FdGrid& grid() const { return grid_; }

    // Thomas with the precomputed factors; O(n_x) per call
    void step(std::vector<ComplexScalar>& state) const {
        const int n = grid_.n_x;
        if (static_cast<int>(state.size()) != n)
            throw DomainError("CrankNicolsonSolver: state length does not match grid");
        const double r = 0.5 * grid_.dt;
        rhs_.resize(n);
        for (int i = 0; i < n; ++i) {
            // (I - i r H) state
            ComplexScalar hv = state[i] * diag_[i];
            if (i > 0) hv += state[i - 1] * off_[i - 1];
            if (i < n - 1) hv += state[i + 1] * off_[i];
            rhs_[i] = state[i] - ComplexScalar{-r * hv.im, r * hv.re};
        }
        // forward sweep
        rhs_[0] = rhs_[0] * inv_d_[0];
        for (int i = 1; i < n; ++i)
            rhs_[i] = (rhs_[i] - sub_[i - 1] * rhs_[i - 1]) * inv_d_[i];
        // back substitution
        state[n - 1] = rhs_[n - 1];
        for (int i = n - 2; i >= 0; --i)
            state[i] = rhs_[i] - sup_[i] * state[i + 1];
    }

    void evolve(std::vector<ComplexScalar>& state, int steps) const {
        for (int s = 0; s < steps; ++s) step(state);
    }

    const std::vector<double>& hamiltonian_diag() const { return diag_; }
    const std::vector<double>& hamiltonian_off() const { return off_; }

private:
    void factorize() {
        const int n = grid_.n_x;
        const double r = 0.5 * grid_.dt;
        inv_d_.resize(n);
        sub_.resize(n - 1);
        sup_.resize(n - 1);
        for (int i = 0; i < n; ++i) {
            ComplexScalar a{1.0, r * diag_[i]};
            if (i > 0) {
                ComplexScalar c{0.0, r * off_[i - 1]};
                sub_[i - 1] = c;
                a -= c * sup_[i - 1]; // a_i - c_{i-1} * c'_{i-1}
            }
            if (cx_abs(a) == 0.0) throw RangeError("CrankNicolsonSolver: singular factorization");
            inv_d_[i] = ComplexScalar{1.0, 0.0} / a;
            if (i < n - 1) sup_[i] = ComplexScalar{0.0, r * off_[i]} * inv_d_[i];
        }
    }

    FdGrid grid_;
    std::vector<double> diag_, off_;
    std::vector<ComplexScalar> inv_d_, sub_, sup_;
    mutable std::vector<ComplexScalar> rhs_;
};

// single CN step as a pure function
inline std::vector<ComplexScalar> step_crank_nicolson(const std::vector<ComplexScalar>& state,
                                                      const FdGrid& grid, const PotentialSpec& pot) {
    CrankNicolsonSolver solver(grid, pot);
    std::vector<ComplexScalar> out = state;
    solver.step(out);
    return out;
}

// One-sided quadratic extrapolation of value and derivative to x = 0 from
// each half, then residuals of the interaction's jump conditions.  Both are
// O(h^2) for the ghost scheme; tests slope-check them under refinement.
inline JumpResiduals fd_interface_residuals(const std::vector<ComplexScalar>& state,
                                            const FdGrid& grid, const PotentialSpec& pot) {
    validate(grid);
    validate(pot);
    if (static_cast<int>(state.size()) != grid.n_x || grid.n_x < 6)
        throw DomainError("fd_interface_residuals: need n_x >= 6 matching state");
    const int m = grid.n_x / 2;
    const double h = grid_h(grid);
    ComplexScalar vm = state[m - 1] * (15.0 / 8.0) - state[m - 2] * (5.0 / 4.0) + state[m - 3] * (3.0 / 8.0);
    ComplexScalar vp = state[m] * (15.0 / 8.0) - state[m + 1] * (5.0 / 4.0) + state[m + 2] * (3.0 / 8.0);
    ComplexScalar dm = (state[m - 1] * 2.0 - state[m - 2] * 3.0 + state[m - 3]) / h;
    ComplexScalar dp = (state[m] * -2.0 + state[m + 1] * 3.0 - state[m + 2]) / h;
    JumpResiduals r;
    if (pot.kind == Potential::delta) {
        ComplexScalar mid = (vp + vm) * 0.5;
        r.continuity = cx_abs(vp - vm);
        r.jump = cx_abs(dp - dm - mid * (2.0 * pot.strength));
    } else {
        ComplexScalar dmid = (dp + dm) * 0.5;
        r.continuity = cx_abs(dp - dm);
        r.jump = cx_abs(vp - vm - dmid * (2.0 / pot.strength));
    }
    return r;
}

// Evolves the packet with CN and measures the sup difference against the
// quadrature reference over |x| <= L/2 at the final time.  Three sentinel
// points get the full node-doubling certificate; wall amplitudes are
// monitored so domain truncation cannot silently pollute the comparison.
inline double compare(const FdGrid& grid, const PacketSpec& packet, const PotentialSpec& pot,
                      int n_quad = 4096, int threads = 0) {
    validate(grid);
    validate(packet);
    validate(pot);
    const double h = grid_h(grid);
    if (!(h <= packet.sigma / 5.0))
        throw DomainError("compare: grid too coarse for the packet (need h <= sigma/5)");
    if (!(grid.dt <= 2.0 * h * h))
        throw DomainError("compare: time step too large (need dt <= 2 h^2)");

    CrankNicolsonSolver solver(grid, pot);
    std::vector<ComplexScalar> state(grid.n_x);
    for (int i = 0; i < grid.n_x; ++i) state[i] = packet_initial(packet, grid_point(grid, i));

    auto wall_check = [&]() {
        double peak = 0.0;
        for (const auto& v : state) peak = std::max(peak, cx_abs(v));
        double wall = 0.0;
        for (int i = 0; i < 16; ++i) {
            wall = std::max(wall, cx_abs(state[i]));
            wall = std::max(wall, cx_abs(state[grid.n_x - 1 - i]));
        }
        if (wall > 1e-6 * peak)
            throw AccuracyError("compare: packet reached the walls; enlarge L or shorten T");
    };
    wall_check();
    for (int s = 0; s < grid.n_t; ++s) {
        solver.step(state);
        if ((s + 1) % 500 == 0) wall_check();
    }
    wall_check();

    const double T = grid.dt * grid.n_t;
    std::vector<int> interior;
    interior.reserve(grid.n_x);
    for (int i = 0; i < grid.n_x; ++i)
        if (std::fabs(grid_point(grid, i)) <= 0.5 * grid.L) interior.push_back(i);

    std::vector<double> err(interior.size());
    parallel_for(interior.size(), threads, [&](std::size_t j) {
        int i = interior[j];
        SpaceTimePoint p{T, grid_point(grid, i)};
        ComplexScalar ref = packet_value_raw(p, packet, pot, n_quad);
        err[j] = cx_abs(state[i] - ref);
    });

    // convergence certificate at the packet center and two flanks
    const double xc = packet.x0 + 2.0 * packet.k0 * T;
    for (double xs : {xc, xc - 2.0 * packet.sigma, xc + 2.0 * packet.sigma}) {
        double target = std::min(std::max(xs, -0.5 * grid.L), 0.5 * grid.L);
        int best = interior.front();
        for (int i : interior)
            if (std::fabs(grid_point(grid, i) - target) < std::fabs(grid_point(grid, best) - target)) best = i;
        SpaceTimePoint p{T, grid_point(grid, best)};
        (void)analytic_packet_reference(p, packet, pot, n_quad);
    }

    double sup = 0.0;
    for (double e : err) sup = std::max(sup, e);
    return sup;
}

} // namespace pointwave
