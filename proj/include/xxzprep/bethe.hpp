#pragma once

// Bethe equations for the XXZ chain, real-momentum solutions only.
//
// Quantum numbers I_i (integers for M odd, half-integers for M even) are kept
// as doubled integers so they stay exact.  Momenta solve
//
//   L k_i = 2 pi I_i + sum_j Theta(k_i, k_j)
//
// by damped fixed-point iteration from the free-limit guess k_i = 2 pi I_i / L.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "model.hpp"

namespace xxzprep {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Two-magnon scattering phase
//
//   Theta(k_i, k_j) = 2 atan2( D sin((k_i-k_j)/2), D cos((k_i-k_j)/2) - cos((k_i+k_j)/2) )
//
// reduced to the principal interval (-pi, pi].  The principal reduction makes
// Theta 2pi-periodic in each argument and keeps the quantum-number labels in
// the canonical window (-L/2, L/2]; the unreduced two-argument branch shifts
// I by +-1 whenever the denominator goes negative, which would push the
// textbook labelings (and the L=4, M=2 reference solution) out of that window.
inline double scattering_phase(double k_i, double k_j, double delta) {
    if (!std::isfinite(k_i) || !std::isfinite(k_j) || !std::isfinite(delta))
        throw ValidationError("scattering_phase: non-finite input");
    const double u = 0.5 * (k_i - k_j);
    const double v = 0.5 * (k_i + k_j);
    const double num = delta * std::sin(u);
    const double den = delta * std::cos(u) - std::cos(v);
    if (std::abs(num) < 1e-14 && std::abs(den) < 1e-14)
        throw SingularPairError("scattering_phase: degenerate pair, numerator and denominator both vanish");
    if (num == 0.0) return 0.0;
    double t = 2.0 * std::atan2(num, den);
    if (t > std::numbers::pi) t -= two_pi;
    else if (t <= -std::numbers::pi) t += two_pi;
    return t;
}

struct SolverOptions {
    double damping = 0.5;
    double tol = 1e-12;
    int max_iter = 10000;
    double collision_tol = 1e-10;
};

struct BetheSolution {
    ModelParams params;
    std::vector<int> twice_quantum_numbers;  // 2*I_i, parity fixed by M
    std::vector<double> momenta;             // wrapped into [0, 2pi)
    std::vector<std::vector<double>> theta;  // Theta(k_i, k_j), antisymmetric
    bool converged = false;
    double residual = 0.0;

    double quantum_number(std::size_t i) const { return 0.5 * twice_quantum_numbers[i]; }
};

inline double wrap_momentum(double k) {
    double w = std::fmod(k, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w = 0.0;
    return w;
}

// Distance between momenta on the circle.
inline double circular_distance(double a, double b) {
    return std::abs(std::remainder(a - b, two_pi));
}

namespace detail {
inline void check_quantum_numbers(const ModelParams& p, const std::vector<int>& twice_I) {
    if (static_cast<int>(twice_I.size()) != p.M)
        throw ValidationError("solve_bethe: need exactly M quantum numbers");
    const int want_parity = (p.M % 2 == 1) ? 0 : 1;  // 2I even for M odd, odd for M even
    for (int t : twice_I)
        if (((t % 2) + 2) % 2 != want_parity)
            throw ValidationError("solve_bethe: quantum-number parity does not match M");
    for (std::size_t i = 0; i < twice_I.size(); ++i)
        for (std::size_t j = i + 1; j < twice_I.size(); ++j)
            if (twice_I[i] == twice_I[j])
                throw ValidationError("solve_bethe: quantum numbers must be distinct");
}
}  // namespace detail

inline BetheSolution solve_bethe(const ModelParams& p, const std::vector<int>& twice_I,
                                 const SolverOptions& opt = {}) {
    p.validate();
    detail::check_quantum_numbers(p, twice_I);
    const int M = p.M;
    const double delta = p.delta();

    std::vector<double> k(M);
    for (int i = 0; i < M; ++i) k[i] = std::numbers::pi * twice_I[i] / p.L;

    auto theta_at = [&](const std::vector<double>& kk) {
        std::vector<std::vector<double>> th(M, std::vector<double>(M, 0.0));
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j)
                if (i != j) th[i][j] = scattering_phase(kk[i], kk[j], delta);
        return th;
    };

    double residual = 0.0;
    bool converged = false;
    std::vector<std::vector<double>> th;
    for (int it = 0; it < opt.max_iter; ++it) {
        th = theta_at(k);
        residual = 0.0;
        std::vector<double> rhs(M);
        for (int i = 0; i < M; ++i) {
            double s = 0.0;
            for (int j = 0; j < M; ++j) s += th[i][j];
            rhs[i] = (std::numbers::pi * twice_I[i] + s) / p.L;
            residual = std::max(residual, std::abs(p.L * (k[i] - rhs[i])));
        }
        if (residual <= opt.tol) {
            converged = true;
            break;
        }
        for (int i = 0; i < M; ++i) k[i] = (1.0 - opt.damping) * k[i] + opt.damping * rhs[i];
    }

    BetheSolution sol;
    sol.params = p;
    sol.twice_quantum_numbers = twice_I;
    sol.momenta.resize(M);
    for (int i = 0; i < M; ++i) sol.momenta[i] = wrap_momentum(k[i]);
    sol.theta = theta_at(sol.momenta);
    sol.converged = converged;
    sol.residual = residual;

    if (converged) {
        for (int i = 0; i < M; ++i)
            for (int j = i + 1; j < M; ++j)
                if (circular_distance(sol.momenta[i], sol.momenta[j]) < opt.collision_tol)
                    throw DegenerateSolutionError("solve_bethe: momenta coincide, Bethe state vanishes");
    }
    return sol;
}

// All parity-correct quantum numbers with I in (-L/2, L/2], as doubled ints.
inline std::vector<int> valid_twice_quantum_numbers(const ModelParams& p) {
    std::vector<int> vals;
    const int lo = -p.L, hi = p.L;  // doubled window (-L, L]
    for (int t = lo + 1; t <= hi; ++t) {
        const bool half = ((t % 2) + 2) % 2 == 1;
        if ((p.M % 2 == 0) == half) vals.push_back(t);
    }
    return vals;
}

// Solve for every distinct parity-correct I-set; keep converged, non-degenerate
// solutions, deduplicated by the sorted wrapped momenta.
struct EnumerationResult {
    std::vector<BetheSolution> solutions;
    int attempted = 0;
    int failed = 0;     // non-converged
    int degenerate = 0;
};

inline EnumerationResult enumerate_solutions(const ModelParams& p, const SolverOptions& opt = {}) {
    p.validate();
    EnumerationResult out;
    const std::vector<int> vals = valid_twice_quantum_numbers(p);
    std::vector<int> pick(p.M);
    std::vector<std::vector<double>> seen;

    auto is_dup = [&](const std::vector<double>& ks) {
        for (const auto& s : seen) {
            double d = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i)
                d = std::max(d, circular_distance(s[i], ks[i]));
            if (d < 1e-8) return true;
        }
        return false;
    };

    const int n = static_cast<int>(vals.size());
    std::vector<int> idx(p.M);
    for (int i = 0; i < p.M; ++i) idx[i] = i;
    if (p.M == 0) return out;
    while (true) {
        for (int i = 0; i < p.M; ++i) pick[i] = vals[idx[i]];
        ++out.attempted;
        try {
            BetheSolution sol = solve_bethe(p, pick, opt);
            if (!sol.converged) {
                ++out.failed;
            } else {
                std::vector<double> ks = sol.momenta;
                std::sort(ks.begin(), ks.end());
                // values a hair under 2pi are the same momentum as 0
                if (!ks.empty() && two_pi - ks.back() < 1e-8) {
                    ks.back() = 0.0;
                    std::sort(ks.begin(), ks.end());
                }
                if (!is_dup(ks)) {
                    seen.push_back(ks);
                    out.solutions.push_back(std::move(sol));
                }
            }
        } catch (const DegenerateSolutionError&) {
            ++out.degenerate;
        }
        int i = p.M - 1;
        while (i >= 0 && idx[i] == n - p.M + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < p.M; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

}  // namespace xxzprep
