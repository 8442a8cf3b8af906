#pragma once

// Classical oracle for the Bethe wavefunction
//
//   psi(x_1..x_M) = sum_P A_P exp(i sum_j k_{P(j)} x_j),   x_1 < ... < x_M.
//
// A_I = 1 and each adjacent transposition that moves a value a in front of a
// value b (a > b) multiplies by -exp(+i Theta(k_a, k_b)).  The sign of the
// exponent is fixed by requiring consistency with the quantization condition
// L k_i = 2 pi I_i + sum_j Theta(k_i, k_j): with it, psi is an eigenstate of
// the sector Hamiltonian to machine precision.  Since the factors are scalars
// and Theta is antisymmetric, the product depends only on the inversion set
// of P, not on the decomposition, so A_P is a product over inversions.

#include <map>
#include <vector>

#include "bethe.hpp"
#include "model.hpp"

namespace xxzprep {

using Permutation = std::vector<int>;  // values 1..M, by position

// Phase angle picked up when value a passes in front of value b (a > b):
// the branch factor is exp(i * ap_swap_angle).  Shared by the oracle and the
// circuit builder so the two cannot drift apart.
inline double ap_swap_angle(const BetheSolution& sol, int a, int b) {
    return scattering_phase(sol.momenta[a - 1], sol.momenta[b - 1], sol.params.delta()) +
           std::numbers::pi;
}

inline std::vector<Permutation> all_permutations(int M) {
    Permutation p(M);
    for (int i = 0; i < M; ++i) p[i] = i + 1;
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline cplx ap_phase(const BetheSolution& sol, const Permutation& perm) {
    cplx a{1.0, 0.0};
    const int M = static_cast<int>(perm.size());
    for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j)
            if (perm[i] > perm[j])
                a *= std::polar(1.0, ap_swap_angle(sol, perm[i], perm[j]));
    return a;
}

struct ExactBetheState {
    BetheSolution solution;
    std::map<Permutation, cplx> ap_phases;
    std::vector<cplx> amplitudes;  // over the C(L,M) sector basis, unit norm
    double norm_raw = 0.0;         // 2-norm of the unnormalized permutation sum
};

inline ExactBetheState exact_state(const BetheSolution& sol) {
    if (!sol.converged) throw ValidationError("exact_state: solution did not converge");
    if (sol.params.M > 10) throw ValidationError("exact_state: M > 10 (M! oracle guard)");
    const int L = sol.params.L;
    const int M = sol.params.M;

    ExactBetheState st;
    st.solution = sol;
    for (const Permutation& p : all_permutations(M)) st.ap_phases[p] = ap_phase(sol, p);

    SectorBasis basis(L, M);
    st.amplitudes.assign(basis.dim(), cplx{0.0, 0.0});
    for (std::size_t bi = 0; bi < basis.dim(); ++bi) {
        const std::vector<int> xs = basis.positions(bi);
        cplx s{0.0, 0.0};
        for (const auto& [perm, ap] : st.ap_phases) {
            double phase = 0.0;
            for (int j = 0; j < M; ++j) phase += sol.momenta[perm[j] - 1] * xs[j];
            s += ap * std::polar(1.0, phase);
        }
        st.amplitudes[bi] = s;
    }
    double n2 = 0.0;
    for (const cplx& a : st.amplitudes) n2 += std::norm(a);
    st.norm_raw = std::sqrt(n2);
    if (st.norm_raw < 1e-12)
        throw DegenerateSolutionError("exact_state: wavefunction vanishes identically");
    for (cplx& a : st.amplitudes) a /= st.norm_raw;
    return st;
}

}  // namespace xxzprep
