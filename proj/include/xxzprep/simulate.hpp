#pragma once

// Measurement-side operations: projection onto the all-zero permutation label
// (the success outcome), fidelity against the exact oracle state, seeded
// sampling, and the small-n dense unitary used as a gate-semantics oracle.

#include <optional>
#include <random>

#include "builder.hpp"
#include "exact_state.hpp"
#include "statevector.hpp"

namespace xxzprep {

struct SimulationOutcome {
    double success_probability = 0.0;
    std::vector<cplx> post_state;       // system register, unit norm (empty on failure)
    std::optional<double> fidelity;     // |<psi_exact|post>|^2; unset when p = 0
    double junk_norm = 1.0;
};

// Project onto all ancillas (label, faucet, work, aa) = |0>, renormalize the
// system part, compare with the oracle amplitudes embedded at weight-M indices.
inline SimulationOutcome project_success(const StateVector& state, const QubitLayout& lay,
                                         const ExactBetheState& exact) {
    if (state.n_qubits() != lay.total())
        throw ValidationError("project_success: state does not match layout");
    const int L = lay.L;
    SimulationOutcome out;
    // ancillas occupy the high qubits, so "all ancillas |0>" is index < 2^L
    std::vector<cplx> sys(std::size_t{1} << L, cplx{0.0, 0.0});
    double p = 0.0;
    for (std::uint64_t b = 0; b < sys.size(); ++b) {
        const cplx a = state.amplitude(b);
        sys[b] = a;
        p += std::norm(a);
    }
    out.success_probability = p;
    out.junk_norm = 1.0 - p;
    if (p < 1e-300) return out;  // failure outcome, fidelity undefined

    const double inv = 1.0 / std::sqrt(p);
    for (cplx& a : sys) a *= inv;
    out.post_state = std::move(sys);

    SectorBasis basis(L, exact.solution.params.M);
    cplx ov{0.0, 0.0};
    for (std::size_t i = 0; i < basis.dim(); ++i)
        ov += std::conj(exact.amplitudes[i]) * out.post_state[basis.state(i)];
    out.fidelity = std::norm(ov);
    return out;
}

// One projective measurement of `qubits`: draws from the exact marginal with a
// seeded generator, collapses and renormalizes the state.  Returns the outcome
// bits in the order the qubits were given.
inline std::uint64_t sample_measurement(StateVector& state, const std::vector<int>& qubits,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n_out = std::size_t{1} << qubits.size();
    std::vector<double> marginal(n_out, 0.0);
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        std::uint64_t o = 0;
        for (std::size_t q = 0; q < qubits.size(); ++q)
            if ((i >> qubits[q]) & 1u) o |= std::uint64_t{1} << q;
        marginal[o] += std::norm(state.amplitude(i));
    }
    const double r = unit(rng);
    double acc = 0.0;
    std::uint64_t outcome = n_out - 1;
    for (std::uint64_t o = 0; o < n_out; ++o) {
        acc += marginal[o];
        if (r < acc) {
            outcome = o;
            break;
        }
    }
    const double pnorm = std::sqrt(marginal[outcome]);
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        std::uint64_t o = 0;
        for (std::size_t q = 0; q < qubits.size(); ++q)
            if ((i >> qubits[q]) & 1u) o |= std::uint64_t{1} << q;
        state.amplitudes()[i] = (o == outcome) ? state.amplitude(i) / pnorm : cplx{0.0, 0.0};
    }
    return outcome;
}

// Shot counts over the marginal of `qubits` without collapsing (equivalent to
// measuring fresh copies); used by the CLI's shot mode and frequency tests.
inline std::map<std::uint64_t, std::size_t> sample_counts(const StateVector& state,
                                                          const std::vector<int>& qubits,
                                                          std::size_t shots, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> marginal(std::size_t{1} << qubits.size(), 0.0);
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        std::uint64_t o = 0;
        for (std::size_t q = 0; q < qubits.size(); ++q)
            if ((i >> qubits[q]) & 1u) o |= std::uint64_t{1} << q;
        marginal[o] += std::norm(state.amplitude(i));
    }
    std::map<std::uint64_t, std::size_t> counts;
    for (std::size_t s = 0; s < shots; ++s) {
        const double r = unit(rng);
        double acc = 0.0;
        for (std::uint64_t o = 0; o < marginal.size(); ++o) {
            acc += marginal[o];
            if (r < acc) {
                ++counts[o];
                break;
            }
        }
    }
    return counts;
}

// Exact 2^n x 2^n unitary of a small circuit, column by column.
inline std::vector<std::vector<cplx>> unitary_of(const Circuit& circuit, int max_qubits = 12) {
    const int n = circuit.layout.total();
    if (n > max_qubits) throw CapExceededError("unitary_of: circuit too large");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::vector<cplx>> u(dim, std::vector<cplx>(dim));
    RunOptions opt;
    opt.norm_check = false;
    for (std::size_t col = 0; col < dim; ++col) {
        StateVector sv(n);
        sv.set_basis_state(col);
        sv = run(circuit, std::move(sv), opt);
        for (std::size_t row = 0; row < dim; ++row) u[row][col] = sv.amplitude(row);
    }
    return u;
}

}  // namespace xxzprep
