#pragma once

// Resource accounting: measured gate tallies converted to T counts under a
// fixed fault-tolerant cost model, closed-form count formulas, and the cost
// formulas of the two brute-force alternatives (never built as circuits).

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "circuit.hpp"

namespace xxzprep {

using bigint = boost::multiprecision::cpp_int;

enum class RepetitionsPolicy { worst_case_factorial, amplified_sqrt, measured };

struct ResourceModel {
    double epsilon = 1e-10;  // rotation-synthesis error
    RepetitionsPolicy policy = RepetitionsPolicy::worst_case_factorial;
    double measured_p = 1.0;  // used by the measured policy

    double t_per_rotation() const {
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw ValidationError("ResourceModel: epsilon must be in (0,1)");
        return 4.0 * std::log2(1.0 / epsilon) + 11.0;
    }
    static constexpr double t_per_toffoli = 2.0;
};

struct ResourceReport {
    std::map<GateKind, std::size_t> counts;
    std::size_t depth = 0;
    int qubits = 0;
    double t_single_run = 0.0;
    double t_total = 0.0;
    std::uint64_t repetitions = 1;
    std::string provenance;  // "measured" or "formula"
};

inline std::uint64_t factorial_u64(int m) {
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// Rotation-equivalent T cost per gate.  Lowering rules are fixed here rather
// than left to the synthesis backend:
//  - a bare RY/RZ/CP is one rotation;
//  - a CCP is two rotations (phase-gadget split of the doubly-controlled phase);
//  - a rotation carrying c extra controls is 2^c rotations (multiplexed ladder);
//  - Toffoli costs 2 T, CSWAP lowers to one Toffoli, MCX with c controls to
//    2(c-2)+1 Toffolis through work qubits;
//  - everything else is Clifford and free.
inline double t_count_single(const Circuit& c, const ResourceModel& model) {
    const double t_rot = model.t_per_rotation();
    double t = 0.0;
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::RY:
            case GateKind::RZ:
                t += t_rot * static_cast<double>(std::uint64_t{1} << g.controls.size());
                break;
            case GateKind::CP:
                t += t_rot * static_cast<double>(
                                 std::uint64_t{1}
                                 << (g.controls.empty() ? 0 : g.controls.size() - 1));
                break;
            case GateKind::CCP:
                t += 2.0 * t_rot;
                break;
            case GateKind::TOFFOLI:
                t += ResourceModel::t_per_toffoli;
                break;
            case GateKind::CSWAP:
                t += ResourceModel::t_per_toffoli;
                break;
            case GateKind::MCX:
                t += ResourceModel::t_per_toffoli *
                     static_cast<double>(2 * (g.controls.size() - 2) + 1);
                break;
            default:
                break;  // X, H, CX are Clifford
        }
    }
    return t;
}

inline std::uint64_t expected_repetitions(const ResourceModel& model, int M) {
    switch (model.policy) {
        case RepetitionsPolicy::worst_case_factorial:
            return factorial_u64(M);
        case RepetitionsPolicy::amplified_sqrt:
            return static_cast<std::uint64_t>(
                std::ceil(std::sqrt(static_cast<double>(factorial_u64(M)))));
        case RepetitionsPolicy::measured:
            if (!(model.measured_p > 0.0 && model.measured_p <= 1.0))
                throw ValidationError("ResourceModel: measured policy needs p in (0,1]");
            return static_cast<std::uint64_t>(std::ceil(1.0 / model.measured_p));
    }
    return 1;
}

inline ResourceReport estimate(const Circuit& c, const ResourceModel& model, int M) {
    ResourceReport r;
    r.counts = count_gates(c);
    r.depth = depth(c);
    r.qubits = c.layout.total();
    r.t_single_run = t_count_single(c, model);
    r.repetitions = expected_repetitions(model, M);
    r.t_total = r.t_single_run * static_cast<double>(r.repetitions);
    r.provenance = "measured";
    return r;
}

struct FormulaCounts {
    std::uint64_t ap_cp = 0;        // controlled phases in the A_P step
    std::uint64_t faucet_ccp = 0;   // doubly-controlled phases in the faucet walk
    std::uint64_t total_cp_like = 0;
    std::uint64_t qubits_core = 0;
};

inline FormulaCounts formula_counts(int L, int M) {
    if (M < 1) throw ValidationError("formula_counts: M must be >= 1");
    FormulaCounts f;
    const std::uint64_t m = static_cast<std::uint64_t>(M);
    f.ap_cp = m * (m - 1) * (2 * m - 1) / 6;  // = M^3/3 - M^2/2 + M/6
    f.faucet_ccp = m * m * static_cast<std::uint64_t>(L);
    f.total_cp_like = f.ap_cp + f.faucet_ccp;
    f.qubits_core = static_cast<std::uint64_t>(L) + m * m + m + 1;
    return f;
}

struct AlternativeCosts {
    bigint direct_phasing;           // M! * C(L, M) per-term controlled phases
    bigint compressed_label_faucet;  // M! * L * M
    bigint algorithm1;               // total_cp_like of the main construction
};

inline AlternativeCosts alternative_costs(int L, int M) {
    if (M < 1 || M > 20) throw ValidationError("alternative_costs: need 1 <= M <= 20");
    if (L < M) throw ValidationError("alternative_costs: need L >= M");
    bigint fact = 1;
    for (int i = 2; i <= M; ++i) fact *= i;
    bigint choose = 1;
    for (int i = 1; i <= M; ++i) {
        choose *= (L - M + i);
        choose /= i;
    }
    AlternativeCosts a;
    a.direct_phasing = fact * choose;
    a.compressed_label_faucet = fact * L * M;
    a.algorithm1 = formula_counts(L, M).total_cp_like;
    return a;
}

}  // namespace xxzprep
