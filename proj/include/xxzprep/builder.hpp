#pragma once

// Circuit construction for Bethe-state preparation:
//   1. Dicke state |D_{L,M}> on the system register,
//   2. one-hot permutation labels with the A_P phases folded in,
//   3. position phases e^{i k_{Pj} x_j} via the faucet walk,
//   4. inverse label construction without phases.
// plus the Grover-style amplification wrapper.

#include <string>
#include <vector>

#include "bethe.hpp"
#include "circuit.hpp"
#include "exact_state.hpp"

namespace xxzprep {

enum class ReflectionStyle {
    ancilla_free,  // multi-controlled X straight into the work qubit (simulation friendly)
    toffoli_tree,  // balanced binary Toffoli tree over fresh ancillas (resource accounting)
};

struct BuildOptions {
    int amplification_rounds = 0;
    bool edge_skip = false;  // omit provably inert faucet gates near the chain edges
    int work_budget = 1;
    ReflectionStyle reflection = ReflectionStyle::ancilla_free;
};

inline QubitLayout make_layout(int L, int M, const BuildOptions& opt = {}) {
    QubitLayout lay;
    lay.L = L;
    lay.M = M;
    lay.work = std::max(1, opt.work_budget);
    lay.aa_ancilla = 0;
    if (opt.amplification_rounds > 0 && opt.reflection == ReflectionStyle::toffoli_tree)
        lay.aa_ancilla = L + M * M - M;
    return lay;
}

namespace detail {

inline void emit_ry(Circuit& c, double angle, int target, const std::string& tag) {
    Gate g;
    g.kind = GateKind::RY;
    g.targets = {target};
    g.angle = angle;
    g.tag = tag;
    c.push(g);
}

// Controlled y-rotation lowered to alternating bare rotations and CNOTs
// (multiplexed-rotation ladder), exact for one or two controls of either
// polarity.  Keeps the emitted circuits in the CX/RY vocabulary.
inline void emit_cry_ladder(Circuit& c, double angle, int target,
                            const std::vector<Control>& ctrls, const std::string& tag) {
    if (ctrls.empty()) {
        emit_ry(c, angle, target, tag);
        return;
    }
    if (ctrls.size() == 1) {
        // t1 + (-1)^b t2 = angle exactly on the firing pattern, 0 on the other
        const double s = ctrls[0].positive ? 1.0 : -1.0;
        emit_ry(c, 0.5 * angle, target, tag);
        c.push(make_cnx({{ctrls[0].qubit, true}}, target, tag));
        emit_ry(c, -s * 0.5 * angle, target, tag);
        c.push(make_cnx({{ctrls[0].qubit, true}}, target, tag));
        return;
    }
    if (ctrls.size() != 2) throw ValidationError("emit_cry_ladder: at most two controls");
    // quarter-angle ladder: the accumulated rotation on control pattern (b1, b2)
    // is t1 + (-1)^b1 t2 + (-1)^(b1+b2) t3 + (-1)^b2 t4
    const double q = 0.25 * angle;
    const double s1 = ctrls[0].positive ? 1.0 : -1.0;
    const double s2 = ctrls[1].positive ? 1.0 : -1.0;
    const double t1 = q, t2 = -s1 * q, t3 = s1 * s2 * q, t4 = -s2 * q;
    emit_ry(c, t1, target, tag);
    c.push(make_cnx({{ctrls[0].qubit, true}}, target, tag));
    emit_ry(c, t2, target, tag);
    c.push(make_cnx({{ctrls[1].qubit, true}}, target, tag));
    emit_ry(c, t3, target, tag);
    c.push(make_cnx({{ctrls[0].qubit, true}}, target, tag));
    emit_ry(c, t4, target, tag);
    c.push(make_cnx({{ctrls[1].qubit, true}}, target, tag));
}

// Partial-move rotation on (a, b): |1_a 0_b> -> cos(th)|1_a 0_b> + sin(th)|0_a 1_b>,
// |00> and |11> untouched.  Extra controls gate the rotation only; the framing
// CX pair is identity on every blocked branch.
inline void emit_partial_move(Circuit& c, int a, int b, double th,
                              const std::vector<Control>& extra, const std::string& tag) {
    c.push(make_cnx({{a, true}}, b, tag));
    std::vector<Control> ctrls{{b, true}};
    for (const Control& e : extra) ctrls.push_back(e);
    emit_cry_ladder(c, -2.0 * th, a, ctrls, tag);
    c.push(make_cnx({{a, true}}, b, tag));
}

// Exchange gate A(theta, phi=0) on (dest, src), exactly
//   |0 1> -> cos|0 1> + sin|1 0>,   |1 0> -> sin|0 1> - cos|1 0>
// in |dest src> labels: alternating CNOTs interleaved with R_y rotations.
inline void emit_aswap(Circuit& c, int dest, int src, double th, const std::string& tag) {
    c.push(make_cnx({{src, true}}, dest, tag));
    c.push(make_cnx({{dest, true}}, src, tag));
    emit_cry_ladder(c, std::numbers::pi - 2.0 * th, src, {{dest, true}}, tag);
    c.push(make_cnx({{src, true}}, dest, tag));
}

inline void emit_cp(Circuit& c, double angle, int q0, int q1, const std::string& tag) {
    Gate g;
    g.kind = GateKind::CP;
    g.targets = {q0};
    g.controls = {{q1, true}};
    g.angle = angle;
    g.tag = tag;
    c.push(g);
}

inline void emit_cswap(Circuit& c, int control, int t0, int t1, const std::string& tag) {
    Gate g;
    g.kind = GateKind::CSWAP;
    g.targets = {t0, t1};
    g.controls = {{control, true}};
    g.tag = tag;
    c.push(g);
}

}  // namespace detail

// Deterministic Dicke-state fragment: |0...0> -> equal positive superposition
// of all weight-M strings on the system register.  Split-and-shift scheme:
// seed |1^M 0^(L-M)>, then for each suffix length n peel the last qubit with
// partial moves whose stay weight is sqrt((n-l)/n) for each block height l.
inline Circuit build_dicke(int L, int M, const QubitLayout* layout_in = nullptr) {
    QubitLayout lay = layout_in ? *layout_in : make_layout(L, M);
    Circuit c;
    c.layout = lay;
    const std::string tag = "dicke";
    if (M == 0) return c;
    for (int q = 0; q < M; ++q) c.push(make_cnx({}, lay.system_qubit(q), tag));
    if (M == L) return c;
    for (int n = L; n >= 2; --n) {
        const int kmax = std::min(M, n - 1);
        for (int l = kmax; l >= 1; --l) {
            const double th = std::acos(std::sqrt(static_cast<double>(n - l) / n));
            std::vector<Control> extra;
            if (l + 1 <= n - 1) extra.push_back({lay.system_qubit(l), false});
            detail::emit_partial_move(c, lay.system_qubit(l - 1), lay.system_qubit(n - 1), th,
                                      extra, tag);
        }
    }
    return c;
}

// Permutation-label fragment.  Subregister s ends up holding P(s+1) one-hot.
// Stage s introduces value s+1 in subregister s and cascades it downward with
// exchange gates (stay weight 1/sqrt(t+1) at subregister t) plus CSWAP repair.
// With with_ap, a controlled phase of angle Theta(k_a, k_b) + pi follows each
// partial swap, building A_P transposition by transposition.
inline Circuit build_perm_label(const BetheSolution& sol, bool with_ap,
                                const QubitLayout* layout_in = nullptr) {
    if (!sol.converged) throw ValidationError("build_perm_label: solution did not converge");
    const int M = sol.params.M;
    QubitLayout lay = layout_in ? *layout_in : make_layout(sol.params.L, M);
    Circuit c;
    c.layout = lay;
    const std::string tag = with_ap ? "perm-label-ap" : "perm-label";

    c.push(make_cnx({}, lay.label_qubit(0, 1), tag));
    for (int s = 1; s < M; ++s) {
        const int value = s + 1;
        c.push(make_cnx({}, lay.label_qubit(s, value), tag));
        for (int t = s; t >= 1; --t) {
            const double th = std::acos(1.0 / std::sqrt(t + 1.0));
            const int dest = lay.label_qubit(t - 1, value);
            const int src = lay.label_qubit(t, value);
            detail::emit_aswap(c, dest, src, th, tag);
            for (int l = 1; l <= s; ++l)
                detail::emit_cswap(c, dest, lay.label_qubit(t, l), lay.label_qubit(t - 1, l), tag);
            if (with_ap)
                for (int b = 1; b <= s; ++b)
                    detail::emit_cp(c, ap_swap_angle(sol, value, b), dest,
                                    lay.label_qubit(t, b), tag);
        }
    }
    return c;
}

// Faucet fragment.  Faucets start |1>; at each site the turn-off sweep runs
// j = M..1 so the freshly cleared faucet blocks its lower neighbour within the
// same site, then every (faucet j, label subregister j-1 value v) pair gets a
// controlled phase of angle k_v.  Faucet j is on exactly while fewer than j
// down spins have been passed, so branch P accumulates e^{i sum_j k_{P(j)} x_j}
// and every faucet ends in |0>.
inline Circuit build_faucet(const BetheSolution& sol, const BuildOptions& opt = {},
                            const QubitLayout* layout_in = nullptr) {
    if (!sol.converged) throw ValidationError("build_faucet: solution did not converge");
    const int L = sol.params.L;
    const int M = sol.params.M;
    QubitLayout lay = layout_in ? *layout_in : make_layout(L, M, opt);
    Circuit c;
    c.layout = lay;
    const std::string tag = "faucet";

    for (int j = 1; j <= M; ++j) c.push(make_cnx({}, lay.faucet_qubit(j), tag));

    for (int x = 0; x < L; ++x) {
        for (int j = M; j >= 1; --j) {
            // gate can fire only if j-1 <= x (enough sites seen) and the
            // remaining M-j downs still fit: x <= L-1-(M-j)
            if (opt.edge_skip && (j - 1 > x || x > L - 1 - (M - j))) continue;
            std::vector<Control> ctrls{{lay.system_qubit(x), true}};
            if (j - 1 >= 1) ctrls.push_back({lay.faucet_qubit(j - 1), false});
            if (j + 1 <= M) ctrls.push_back({lay.faucet_qubit(j + 1), true});
            if (ctrls.size() <= 2) {
                c.push(make_cnx(ctrls, lay.faucet_qubit(j), tag));
            } else {
                // lower the 3-control X through the work qubit
                const int w = lay.work_qubit();
                const Control a = ctrls[0], b = ctrls[2], third = ctrls[1];
                c.push(make_cnx({a, b}, w, tag));
                c.push(make_cnx({{w, true}, third}, lay.faucet_qubit(j), tag));
                c.push(make_cnx({a, b}, w, tag));
            }
        }
        for (int j = 1; j <= M; ++j) {
            // faucet j can still be on at site x only if x <= L-2-M+j
            if (opt.edge_skip && x > L - 2 - M + j) continue;
            for (int v = 1; v <= M; ++v)
                detail::emit_cp(c, sol.momenta[v - 1], lay.faucet_qubit(j),
                                lay.label_qubit(j - 1, v), tag);
        }
    }
    return c;
}

// Steps 1-4; measurement is left to the simulator's projection.
inline Circuit build_algorithm1(const BetheSolution& sol, const BuildOptions& opt = {},
                                const QubitLayout* layout_in = nullptr) {
    QubitLayout lay = layout_in ? *layout_in : make_layout(sol.params.L, sol.params.M, opt);
    Circuit c = build_dicke(sol.params.L, sol.params.M, &lay);
    c.append(build_perm_label(sol, /*with_ap=*/true, &lay));
    c.append(build_faucet(sol, opt, &lay));
    c.append(inverse(build_perm_label(sol, /*with_ap=*/false, &lay)));
    c.metadata["kind"] = "algorithm1";
    return c;
}

namespace detail {

// Phase flip on the all-zero configuration of `qubits`.
inline void emit_zero_reflection(Circuit& c, const std::vector<int>& qubits,
                                 const QubitLayout& lay, ReflectionStyle style,
                                 const std::string& tag) {
    if (style == ReflectionStyle::ancilla_free) {
        const int w = lay.work_qubit();
        std::vector<Control> ctrls;
        ctrls.reserve(qubits.size());
        for (int q : qubits) ctrls.push_back({q, false});
        Gate h;
        h.kind = GateKind::H;
        h.targets = {w};
        h.tag = tag;
        c.push(make_cnx(ctrls, w, tag));
        c.push(h);  // Z on the work qubit as H X H, no global phase
        c.push(make_cnx({}, w, tag));
        c.push(h);
        c.push(make_cnx(ctrls, w, tag));
        return;
    }
    // Toffoli tree: negate inputs, AND-reduce pairwise into ancillas, flip the
    // root sign, uncompute.  Zeroed faucet qubits are reused as tree nodes
    // before the dedicated aa block.
    std::vector<int> pool;
    for (int j = 1; j <= lay.M; ++j) pool.push_back(lay.faucet_qubit(j));
    pool.push_back(lay.work_qubit());
    for (int i = 0; i < lay.aa_ancilla; ++i) pool.push_back(lay.aa_qubit(i));

    std::vector<Gate> compute;
    for (int q : qubits) compute.push_back(make_cnx({}, q, tag));
    std::size_t next_free = 0;
    std::vector<int> level = qubits;
    while (level.size() > 1) {
        std::vector<int> up;
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            if (next_free >= pool.size())
                throw ValidationError("reflection tree: ancilla pool exhausted");
            const int node = pool[next_free++];
            compute.push_back(make_cnx({{level[i], true}, {level[i + 1], true}}, node, tag));
            up.push_back(node);
        }
        if (level.size() % 2 == 1) up.push_back(level.back());
        level = std::move(up);
    }
    const int root = level.front();
    for (const Gate& g : compute) c.push(g);
    Gate h;
    h.kind = GateKind::H;
    h.targets = {root};
    h.tag = tag;
    c.push(h);
    c.push(make_cnx({}, root, tag));
    c.push(h);
    for (auto it = compute.rbegin(); it != compute.rend(); ++it) c.push(*it);
}

}  // namespace detail

// Sign flip on components whose permutation label is |0...0>.
inline Circuit build_reflection_sb(const BetheSolution& sol, const BuildOptions& opt,
                                   const QubitLayout& lay) {
    Circuit c;
    c.layout = lay;
    std::vector<int> qubits;
    for (int s = 0; s < sol.params.M; ++s)
        for (int v = 1; v <= sol.params.M; ++v) qubits.push_back(lay.label_qubit(s, v));
    detail::emit_zero_reflection(c, qubits, lay, opt.reflection, "reflect-label");
    return c;
}

// Sign flip on the all-zero state of label plus system.
inline Circuit build_reflection_s0(const BetheSolution& sol, const BuildOptions& opt,
                                   const QubitLayout& lay) {
    Circuit c;
    c.layout = lay;
    std::vector<int> qubits;
    for (int s = 0; s < sol.params.M; ++s)
        for (int v = 1; v <= sol.params.M; ++v) qubits.push_back(lay.label_qubit(s, v));
    for (int x = 0; x < sol.params.L; ++x) qubits.push_back(lay.system_qubit(x));
    detail::emit_zero_reflection(c, qubits, lay, opt.reflection, "reflect-zero");
    return c;
}

// B followed by `rounds` repetitions of Q = B S_0 B^-1 S_B.  The global -1 of
// the textbook iterate is dropped; probabilities and fidelities are unaffected.
inline Circuit build_amplified(const BetheSolution& sol, int rounds, BuildOptions opt = {}) {
    if (rounds < 1) throw ValidationError("build_amplified: rounds must be >= 1");
    opt.amplification_rounds = rounds;
    QubitLayout lay = make_layout(sol.params.L, sol.params.M, opt);
    Circuit b = build_algorithm1(sol, opt, &lay);
    Circuit sb = build_reflection_sb(sol, opt, lay);
    Circuit s0 = build_reflection_s0(sol, opt, lay);
    Circuit binv = inverse(b);

    Circuit c = b;
    for (int r = 0; r < rounds; ++r) {
        c.append(sb);
        c.append(binv);
        c.append(s0);
        c.append(b);
    }
    c.metadata["kind"] = "algorithm1+amplification";
    c.metadata["rounds"] = std::to_string(rounds);
    return c;
}

}  // namespace xxzprep
