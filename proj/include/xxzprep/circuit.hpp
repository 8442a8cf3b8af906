#pragma once

// Gate-list circuit representation over a named qubit layout.
//
// Controls carry a polarity; negative controls fire on |0>.  Diagonal phase
// gates (CP, CCP) are symmetric under any exchange of their qubits, so the
// target/control split for them is representational only.  X-like kinds are
// normalized by control count: 0 -> X, 1 -> CX, 2 -> TOFFOLI, >= 3 -> MCX.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "model.hpp"

namespace xxzprep {

enum class GateKind : std::uint8_t { X, H, RY, RZ, CX, CP, CCP, TOFFOLI, CSWAP, MCX };

inline const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::H: return "H";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CX: return "CX";
        case GateKind::CP: return "CP";
        case GateKind::CCP: return "CCP";
        case GateKind::TOFFOLI: return "TOFFOLI";
        case GateKind::CSWAP: return "CSWAP";
        case GateKind::MCX: return "MCX";
    }
    return "?";
}

struct Control {
    int qubit = 0;
    bool positive = true;

    bool operator==(const Control&) const = default;
};

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<int> targets;
    std::vector<Control> controls;
    double angle = 0.0;      // RY/RZ/CP/CCP only
    std::string tag;         // provenance: which build step emitted the gate

    bool has_angle() const {
        return kind == GateKind::RY || kind == GateKind::RZ || kind == GateKind::CP ||
               kind == GateKind::CCP;
    }

    std::vector<int> qubits() const {
        std::vector<int> q = targets;
        for (const Control& c : controls) q.push_back(c.qubit);
        return q;
    }
};

// X with any number of controls, kind normalized by arity.
inline Gate make_cnx(std::vector<Control> controls, int target, std::string tag = {}) {
    Gate g;
    switch (controls.size()) {
        case 0: g.kind = GateKind::X; break;
        case 1: g.kind = GateKind::CX; break;
        case 2: g.kind = GateKind::TOFFOLI; break;
        default: g.kind = GateKind::MCX; break;
    }
    g.targets = {target};
    g.controls = std::move(controls);
    g.tag = std::move(tag);
    return g;
}

struct QubitLayout {
    int L = 0;             // system register size
    int M = 0;             // down spins; label register is M subregisters of M qubits
    int work = 1;          // work qubits for multi-control chains
    int aa_ancilla = 0;    // reflection-tree ancillas, present only when needed

    int system_qubit(int site) const { return site; }
    // qubit of value v (1..M) in label subregister s (0-based, s holds P(s+1))
    int label_qubit(int subreg, int value) const { return L + subreg * M + (value - 1); }
    int faucet_qubit(int j) const { return L + M * M + (j - 1); }  // j = 1..M
    int work_qubit(int w = 0) const { return L + M * M + M + w; }
    int aa_qubit(int i) const { return L + M * M + M + work + i; }

    int label_count() const { return M * M; }
    int core_total() const { return L + M * M + M + work; }
    int total() const { return core_total() + aa_ancilla; }
};

struct Circuit {
    QubitLayout layout;
    std::vector<Gate> gates;
    std::map<std::string, std::string> metadata;

    void push(Gate g) {
        for (int q : g.qubits())
            if (q < 0 || q >= layout.total())
                throw ValidationError("Circuit: gate qubit outside layout");
        // targets and controls must be disjoint
        for (int t : g.targets)
            for (const Control& c : g.controls)
                if (c.qubit == t) throw ValidationError("Circuit: control equals target");
        gates.push_back(std::move(g));
    }

    void append(const Circuit& other) {
        for (const Gate& g : other.gates) push(g);
    }
};

inline std::map<GateKind, std::size_t> count_gates(const Circuit& c) {
    std::map<GateKind, std::size_t> counts;
    for (const Gate& g : c.gates) ++counts[g.kind];
    return counts;
}

inline std::size_t count_of(const std::map<GateKind, std::size_t>& counts, GateKind k) {
    auto it = counts.find(k);
    return it == counts.end() ? 0 : it->second;
}

// Greedy as-soon-as-possible layering; every gate occupies one layer on all
// of its qubits regardless of arity.
inline std::size_t depth(const Circuit& c) {
    std::vector<std::size_t> busy(c.layout.total(), 0);
    std::size_t d = 0;
    for (const Gate& g : c.gates) {
        std::size_t layer = 0;
        for (int q : g.qubits()) layer = std::max(layer, busy[q]);
        ++layer;
        for (int q : g.qubits()) busy[q] = layer;
        d = std::max(d, layer);
    }
    return d;
}

// Formal inverse: reversed order, negated angles; X-like, H, CSWAP are
// self-inverse gate by gate.
inline Circuit inverse(const Circuit& c) {
    Circuit inv;
    inv.layout = c.layout;
    inv.metadata = c.metadata;
    inv.gates.reserve(c.gates.size());
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        Gate g = *it;
        if (g.has_angle()) g.angle = -g.angle;
        inv.gates.push_back(std::move(g));
    }
    return inv;
}

}  // namespace xxzprep
