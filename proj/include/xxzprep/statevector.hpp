#pragma once

// Dense state-vector execution.  Qubit q is bit q of the amplitude index
// (little endian), matching the sector ordering of model.hpp.

#include <cstdint>
#include <vector>

#include "circuit.hpp"
#include "model.hpp"

namespace xxzprep {

struct RunOptions {
    int qubit_cap = 26;       // ~1 GiB of amplitudes at the cap
    bool norm_check = true;   // verify unit norm after every gate
};

class StateVector {
  public:
    explicit StateVector(int n_qubits) : n_(n_qubits), amps_(std::size_t{1} << n_qubits) {
        amps_[0] = cplx{1.0, 0.0};
    }

    int n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }
    cplx amplitude(std::size_t i) const { return amps_[i]; }

    void set_basis_state(std::uint64_t bits) {
        std::fill(amps_.begin(), amps_.end(), cplx{0.0, 0.0});
        amps_[bits] = cplx{1.0, 0.0};
    }

    double norm2() const {
        double s = 0.0;
        for (const cplx& a : amps_) s += std::norm(a);
        return s;
    }

    void apply(const Gate& g) {
        std::uint64_t cmask = 0, cval = 0;
        for (const Control& c : g.controls) {
            cmask |= std::uint64_t{1} << c.qubit;
            if (c.positive) cval |= std::uint64_t{1} << c.qubit;
        }
        switch (g.kind) {
            case GateKind::X:
            case GateKind::CX:
            case GateKind::TOFFOLI:
            case GateKind::MCX:
                apply_controlled_x(std::uint64_t{1} << g.targets[0], cmask, cval);
                break;
            case GateKind::H:
                apply_h(std::uint64_t{1} << g.targets[0], cmask, cval);
                break;
            case GateKind::RY:
                apply_ry(g.angle, std::uint64_t{1} << g.targets[0], cmask, cval);
                break;
            case GateKind::RZ:
                apply_rz(g.angle, std::uint64_t{1} << g.targets[0], cmask, cval);
                break;
            case GateKind::CP:
            case GateKind::CCP:
                apply_phase(g.angle, std::uint64_t{1} << g.targets[0], cmask, cval);
                break;
            case GateKind::CSWAP:
                apply_swap(std::uint64_t{1} << g.targets[0], std::uint64_t{1} << g.targets[1],
                           cmask, cval);
                break;
        }
    }

  private:
    void apply_controlled_x(std::uint64_t t, std::uint64_t cmask, std::uint64_t cval) {
        const std::uint64_t full = cmask | t;
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            if ((i & full) == cval) std::swap(amps_[i], amps_[i | t]);
    }

    void apply_h(std::uint64_t t, std::uint64_t cmask, std::uint64_t cval) {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        const std::uint64_t full = cmask | t;
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            if ((i & full) == cval) {
                const cplx a = amps_[i], b = amps_[i | t];
                amps_[i] = inv_sqrt2 * (a + b);
                amps_[i | t] = inv_sqrt2 * (a - b);
            }
    }

    void apply_ry(double angle, std::uint64_t t, std::uint64_t cmask, std::uint64_t cval) {
        const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
        const std::uint64_t full = cmask | t;
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            if ((i & full) == cval) {
                const cplx a = amps_[i], b = amps_[i | t];
                amps_[i] = c * a - s * b;
                amps_[i | t] = s * a + c * b;
            }
    }

    void apply_rz(double angle, std::uint64_t t, std::uint64_t cmask, std::uint64_t cval) {
        const cplx p0 = std::polar(1.0, -0.5 * angle);
        const cplx p1 = std::polar(1.0, 0.5 * angle);
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            if ((i & cmask) == cval) amps_[i] *= (i & t) ? p1 : p0;
    }

    void apply_phase(double angle, std::uint64_t t, std::uint64_t cmask, std::uint64_t cval) {
        const cplx ph = std::polar(1.0, angle);
        const std::uint64_t full = cmask | t;
        const std::uint64_t want = cval | t;
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            if ((i & full) == want) amps_[i] *= ph;
    }

    void apply_swap(std::uint64_t t1, std::uint64_t t2, std::uint64_t cmask, std::uint64_t cval) {
        const std::uint64_t full = cmask | t1 | t2;
        const std::uint64_t want = cval | t1;  // pair representative: t1 = 1, t2 = 0
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            if ((i & full) == want) std::swap(amps_[i], amps_[i ^ t1 ^ t2]);
    }

    int n_;
    std::vector<cplx> amps_;
};

inline StateVector run(const Circuit& circuit, const RunOptions& opt = {}) {
    if (circuit.layout.total() > opt.qubit_cap)
        throw CapExceededError("run: circuit needs " + std::to_string(circuit.layout.total()) +
                               " qubits, cap is " + std::to_string(opt.qubit_cap));
    StateVector sv(circuit.layout.total());
    for (const Gate& g : circuit.gates) {
        sv.apply(g);
        if (opt.norm_check && std::abs(sv.norm2() - 1.0) > 1e-10)
            throw ValidationError("run: norm drifted past 1e-10 after a gate");
    }
    return sv;
}

inline StateVector run(const Circuit& circuit, StateVector initial, const RunOptions& opt = {}) {
    if (circuit.layout.total() != initial.n_qubits())
        throw ValidationError("run: initial state size does not match layout");
    if (circuit.layout.total() > opt.qubit_cap)
        throw CapExceededError("run: qubit cap exceeded");
    for (const Gate& g : circuit.gates) {
        initial.apply(g);
        if (opt.norm_check && std::abs(initial.norm2() - 1.0) > 1e-10)
            throw ValidationError("run: norm drifted past 1e-10 after a gate");
    }
    return initial;
}

}  // namespace xxzprep
