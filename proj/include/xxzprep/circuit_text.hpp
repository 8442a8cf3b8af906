#pragma once

// Line-oriented circuit text format, lossless round trip:
//
//   # xxzprep-circuit v1
//   layout L=<n> M=<n> work=<n> aa=<n>
//   meta <key>=<value>
//   KIND [angle] t<q>... [| +<q> -<q> ...] [@tag]
//
// Angles print with 17 significant digits.

#include <charconv>
#include <cstdio>
#include <sstream>
#include <string>

#include "circuit.hpp"

namespace xxzprep {

namespace detail {
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace detail

inline std::string to_text(const Circuit& c) {
    std::ostringstream os;
    os << "# xxzprep-circuit v1\n";
    os << "layout L=" << c.layout.L << " M=" << c.layout.M << " work=" << c.layout.work
       << " aa=" << c.layout.aa_ancilla << "\n";
    for (const auto& [k, v] : c.metadata) os << "meta " << k << "=" << v << "\n";
    for (const Gate& g : c.gates) {
        os << gate_kind_name(g.kind);
        if (g.has_angle()) os << " " << detail::fmt_double(g.angle);
        for (int t : g.targets) os << " t" << t;
        if (!g.controls.empty()) {
            os << " |";
            for (const Control& ct : g.controls)
                os << " " << (ct.positive ? '+' : '-') << ct.qubit;
        }
        if (!g.tag.empty()) os << " @" << g.tag;
        os << "\n";
    }
    return os.str();
}

inline Circuit from_text(const std::string& text) {
    Circuit c;
    std::istringstream is(text);
    std::string line;
    bool have_layout = false;
    std::vector<Gate> pending;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "layout") {
            std::string kv;
            while (ls >> kv) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw ValidationError("circuit text: bad layout field");
                const std::string key = kv.substr(0, eq);
                const int val = std::stoi(kv.substr(eq + 1));
                if (key == "L") c.layout.L = val;
                else if (key == "M") c.layout.M = val;
                else if (key == "work") c.layout.work = val;
                else if (key == "aa") c.layout.aa_ancilla = val;
                else throw ValidationError("circuit text: unknown layout key " + key);
            }
            have_layout = true;
            continue;
        }
        if (head == "meta") {
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
            const auto eq = rest.find('=');
            if (eq == std::string::npos) throw ValidationError("circuit text: bad meta line");
            c.metadata[rest.substr(0, eq)] = rest.substr(eq + 1);
            continue;
        }
        Gate g;
        bool known = false;
        for (GateKind k : {GateKind::X, GateKind::H, GateKind::RY, GateKind::RZ, GateKind::CX,
                           GateKind::CP, GateKind::CCP, GateKind::TOFFOLI, GateKind::CSWAP,
                           GateKind::MCX}) {
            if (head == gate_kind_name(k)) {
                g.kind = k;
                known = true;
                break;
            }
        }
        if (!known) throw ValidationError("circuit text: unknown gate kind " + head);
        if (g.has_angle()) {
            if (!(ls >> g.angle)) throw ValidationError("circuit text: missing angle");
        }
        std::string tok;
        bool in_controls = false;
        while (ls >> tok) {
            if (tok == "|") {
                in_controls = true;
            } else if (tok[0] == '@') {
                g.tag = tok.substr(1);
            } else if (in_controls) {
                if (tok[0] != '+' && tok[0] != '-')
                    throw ValidationError("circuit text: control needs +/- polarity");
                g.controls.push_back({std::stoi(tok.substr(1)), tok[0] == '+'});
            } else {
                if (tok[0] != 't') throw ValidationError("circuit text: bad target token " + tok);
                g.targets.push_back(std::stoi(tok.substr(1)));
            }
        }
        pending.push_back(std::move(g));
    }
    if (!have_layout) throw ValidationError("circuit text: missing layout header");
    for (Gate& g : pending) c.push(std::move(g));
    return c;
}

}  // namespace xxzprep
