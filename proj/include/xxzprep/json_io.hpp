#pragma once

// JSON interchange: Bethe solutions (consumed by the circuit builder),
// simulation outcomes, and resource reports.  Quantum numbers serialize as
// exact rationals "p/2".

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "bethe.hpp"
#include "resources.hpp"
#include "simulate.hpp"

namespace xxzprep {

using json = nlohmann::json;

inline std::string rational_half(int twice) {
    return std::to_string(twice) + "/2";
}

inline int parse_rational_half(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return 2 * std::stoi(s);  // plain integer
    const int num = std::stoi(s.substr(0, slash));
    const int den = std::stoi(s.substr(slash + 1));
    if (den == 1) return 2 * num;
    if (den == 2) return num;
    throw ValidationError("quantum number must be an integer or a half-integer: " + s);
}

inline json solution_to_json(const BetheSolution& sol) {
    json j;
    j["L"] = sol.params.L;
    j["M"] = sol.params.M;
    j["j_xy"] = sol.params.j_xy;
    j["j_z"] = sol.params.j_z;
    json qn = json::array();
    for (int t : sol.twice_quantum_numbers) qn.push_back(rational_half(t));
    j["quantum_numbers"] = qn;
    j["momenta"] = sol.momenta;
    j["theta"] = sol.theta;
    j["residual"] = sol.residual;
    j["converged"] = sol.converged;
    return j;
}

inline BetheSolution solution_from_json(const json& j) {
    BetheSolution sol;
    sol.params.L = j.at("L").get<int>();
    sol.params.M = j.at("M").get<int>();
    sol.params.j_xy = j.at("j_xy").get<double>();
    sol.params.j_z = j.at("j_z").get<double>();
    for (const auto& q : j.at("quantum_numbers"))
        sol.twice_quantum_numbers.push_back(parse_rational_half(q.get<std::string>()));
    sol.momenta = j.at("momenta").get<std::vector<double>>();
    sol.theta = j.at("theta").get<std::vector<std::vector<double>>>();
    sol.residual = j.at("residual").get<double>();
    sol.converged = j.at("converged").get<bool>();
    sol.params.validate();
    const std::size_t m = static_cast<std::size_t>(sol.params.M);
    if (sol.twice_quantum_numbers.size() != m || sol.momenta.size() != m ||
        sol.theta.size() != m)
        throw ValidationError("solution JSON: field sizes do not match M");
    return sol;
}

struct OutcomeRecord {
    SimulationOutcome outcome;
    double energy = 0.0;
    double residual = 0.0;  // sector-Hamiltonian residual of the oracle state
    ModelParams params;
    std::vector<int> twice_quantum_numbers;
    std::uint64_t seed = 0;
};

inline json outcome_to_json(const OutcomeRecord& rec) {
    json j;
    j["success_probability"] = rec.outcome.success_probability;
    if (rec.outcome.fidelity) j["fidelity"] = *rec.outcome.fidelity;
    else j["fidelity"] = nullptr;
    j["junk_norm"] = rec.outcome.junk_norm;
    j["energy"] = rec.energy;
    j["residual"] = rec.residual;
    j["L"] = rec.params.L;
    j["M"] = rec.params.M;
    j["j_z"] = rec.params.j_z;
    json qn = json::array();
    for (int t : rec.twice_quantum_numbers) qn.push_back(rational_half(t));
    j["quantum_numbers"] = qn;
    j["seed"] = rec.seed;
    return j;
}

inline json report_to_json(const ResourceReport& r, int L, int M) {
    json j;
    j["L"] = L;
    j["M"] = M;
    json counts;
    for (const auto& [kind, n] : r.counts) counts[gate_kind_name(kind)] = n;
    j["counts"] = counts;
    j["depth"] = r.depth;
    j["qubits"] = r.qubits;
    j["t_single_run"] = r.t_single_run;
    j["t_total"] = r.t_total;
    j["repetitions"] = r.repetitions;
    j["provenance"] = r.provenance;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace xxzprep
