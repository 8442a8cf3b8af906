// Command-line front end: solve Bethe equations, build circuits, simulate and
// post-select, sweep couplings, and emit resource reports.
//
// Exit codes: 0 success, 2 validation error, 3 nothing converged, 4 resource cap.

#include <CLI11.hpp>
#include <atomic>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <thread>

#include "xxzprep/xxzprep.hpp"

namespace xz = xxzprep;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitCap = 4;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<int> parse_quantum_numbers(const std::string& csv) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        std::string tok = csv.substr(pos, comma - pos);
        if (!tok.empty()) out.push_back(xz::parse_rational_half(tok));
        pos = comma + 1;
    }
    return out;
}

std::string join_quantum_numbers(const std::vector<int>& twice) {
    std::string s;
    for (std::size_t i = 0; i < twice.size(); ++i) {
        if (i) s += ";";
        s += xz::rational_half(twice[i]);
    }
    return s;
}

std::vector<xz::BetheSolution> load_solutions(const std::string& path) {
    const xz::json j = xz::json::parse(xz::read_text_file(path));
    std::vector<xz::BetheSolution> sols;
    if (j.is_array())
        for (const auto& e : j) sols.push_back(xz::solution_from_json(e));
    else
        sols.push_back(xz::solution_from_json(j));
    return sols;
}

struct RunResult {
    xz::OutcomeRecord record;
};

// Build, simulate, project, and compare against the exact oracle.
RunResult simulate_solution(const xz::BetheSolution& sol, int amplify, int cap,
                            std::uint64_t seed) {
    xz::BuildOptions opt;
    opt.amplification_rounds = amplify;
    xz::Circuit circ = amplify > 0 ? xz::build_amplified(sol, amplify, opt)
                                   : xz::build_algorithm1(sol, opt);
    xz::RunOptions ropt;
    ropt.qubit_cap = cap;
    xz::StateVector sv = xz::run(circ, ropt);
    const xz::ExactBetheState exact = xz::exact_state(sol);
    RunResult r;
    r.record.outcome = xz::project_success(sv, circ.layout, exact);
    xz::SectorBasis basis(sol.params.L, sol.params.M);
    r.record.energy = xz::energy_of(sol.params, basis, exact.amplitudes);
    std::vector<xz::cplx> hs = xz::apply_hamiltonian(sol.params, basis, exact.amplitudes);
    double resid2 = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i)
        resid2 += std::norm(hs[i] - r.record.energy * exact.amplitudes[i]);
    r.record.residual = std::sqrt(resid2);
    r.record.params = sol.params;
    r.record.twice_quantum_numbers = sol.twice_quantum_numbers;
    r.record.seed = seed;
    return r;
}

int cmd_solve(const xz::ModelParams& params, const std::string& qn_csv, bool enumerate,
              const std::string& out_path) {
    params.validate();
    if (qn_csv.empty() && !enumerate)
        throw xz::ValidationError("solve: give --quantum-numbers or --enumerate");
    if (!qn_csv.empty() && enumerate)
        throw xz::ValidationError("solve: --quantum-numbers and --enumerate are exclusive");
    if (!qn_csv.empty()) {
        xz::BetheSolution sol = xz::solve_bethe(params, parse_quantum_numbers(qn_csv));
        xz::write_text_file(out_path, xz::solution_to_json(sol).dump(2) + "\n");
        return sol.converged ? 0 : kExitNoConvergence;
    }
    xz::EnumerationResult res = xz::enumerate_solutions(params);
    xz::json arr = xz::json::array();
    for (const auto& s : res.solutions) arr.push_back(xz::solution_to_json(s));
    xz::write_text_file(out_path, arr.dump(2) + "\n");
    std::cerr << "enumerated " << res.attempted << " quantum-number sets: "
              << res.solutions.size() << " solutions, " << res.failed << " non-converged, "
              << res.degenerate << " degenerate\n";
    return res.solutions.empty() ? kExitNoConvergence : 0;
}

int cmd_build(const std::string& solution_path, int index, int amplify, bool edge_skip,
              bool tree_reflections, const std::string& out_path) {
    const auto sols = load_solutions(solution_path);
    if (index < 0 || index >= static_cast<int>(sols.size()))
        throw xz::ValidationError("build: solution index out of range");
    xz::BuildOptions opt;
    opt.edge_skip = edge_skip;
    opt.amplification_rounds = amplify;
    opt.reflection = tree_reflections ? xz::ReflectionStyle::toffoli_tree
                                      : xz::ReflectionStyle::ancilla_free;
    xz::Circuit c = amplify > 0 ? xz::build_amplified(sols[index], amplify, opt)
                                : xz::build_algorithm1(sols[index], opt);
    xz::write_text_file(out_path, xz::to_text(c));
    return 0;
}

int cmd_run(const std::string& solution_path, int index, int amplify, std::uint64_t seed,
            int shots, int cap, const std::string& out_path) {
    const auto sols = load_solutions(solution_path);
    if (index < 0 || index >= static_cast<int>(sols.size()))
        throw xz::ValidationError("run: solution index out of range");
    RunResult r = simulate_solution(sols[index], amplify, cap, seed);
    xz::json j = xz::outcome_to_json(r.record);
    if (shots > 0) {
        // success herald: all label qubits measured 0
        xz::BuildOptions opt;
        opt.amplification_rounds = amplify;
        xz::Circuit circ = amplify > 0 ? xz::build_amplified(sols[index], amplify, opt)
                                       : xz::build_algorithm1(sols[index], opt);
        xz::RunOptions ropt;
        ropt.qubit_cap = cap;
        xz::StateVector sv = xz::run(circ, ropt);
        std::vector<int> label_qubits;
        for (int s = 0; s < sols[index].params.M; ++s)
            for (int v = 1; v <= sols[index].params.M; ++v)
                label_qubits.push_back(circ.layout.label_qubit(s, v));
        auto counts = xz::sample_counts(sv, label_qubits, shots, seed);
        const auto zero = counts.find(0);
        j["shots"] = shots;
        j["shots_success_frequency"] =
            (zero == counts.end() ? 0.0 : static_cast<double>(zero->second) / shots);
    }
    xz::write_text_file(out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_sweep(xz::ModelParams params, const std::string& jz_csv, int amplify, int workers,
              int cap, const std::string& out_path) {
    params.validate();
    std::vector<double> jzs;
    {
        std::size_t pos = 0;
        while (pos <= jz_csv.size()) {
            std::size_t comma = jz_csv.find(',', pos);
            if (comma == std::string::npos) comma = jz_csv.size();
            const std::string tok = jz_csv.substr(pos, comma - pos);
            if (!tok.empty()) jzs.push_back(std::stod(tok));
            pos = comma + 1;
        }
    }
    if (jzs.empty()) throw xz::ValidationError("sweep: empty --jz-list");

    struct Task {
        xz::BetheSolution sol;
        std::size_t row;
    };
    std::vector<Task> tasks;
    for (double jz : jzs) {
        xz::ModelParams p = params;
        p.j_z = jz;
        xz::EnumerationResult res = xz::enumerate_solutions(p);
        for (auto& s : res.solutions) tasks.push_back({std::move(s), tasks.size()});
    }
    std::vector<std::string> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            const Task& t = tasks[i];
            try {
                RunResult r = simulate_solution(t.sol, amplify, cap, 0);
                rows[t.row] = fmt17(t.sol.params.j_z) + "," + std::to_string(t.sol.params.L) +
                              "," + std::to_string(t.sol.params.M) + "," +
                              join_quantum_numbers(t.sol.twice_quantum_numbers) + "," +
                              fmt17(r.record.energy) + "," +
                              fmt17(r.record.outcome.success_probability) + "," +
                              (r.record.outcome.fidelity ? fmt17(*r.record.outcome.fidelity)
                                                         : std::string("nan")) +
                              "," + fmt17(r.record.residual);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(err_mutex);
                std::cerr << "sweep row " << t.row << " failed: " << e.what() << "\n";
            }
        }
    };
    const int n_workers = std::max(1, workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::string csv = "j_z,L,M,quantum_numbers,energy,success_probability,fidelity,residual\n";
    for (const std::string& row : rows)
        if (!row.empty()) csv += row + "\n";
    xz::write_text_file(out_path, csv);
    return 0;
}

std::vector<int> default_quantum_numbers(const xz::ModelParams& p) {
    // centered parity-correct set: the M values of smallest |I|
    std::vector<int> vals = xz::valid_twice_quantum_numbers(p);
    std::sort(vals.begin(), vals.end(),
              [](int a, int b) { return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b); });
    vals.resize(p.M);
    std::sort(vals.begin(), vals.end());
    return vals;
}

int cmd_estimate(const xz::ModelParams& params0, int l_min, int l_max, int l_step,
                 const std::string& m_list, double eps, const std::string& policy,
                 double measured_p, int amplify, bool edge_skip, bool compare,
                 const std::string& format, const std::string& out_path) {
    xz::ResourceModel model;
    model.epsilon = eps;
    if (policy == "worst") model.policy = xz::RepetitionsPolicy::worst_case_factorial;
    else if (policy == "sqrt") model.policy = xz::RepetitionsPolicy::amplified_sqrt;
    else if (policy == "measured") {
        model.policy = xz::RepetitionsPolicy::measured;
        model.measured_p = measured_p;
    } else {
        throw xz::ValidationError("estimate: policy must be worst, sqrt, or measured");
    }

    std::vector<int> Ls;
    if (l_min > 0)
        for (int L = l_min; L <= l_max; L += l_step) Ls.push_back(L);
    else
        Ls.push_back(params0.L);
    std::vector<int> Ms;
    if (m_list.empty()) {
        Ms.push_back(params0.M);
    } else {
        std::size_t pos = 0;
        while (pos <= m_list.size()) {
            std::size_t comma = m_list.find(',', pos);
            if (comma == std::string::npos) comma = m_list.size();
            const std::string tok = m_list.substr(pos, comma - pos);
            if (!tok.empty()) Ms.push_back(std::stoi(tok));
            pos = comma + 1;
        }
    }

    xz::json rows = xz::json::array();
    std::string csv =
        compare ? "L,M,cp_like_measured,ap_cp,faucet_ccp,total_cp_like,qubits,depth,toffoli,"
                  "t_single_run,t_total,repetitions,direct_phasing,compressed_label_faucet\n"
                : "L,M,cp_like_measured,ap_cp,faucet_ccp,total_cp_like,qubits,depth,toffoli,"
                  "t_single_run,t_total,repetitions\n";
    for (int M : Ms)
    for (int L : Ls) {
        xz::ModelParams p = params0;
        p.L = L;
        p.M = M;
        p.validate();
        xz::BetheSolution sol = xz::solve_bethe(p, default_quantum_numbers(p));
        if (!sol.converged) {
            std::cerr << "estimate: solver did not converge at L=" << L << "\n";
            return kExitNoConvergence;
        }
        xz::BuildOptions opt;
        opt.edge_skip = edge_skip;
        opt.amplification_rounds = amplify;
        opt.reflection = xz::ReflectionStyle::toffoli_tree;
        xz::Circuit c = amplify > 0 ? xz::build_amplified(sol, amplify, opt)
                                    : xz::build_algorithm1(sol, opt);
        xz::ResourceReport rep = xz::estimate(c, model, p.M);
        xz::FormulaCounts f = xz::formula_counts(L, p.M);
        xz::json row = xz::report_to_json(rep, L, p.M);
        row["ap_cp"] = f.ap_cp;
        row["faucet_ccp"] = f.faucet_ccp;
        row["total_cp_like"] = f.total_cp_like;
        row["qubits_core"] = f.qubits_core;
        const std::size_t cp_like = xz::count_of(rep.counts, xz::GateKind::CP) +
                                    xz::count_of(rep.counts, xz::GateKind::CCP);
        row["cp_like_measured"] = cp_like;
        std::string line = std::to_string(L) + "," + std::to_string(p.M) + "," +
                           std::to_string(cp_like) + "," + std::to_string(f.ap_cp) + "," +
                           std::to_string(f.faucet_ccp) + "," + std::to_string(f.total_cp_like) +
                           "," + std::to_string(rep.qubits) + "," + std::to_string(rep.depth) +
                           "," +
                           std::to_string(xz::count_of(rep.counts, xz::GateKind::TOFFOLI)) +
                           "," + fmt17(rep.t_single_run) + "," + fmt17(rep.t_total) + "," +
                           std::to_string(rep.repetitions);
        if (compare) {
            xz::AlternativeCosts alt = xz::alternative_costs(L, p.M);
            row["direct_phasing"] = alt.direct_phasing.str();
            row["compressed_label_faucet"] = alt.compressed_label_faucet.str();
            line += "," + alt.direct_phasing.str() + "," + alt.compressed_label_faucet.str();
        }
        rows.push_back(row);
        csv += line + "\n";
    }
    if (format == "csv") xz::write_text_file(out_path, csv);
    else xz::write_text_file(out_path, (rows.size() == 1 ? rows[0] : rows).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bethe-ansatz eigenstate preparation toolkit for the spin-1/2 XXZ chain"};
    app.require_subcommand(1);

    xz::ModelParams params;
    std::string qn_csv, jz_csv, m_list, solution_path, out_path = "-", format = "json";
    std::string policy = "worst";
    bool enumerate = false, edge_skip = false, tree_reflections = false;
    int index = 0, amplify = 0, shots = 0, cap = 26, workers = 1;
    int l_min = 0, l_max = 0, l_step = 10;
    double eps = 1e-10, measured_p = 1.0;
    std::uint64_t seed = 0;

    auto add_model = [&](CLI::App* c) {
        c->add_option("--L", params.L, "chain length");
        c->add_option("--M", params.M, "number of down spins");
        c->add_option("--jxy", params.j_xy, "transverse coupling")->default_val(1.0);
        c->add_option("--jz", params.j_z, "longitudinal coupling")->default_val(0.0);
    };

    CLI::App* solve = app.add_subcommand("solve", "solve the Bethe equations");
    add_model(solve);
    solve->add_option("--quantum-numbers", qn_csv, "comma-separated I set, e.g. -3/2,1/2");
    solve->add_flag("--enumerate", enumerate, "enumerate all parity-correct I sets");
    solve->add_option("--out", out_path, "output path or - for stdout");

    CLI::App* build = app.add_subcommand("build", "emit the circuit for a solved state");
    build->add_option("--solution", solution_path, "solution JSON from solve")->required();
    build->add_option("--index", index, "record index when the file is an array");
    build->add_option("--amplify", amplify, "amplitude-amplification rounds");
    build->add_flag("--edge-skip", edge_skip, "drop provably inert faucet gates");
    build->add_flag("--tree-reflections", tree_reflections,
                    "ancilla-based reflection trees instead of ancilla-free ORs");
    build->add_option("--out", out_path, "output path or - for stdout");

    CLI::App* runc = app.add_subcommand("run", "simulate a solved state end to end");
    runc->add_option("--solution", solution_path, "solution JSON from solve")->required();
    runc->add_option("--index", index, "record index when the file is an array");
    runc->add_option("--amplify", amplify, "amplitude-amplification rounds");
    runc->add_option("--seed", seed, "sampling seed");
    runc->add_option("--shots", shots, "also sample the success herald this many times");
    runc->add_option("--cap", cap, "qubit cap for the state vector")->default_val(26);
    runc->add_option("--out", out_path, "output path or - for stdout");

    CLI::App* sweep = app.add_subcommand("sweep", "enumerate and simulate across J_z values");
    add_model(sweep);
    sweep->add_option("--jz-list", jz_csv, "comma-separated J_z values")->required();
    sweep->add_option("--amplify", amplify, "amplitude-amplification rounds");
    sweep->add_option("--workers", workers, "parallel workers")->default_val(1);
    sweep->add_option("--cap", cap, "qubit cap for the state vector")->default_val(26);
    sweep->add_option("--out", out_path, "output CSV path or - for stdout");

    CLI::App* est = app.add_subcommand("estimate", "gate counts and T estimates");
    add_model(est);
    est->add_option("--L-min", l_min, "grid start (enables grid mode)");
    est->add_option("--L-max", l_max, "grid end");
    est->add_option("--L-step", l_step, "grid step")->default_val(10);
    est->add_option("--M-list", m_list, "comma-separated M values for a grid");
    est->add_option("--eps", eps, "rotation synthesis error")->default_val(1e-10);
    est->add_option("--policy", policy, "repetitions: worst, sqrt, measured")->default_val("worst");
    est->add_option("--p", measured_p, "success probability for the measured policy");
    est->add_option("--amplify", amplify, "include amplification rounds in the circuit");
    est->add_flag("--edge-skip", edge_skip, "drop provably inert faucet gates");
    est->add_option("--format", format, "json or csv")->default_val("json");
    est->add_option("--out", out_path, "output path or - for stdout");

    CLI::App* cmp = app.add_subcommand("compare", "estimate plus alternative-method costs");
    add_model(cmp);
    cmp->add_option("--L-min", l_min, "grid start (enables grid mode)");
    cmp->add_option("--L-max", l_max, "grid end");
    cmp->add_option("--L-step", l_step, "grid step")->default_val(10);
    cmp->add_option("--M-list", m_list, "comma-separated M values for a grid");
    cmp->add_option("--eps", eps, "rotation synthesis error")->default_val(1e-10);
    cmp->add_option("--policy", policy, "repetitions: worst, sqrt, measured")->default_val("worst");
    cmp->add_option("--p", measured_p, "success probability for the measured policy");
    cmp->add_option("--format", format, "json or csv")->default_val("json");
    cmp->add_option("--out", out_path, "output path or - for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(params, qn_csv, enumerate, out_path);
        if (build->parsed())
            return cmd_build(solution_path, index, amplify, edge_skip, tree_reflections, out_path);
        if (runc->parsed()) return cmd_run(solution_path, index, amplify, seed, shots, cap, out_path);
        if (sweep->parsed()) return cmd_sweep(params, jz_csv, amplify, workers, cap, out_path);
        if (est->parsed())
            return cmd_estimate(params, l_min, l_max, l_step, m_list, eps, policy, measured_p,
                                amplify, edge_skip, /*compare=*/false, format, out_path);
        if (cmp->parsed())
            return cmd_estimate(params, l_min, l_max, l_step, m_list, eps, policy, measured_p, 0,
                                false, /*compare=*/true, format, out_path);
    } catch (const xz::CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const xz::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const xz::DegenerateSolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
