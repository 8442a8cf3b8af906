#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "xxzprep/builder.hpp"
#include "xxzprep/circuit.hpp"
#include "xxzprep/circuit_text.hpp"
#include "xxzprep/simulate.hpp"

using namespace xxzprep;

namespace {

QubitLayout tiny_layout(int n) {
    QubitLayout lay;
    lay.L = n;  // treat everything as "system" for IR-level tests
    lay.M = 0;
    lay.work = 0;
    return lay;
}

Gate rotation(GateKind k, double angle, int target, std::vector<Control> ctrls = {}) {
    Gate g;
    g.kind = k;
    g.angle = angle;
    g.targets = {target};
    g.controls = std::move(ctrls);
    return g;
}

bool unitary_close(const std::vector<std::vector<cplx>>& a,
                   const std::vector<std::vector<cplx>>& b, double tol = 1e-12) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (std::abs(a[i][j] - b[i][j]) > tol) return false;
    return true;
}

bool is_identity(const std::vector<std::vector<cplx>>& u, double tol = 1e-12) {
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j)
            if (std::abs(u[i][j] - (i == j ? cplx{1, 0} : cplx{0, 0})) > tol) return false;
    return true;
}

Circuit random_circuit(int n, int n_gates, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> qd(0, n - 1);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    std::uniform_int_distribution<int> kind(0, 6);
    Circuit c;
    c.layout = tiny_layout(n);
    for (int i = 0; i < n_gates; ++i) {
        int a = qd(rng), b = qd(rng), d = qd(rng);
        while (b == a) b = qd(rng);
        while (d == a || d == b) d = qd(rng);
        switch (kind(rng)) {
            case 0: c.push(make_cnx({}, a)); break;
            case 1: c.push(make_cnx({{b, rng() & 1 ? true : false}}, a)); break;
            case 2: c.push(rotation(GateKind::RY, ang(rng), a, {{b, true}})); break;
            case 3: c.push(rotation(GateKind::RZ, ang(rng), a)); break;
            case 4: c.push(rotation(GateKind::CP, ang(rng), a, {{b, true}})); break;
            case 5: {
                Gate g;
                g.kind = GateKind::H;
                g.targets = {a};
                c.push(g);
                break;
            }
            case 6: {
                Gate g;
                g.kind = GateKind::CSWAP;
                g.targets = {a, b};
                g.controls = {{d, true}};
                c.push(g);
                break;
            }
        }
    }
    return c;
}

}  // namespace

TEST_CASE("count_gates tallies per kind, empty circuit is all zeros") {
    Circuit c;
    c.layout = tiny_layout(3);
    CHECK(count_gates(c).empty());
    c.push(make_cnx({}, 0));
    c.push(make_cnx({{1, true}}, 0));
    c.push(make_cnx({{1, true}, {2, false}}, 0));
    c.push(rotation(GateKind::CP, 0.5, 1, {{2, true}}));
    const auto counts = count_gates(c);
    CHECK(count_of(counts, GateKind::X) == 1);
    CHECK(count_of(counts, GateKind::CX) == 1);
    CHECK(count_of(counts, GateKind::TOFFOLI) == 1);
    CHECK(count_of(counts, GateKind::CP) == 1);
    CHECK(count_of(counts, GateKind::MCX) == 0);
}

TEST_CASE("make_cnx normalizes kind by control count") {
    CHECK(make_cnx({}, 0).kind == GateKind::X);
    CHECK(make_cnx({{1, true}}, 0).kind == GateKind::CX);
    CHECK(make_cnx({{1, true}, {2, false}}, 0).kind == GateKind::TOFFOLI);
    CHECK(make_cnx({{1, true}, {2, true}, {3, true}}, 0).kind == GateKind::MCX);
}

TEST_CASE("depth layers greedily") {
    Circuit c;
    c.layout = tiny_layout(4);
    CHECK(depth(c) == 0);
    c.push(make_cnx({}, 0));
    CHECK(depth(c) == 1);
    c.push(make_cnx({}, 1));  // disjoint: same layer
    CHECK(depth(c) == 1);
    c.push(make_cnx({{1, true}}, 2));  // overlaps qubit 1
    CHECK(depth(c) == 2);
    c.push(make_cnx({}, 3));  // free qubit slots into layer 1
    CHECK(depth(c) == 2);
}

TEST_CASE("gate validation") {
    Circuit c;
    c.layout = tiny_layout(2);
    CHECK_THROWS_AS(c.push(make_cnx({}, 5)), ValidationError);
    CHECK_THROWS_AS(c.push(make_cnx({{0, true}}, 0)), ValidationError);
}

TEST_CASE("unitary_of X is the bit flip") {
    Circuit c;
    c.layout = tiny_layout(1);
    c.push(make_cnx({}, 0));
    const auto u = unitary_of(c);
    CHECK(std::abs(u[0][1] - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(u[1][0] - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(u[0][0]) < 1e-15);
    CHECK(std::abs(u[1][1]) < 1e-15);
}

TEST_CASE("unitary_of respects the size guard") {
    Circuit c;
    c.layout = tiny_layout(13);
    CHECK_THROWS_AS(unitary_of(c), CapExceededError);
}

TEST_CASE("emitted exchange pattern equals the ASWAP matrix") {
    // dest = q0, src = q1, index = q0 + 2*q1.  Reading two-qubit strings as
    // |dest src> this is exactly A(theta, phi=0): the |01> column (value
    // sitting in the donor) stays with +cos and moves with +sin.
    const double th = 0.73;
    Circuit c;
    c.layout = tiny_layout(2);
    detail::emit_aswap(c, 0, 1, th, "t");
    const auto u = unitary_of(c);
    const double cs = std::cos(th), sn = std::sin(th);
    // index 1 = (q0=1,q1=0) = moved branch, index 2 = (q0=0,q1=1) = donor holds
    std::vector<std::vector<cplx>> want{{cplx{1, 0}, {}, {}, {}},
                                        {{}, cplx{-cs, 0}, cplx{sn, 0}, {}},
                                        {{}, cplx{sn, 0}, cplx{cs, 0}, {}},
                                        {{}, {}, {}, cplx{1, 0}}};
    CHECK(unitary_close(u, want));
}

TEST_CASE("diagonal phase gates are symmetric under qubit exchange") {
    const double th = 1.234;
    // CP: swap target and control
    Circuit a;
    a.layout = tiny_layout(2);
    a.push(rotation(GateKind::CP, th, 0, {{1, true}}));
    Circuit b;
    b.layout = tiny_layout(2);
    b.push(rotation(GateKind::CP, th, 1, {{0, true}}));
    CHECK(unitary_close(unitary_of(a), unitary_of(b)));

    // CCP: all three assignments of target among the qubits agree
    std::vector<std::vector<std::vector<cplx>>> us;
    for (int t = 0; t < 3; ++t) {
        Circuit c;
        c.layout = tiny_layout(3);
        std::vector<Control> ctrls;
        for (int q = 0; q < 3; ++q)
            if (q != t) ctrls.push_back({q, true});
        c.push(rotation(GateKind::CCP, th, t, ctrls));
        us.push_back(unitary_of(c));
    }
    CHECK(unitary_close(us[0], us[1]));
    CHECK(unitary_close(us[1], us[2]));
}

TEST_CASE("inverse composes to the identity on random circuits") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Circuit c = random_circuit(4, 25, seed);
        Circuit round = c;
        round.append(inverse(c));
        CHECK(is_identity(unitary_of(round)));
    }
}

TEST_CASE("circuit text round-trips losslessly") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Circuit c = random_circuit(5, 30, seed);
        c.metadata["kind"] = "fuzz";
        const std::string text = to_text(c);
        const Circuit back = from_text(text);
        REQUIRE(back.gates.size() == c.gates.size());
        CHECK(back.layout.L == c.layout.L);
        CHECK(back.metadata.at("kind") == "fuzz");
        for (std::size_t i = 0; i < c.gates.size(); ++i) {
            CHECK(back.gates[i].kind == c.gates[i].kind);
            CHECK(back.gates[i].targets == c.gates[i].targets);
            CHECK(back.gates[i].controls == c.gates[i].controls);
            CHECK(back.gates[i].angle == c.gates[i].angle);  // bit-exact via %.17g
        }
        CHECK(to_text(back) == text);
    }
}

TEST_CASE("circuit text rejects malformed input") {
    CHECK_THROWS_AS(from_text("X t0\n"), ValidationError);  // no layout header
    CHECK_THROWS_AS(from_text("layout L=2 M=0 work=0 aa=0\nFOO t0\n"), ValidationError);
    CHECK_THROWS_AS(from_text("layout L=2 M=0 work=0 aa=0\nCX t0 | 1\n"), ValidationError);
}

TEST_CASE("rotation ladders equal compound controlled rotations") {
    const double th = 1.173;
    for (const bool p1 : {true, false}) {
        // one control
        Circuit ladder;
        ladder.layout = tiny_layout(2);
        detail::emit_cry_ladder(ladder, th, 0, {{1, p1}}, "t");
        Circuit compound;
        compound.layout = tiny_layout(2);
        compound.push(rotation(GateKind::RY, th, 0, {{1, p1}}));
        CHECK(unitary_close(unitary_of(ladder), unitary_of(compound)));
        for (const bool p2 : {true, false}) {
            // two controls, every polarity combination
            Circuit lad2;
            lad2.layout = tiny_layout(3);
            detail::emit_cry_ladder(lad2, th, 0, {{1, p1}, {2, p2}}, "t");
            Circuit comp2;
            comp2.layout = tiny_layout(3);
            comp2.push(rotation(GateKind::RY, th, 0, {{1, p1}, {2, p2}}));
            CHECK(unitary_close(unitary_of(lad2), unitary_of(comp2)));
        }
    }
}

TEST_CASE("negative controls lower to X-conjugated positive controls") {
    // documented lowering rule: a negative control equals X on the control
    // qubit before and after the positively-controlled gate
    Circuit neg;
    neg.layout = tiny_layout(2);
    neg.push(make_cnx({{1, false}}, 0));
    Circuit low;
    low.layout = tiny_layout(2);
    low.push(make_cnx({}, 1));
    low.push(make_cnx({{1, true}}, 0));
    low.push(make_cnx({}, 1));
    CHECK(unitary_close(unitary_of(neg), unitary_of(low)));
}
