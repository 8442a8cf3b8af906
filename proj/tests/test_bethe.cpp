#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "xxzprep/bethe.hpp"

using namespace xxzprep;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("scattering phase vanishes on the diagonal and at delta = 0") {
    CHECK(scattering_phase(0.7, 0.7, -0.5) == 0.0);
    CHECK(scattering_phase(2.9, 2.9, 3.0) == 0.0);
    CHECK(scattering_phase(1.1, 2.2, 0.0) == 0.0);
    CHECK(scattering_phase(-0.4, 2.8, 0.0) == 0.0);
}

TEST_CASE("scattering phase antisymmetry at the reference momenta") {
    const double t = scattering_phase(1.14676529, 3.56562369, -0.5);
    const double t2 = scattering_phase(3.56562369, 1.14676529, -0.5);
    CHECK(t == Catch::Approx(-t2).margin(1e-15));
    CHECK(std::abs(t) > 0.1);  // nontrivial value
}

TEST_CASE("scattering phase antisymmetry, sampled") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> kdist(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> ddist(-2.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const double ki = kdist(rng), kj = kdist(rng), d = ddist(rng);
        const double num = d * std::sin(0.5 * (ki - kj));
        const double den = d * std::cos(0.5 * (ki - kj)) - std::cos(0.5 * (ki + kj));
        if (std::abs(num) < 1e-12 && std::abs(den) < 1e-12) continue;
        CHECK(scattering_phase(ki, kj, d) == Catch::Approx(-scattering_phase(kj, ki, d)).margin(1e-12));
    }
}

TEST_CASE("scattering phase is 2pi-periodic in each argument") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> kdist(-4.0, 4.0);
    for (int i = 0; i < 500; ++i) {
        const double ki = kdist(rng), kj = kdist(rng);
        const double t = scattering_phase(ki, kj, -0.5);
        CHECK(scattering_phase(ki + 2 * kPi, kj, -0.5) == Catch::Approx(t).margin(1e-9));
        CHECK(scattering_phase(ki, kj - 2 * kPi, -0.5) == Catch::Approx(t).margin(1e-9));
    }
}

TEST_CASE("scattering phase rejects a doubly-degenerate pair") {
    // k_i = k_j makes the numerator vanish; cos(k) = delta kills the denominator
    const double k = std::acos(-0.5);
    CHECK_THROWS_AS(scattering_phase(k, k, -0.5), SingularPairError);
    CHECK_THROWS_AS(scattering_phase(1.0, 2.0, std::nan("")), ValidationError);
}

TEST_CASE("free limit solves exactly") {
    ModelParams p{.L = 4, .M = 2, .j_xy = 1.0, .j_z = 0.0};
    const BetheSolution sol = solve_bethe(p, {-3, 1});  // I = -3/2, 1/2
    REQUIRE(sol.converged);
    CHECK(sol.residual <= 1e-12);
    CHECK(sol.momenta[0] == Catch::Approx(wrap_momentum(2 * kPi * (-1.5) / 4)).margin(1e-14));
    CHECK(sol.momenta[1] == Catch::Approx(2 * kPi * 0.5 / 4).margin(1e-14));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(sol.theta[i][j] == 0.0);
}

TEST_CASE("reference solution at L=4, M=2, delta=-1/2") {
    ModelParams p{.L = 4, .M = 2, .j_xy = 1.0, .j_z = -0.5};
    // the matching I pair, found by search over all valid half-integer pairs
    const BetheSolution sol = solve_bethe(p, {-3, 1});
    REQUIRE(sol.converged);
    CHECK(sol.momenta[0] == Catch::Approx(3.56562369).margin(1e-7));
    CHECK(sol.momenta[1] == Catch::Approx(1.14676529).margin(1e-7));
}

TEST_CASE("reference pair appears in the full enumeration") {
    ModelParams p{.L = 4, .M = 2, .j_xy = 1.0, .j_z = -0.5};
    const EnumerationResult res = enumerate_solutions(p);
    bool found = false;
    for (const auto& s : res.solutions) {
        std::vector<double> k = s.momenta;
        std::sort(k.begin(), k.end());
        if (std::abs(k[0] - 1.14676529) < 1e-7 && std::abs(k[1] - 3.56562369) < 1e-7)
            found = true;
    }
    CHECK(found);
}

TEST_CASE("quantization residual holds after wrapping, L=8 M=2") {
    ModelParams p{.L = 8, .M = 2, .j_xy = 1.0, .j_z = -0.5};
    const BetheSolution sol = solve_bethe(p, {-1, 1});  // I = (-1/2, 1/2)
    REQUIRE(sol.converged);
    CHECK(sol.residual < 1e-12);
    // re-verify the quantization condition from the stored wrapped momenta, mod 2pi
    for (int i = 0; i < 2; ++i) {
        double v = p.L * sol.momenta[i] - kPi * sol.twice_quantum_numbers[i];
        for (int j = 0; j < 2; ++j) v -= sol.theta[i][j];
        CHECK(std::abs(std::remainder(v, 2 * kPi)) < 1e-10);
    }
}

TEST_CASE("every converged enumerated solution satisfies the Bethe equations") {
    for (const auto& [L, M] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {6, 3}, {7, 3}}) {
        ModelParams p{.L = L, .M = M, .j_xy = 1.0, .j_z = -0.5};
        const EnumerationResult res = enumerate_solutions(p);
        REQUIRE(!res.solutions.empty());
        for (const auto& sol : res.solutions) {
            CHECK(sol.residual <= 1e-10);
            const double delta = sol.params.delta();
            for (int i = 0; i < M; ++i) {
                double v = L * sol.momenta[i] - kPi * sol.twice_quantum_numbers[i];
                for (int j = 0; j < M; ++j)
                    if (j != i) v -= scattering_phase(sol.momenta[i], sol.momenta[j], delta);
                CHECK(std::abs(std::remainder(v, 2 * kPi)) < 1e-10);
            }
            // antisymmetric theta matrix with zero diagonal
            for (int i = 0; i < M; ++i) {
                CHECK(sol.theta[i][i] == 0.0);
                for (int j = 0; j < M; ++j)
                    CHECK(sol.theta[i][j] == Catch::Approx(-sol.theta[j][i]).margin(1e-12));
            }
        }
    }
}

TEST_CASE("non-convergent quantum numbers are reported, not thrown") {
    ModelParams p{.L = 6, .M = 3, .j_xy = 1.0, .j_z = -0.5};
    const BetheSolution sol = solve_bethe(p, {-4, -2, 0});  // I = (-2,-1,0), no real solution
    CHECK_FALSE(sol.converged);
    CHECK(sol.residual > 1e-6);
}

TEST_CASE("colliding momenta raise a degenerate-solution error") {
    ModelParams p{.L = 4, .M = 2, .j_xy = 1.0, .j_z = -0.5};
    SolverOptions opt;
    opt.collision_tol = 10.0;  // force the collision check to trip
    CHECK_THROWS_AS(solve_bethe(p, {-3, 1}, opt), DegenerateSolutionError);
}

TEST_CASE("quantum-number validation") {
    ModelParams p{.L = 4, .M = 2, .j_xy = 1.0, .j_z = -0.5};
    CHECK_THROWS_AS(solve_bethe(p, {-2, 2}), ValidationError);       // integers for even M
    CHECK_THROWS_AS(solve_bethe(p, {1, 1}), ValidationError);        // repeated
    CHECK_THROWS_AS(solve_bethe(p, {1}), ValidationError);           // wrong count
    ModelParams bad{.L = 4, .M = 2, .j_xy = 0.0, .j_z = -0.5};
    CHECK_THROWS_AS(solve_bethe(bad, {-3, 1}), ValidationError);
    ModelParams m3{.L = 5, .M = 3, .j_xy = 1.0, .j_z = -0.5};
    CHECK_THROWS_AS(solve_bethe(m3, {-1, 1, 3}), ValidationError);   // half-integers for odd M
}

TEST_CASE("enumeration window and parity") {
    ModelParams even{.L = 4, .M = 2, .j_xy = 1.0, .j_z = -0.5};
    CHECK(valid_twice_quantum_numbers(even) == std::vector<int>{-3, -1, 1, 3});
    ModelParams odd{.L = 6, .M = 3, .j_xy = 1.0, .j_z = -0.5};
    CHECK(valid_twice_quantum_numbers(odd) == std::vector<int>{-4, -2, 0, 2, 4, 6});
    const EnumerationResult res = enumerate_solutions(even);
    CHECK(res.attempted == 6);  // C(4,2)
    // dedup: distinct I sets landing on the same wrapped momenta collapse
    for (std::size_t i = 0; i < res.solutions.size(); ++i)
        for (std::size_t j = i + 1; j < res.solutions.size(); ++j) {
            std::vector<double> a = res.solutions[i].momenta, b = res.solutions[j].momenta;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            double d = 0.0;
            for (std::size_t q = 0; q < a.size(); ++q)
                d = std::max(d, circular_distance(a[q], b[q]));
            CHECK(d > 1e-6);
        }
}
