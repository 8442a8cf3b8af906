#pragma once

// Spin-1/2 XXZ chain with periodic boundary conditions:
//
//   H = sum_i  J_xy (S^x_i S^x_{i+1} + S^y_i S^y_{i+1}) + J_z S^z_i S^z_{i+1}
//
// The z magnetization is conserved, so everything works inside the sector
// with a fixed number M of down spins.  Basis convention used throughout the
// library: |0> = up, |1> = down, site x is bit x of the basis index
// (little endian), and sector states are ordered by ascending bitstring value.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace xxzprep {

using cplx = std::complex<double>;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularPairError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateSolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelParams {
    int L = 0;          // chain length (sites)
    int M = 0;          // number of down spins
    double j_xy = 1.0;  // transverse coupling
    double j_z = 0.0;   // longitudinal coupling

    double delta() const { return j_z / j_xy; }

    void validate() const {
        if (L < 1) throw ValidationError("ModelParams: L must be positive");
        if (M < 0 || M > L) throw ValidationError("ModelParams: need 0 <= M <= L");
        if (j_xy == 0.0) throw ValidationError("ModelParams: j_xy must be nonzero");
    }
};

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

// Fixed-magnetization sector basis.  Rank of a state with down-spin positions
// x_1 < ... < x_M under ascending-bitstring order is sum_j C(x_j, j)
// (combinatorial number system), which avoids a hash map on hot paths.
class SectorBasis {
  public:
    SectorBasis(int L, int M) : L_(L), M_(M) {
        if (L < 1 || M < 0 || M > L) throw ValidationError("SectorBasis: bad L, M");
        states_.reserve(binomial(L, M));
        for (std::uint32_t b = 0; b < (1u << L); ++b)
            if (std::popcount(b) == M) states_.push_back(b);
    }

    int L() const { return L_; }
    int M() const { return M_; }
    std::size_t dim() const { return states_.size(); }
    std::uint32_t state(std::size_t i) const { return states_[i]; }
    const std::vector<std::uint32_t>& states() const { return states_; }

    std::size_t index_of(std::uint32_t bits) const {
        std::size_t r = 0;
        int j = 1;
        for (int x = 0; x < L_; ++x)
            if ((bits >> x) & 1u) r += binomial(x, j++);
        return r;
    }

    std::vector<int> positions(std::size_t i) const {
        std::vector<int> xs;
        xs.reserve(M_);
        for (int x = 0; x < L_; ++x)
            if ((states_[i] >> x) & 1u) xs.push_back(x);
        return xs;
    }

  private:
    int L_, M_;
    std::vector<std::uint32_t> states_;
};

// H * state, matrix free.  The XY part hops adjacent 01 <-> 10 pairs with
// weight j_xy/2; the ZZ part is diagonal with j_z/4 per aligned bond and
// -j_z/4 per anti-aligned bond.  For L = 2 the periodic wrap makes each bond
// appear twice, which is kept as-is.
inline std::vector<cplx> apply_hamiltonian(const ModelParams& p, const SectorBasis& basis,
                                           const std::vector<cplx>& state) {
    p.validate();
    if (basis.L() != p.L || basis.M() != p.M)
        throw ValidationError("apply_hamiltonian: basis does not match params");
    if (state.size() != basis.dim())
        throw ValidationError("apply_hamiltonian: state dimension mismatch");

    std::vector<cplx> out(state.size(), cplx{0.0, 0.0});
    const double hop = 0.5 * p.j_xy;
    const double zz = 0.25 * p.j_z;
    for (std::size_t bi = 0; bi < basis.dim(); ++bi) {
        const std::uint32_t b = basis.state(bi);
        double diag = 0.0;
        for (int i = 0; i < p.L; ++i) {
            const int j = (i + 1) % p.L;
            const bool si = (b >> i) & 1u;
            const bool sj = (b >> j) & 1u;
            if (si == sj) {
                diag += zz;
            } else {
                diag -= zz;
                const std::uint32_t flipped = b ^ (1u << i) ^ (1u << j);
                out[basis.index_of(flipped)] += hop * state[bi];
            }
        }
        out[bi] += diag * state[bi];
    }
    return out;
}

// Rayleigh quotient <state|H|state> for a unit-norm sector vector.
inline double energy_of(const ModelParams& p, const SectorBasis& basis,
                        const std::vector<cplx>& state) {
    double n2 = 0.0;
    for (const cplx& a : state) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > 1e-8)
        throw ValidationError("energy_of: state is not unit norm");
    const std::vector<cplx> hs = apply_hamiltonian(p, basis, state);
    cplx e{0.0, 0.0};
    for (std::size_t i = 0; i < state.size(); ++i) e += std::conj(state[i]) * hs[i];
    if (std::abs(e.imag()) > 1e-10)
        throw ValidationError("energy_of: expectation has a non-real part");
    return e.real();
}

}  // namespace xxzprep
