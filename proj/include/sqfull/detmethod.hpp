#pragma once

// Determinant method at desk scale: mesh choice, monomial matrices over
// exact rationals, primitive integer kernel forms C_I(s, w), and 2-D
// Gauss–Lagrange reduction of the interval lattices.

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "sqfull/arith.hpp"
#include "sqfull/parallel.hpp"

namespace sqfull {

struct MeshParams {
    std::uint64_t E = 0, D = 0, N = 0;
    double eta = 0.0;
    std::uint64_t M = 0;
};

/// Raised when log M >= (9/8)(1 + eta) log E log D / log N has no solution
/// M in [D, N].
class InfeasibleMesh : public DomainError {
public:
    using DomainError::DomainError;
};

/// Raised when the monomial matrix has full column rank.
class NoKernel : public DomainError {
public:
    using DomainError::DomainError;
};

/// Smallest M in [D, N] meeting the mesh inequality.
MeshParams choose_mesh(std::uint64_t E, std::uint64_t D, std::uint64_t N, double eta);

struct CurveSample {
    Rational s, w;
};

/// Row j holds s_j^k w_j^l in column l (K + 1) + k.
struct MonomialMatrix {
    unsigned K = 0, L = 0;
    std::vector<std::vector<Rational>> rows;

    std::size_t J() const { return rows.size(); }
    std::size_t H() const { return static_cast<std::size_t>(K + 1) * (L + 1); }
};

MonomialMatrix build_matrix(std::span<const CurveSample> points, unsigned K, unsigned L);

/// Rank over Q by fraction-free elimination.
std::size_t matrix_rank(const MonomialMatrix& m);

struct VanishingForm {
    unsigned K = 0, L = 0;
    std::vector<BigInt> coefficients;  // same column order as MonomialMatrix
    std::size_t rank = 0;

    Rational evaluate(const Rational& s, const Rational& w) const;
    /// Largest coefficient size in bits.
    std::size_t height_bits() const;
};

/// Primitive integer vector in the kernel, first nonzero entry positive.
/// Throws NoKernel at full column rank.
VanishingForm kernel_form(const MonomialMatrix& m);

using LatticeVector = std::pair<std::int64_t, std::int64_t>;

struct ReducedLattice {
    std::int64_t y3 = 0, M = 0, D = 0;
    LatticeVector g1, g2;
    double L1 = 0.0, L2 = 0.0;
    __int128 det = 0;

    /// |g1| <= |g2| <= |g1 +- g2|.
    bool is_reduced() const;
    /// (M, 0) and (-y3, 1) are integral combinations of g1, g2.
    bool spans_original() const;
};

/// Gauss–Lagrange reduction of the basis (M, 0), (-y3, 1).
ReducedLattice reduce_lattice(std::int64_t y3, std::int64_t M, std::int64_t D);

struct L1Probe {
    double max_l1 = 0.0;
    double ratio_to_sqrt_d = 0.0;
    double comparison = 0.0;  // D^{1/2 + 0.05}
    double soft_bound = 0.0;  // 10 D^{0.55}
    bool soft_ok = false;
};

L1Probe l1_upper_probe(std::int64_t D, std::int64_t M, std::size_t samples, std::uint64_t seed);

struct PipelineOptions {
    double eta = 0.1;
    unsigned K = 3;
    unsigned L = 3;
    bool auto_K = false;  // K = floor(L log E / log D)
};

struct IntervalReport {
    std::uint64_t E = 0, D = 0, M = 0;
    std::uint64_t interval_index = 0;
    std::size_t J = 0, H = 0, rank = 0;
    unsigned K = 0, L = 0;
    bool has_form = false;
    bool vanishes = false;
    std::vector<BigInt> coefficients;
    double l1 = 0.0, l2 = 0.0;
};

struct PipelineReport {
    std::uint64_t alpha = 0, N = 0;
    PipelineOptions options;
    std::size_t triples = 0;
    std::size_t solutions = 0;
    std::size_t points = 0;
    std::size_t degenerate = 0;       // w = 0 or w = 1, counted directly
    std::size_t folded = 0;           // s < 0 mapped to |s|
    std::size_t unextracted = 0;      // triples without a two-squares lift
    std::size_t infeasible_cells = 0;
    std::vector<IntervalReport> intervals;
    std::map<int, std::size_t> l1_histogram;  // floor(log2 L1) -> intervals
};

/// Mesh interval (k/M, (k+1)/M] holding s in [0, 1]; s = 0 goes to k = 0.
std::uint64_t interval_of(const Rational& s, std::uint64_t M);

PipelineReport interval_pipeline(std::uint64_t alpha, std::uint64_t N, const PipelineOptions& options,
                                 unsigned threads = default_threads());

void write_pipeline_json(std::ostream& os, const PipelineReport& report);

}  // namespace sqfull
