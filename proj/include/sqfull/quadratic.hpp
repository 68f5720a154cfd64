#pragma once

// Integer quadratics f(x) = ax^2 + bx + c: majorants, admissibility, exact
// counts of square-full values, solution triples and the dyadic M(E, D)
// cells.

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sqfull/arith.hpp"
#include "sqfull/parallel.hpp"

namespace sqfull {

struct QuadraticPoly {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    __int128 operator()(std::int64_t x) const
    {
        const __int128 X = x;
        return (static_cast<__int128>(a) * X + b) * X + c;
    }
    BigInt value(const BigInt& x) const
    {
        return (BigInt(static_cast<long>(a)) * x + static_cast<long>(b)) * x + static_cast<long>(c);
    }

    /// b^2 - 4ac.
    __int128 discriminant() const { return static_cast<__int128>(b) * b - static_cast<__int128>(4) * a * c; }

    std::string str() const;
    bool operator==(const QuadraticPoly&) const = default;
};

/// g(y) = p y^2 + q with 4a^2 f(x) = g(2ax + b).
struct MajorantPoly {
    std::int64_t p = 0;
    __int128 q = 0;
    std::int64_t scale = 0;  // 2a

    __int128 operator()(std::int64_t y) const { return static_cast<__int128>(p) * y * y + q; }
    QuadraticPoly as_quadratic() const;
};

struct SolutionTriple {
    std::uint64_t n = 0;
    std::uint64_t e = 0;
    std::uint64_t d = 0;
    std::int64_t constant_term = 0;  // c of the polynomial the triple solves

    bool operator==(const SolutionTriple&) const = default;
};

/// Cell (E, 2E] x (D, 2D]. A lower endpoint of 0 denotes the unit cell (0, 1].
struct DyadicCell {
    std::uint64_t E = 0;
    std::uint64_t D = 0;
    std::uint64_t count = 0;

    bool operator==(const DyadicCell&) const = default;
};

struct ScanResult {
    std::vector<SolutionTriple> triples;
    std::uint64_t scanned = 0;
    std::uint64_t skipped_nonpositive = 0;
};

MajorantPoly majorant(const QuadraticPoly& f);
bool is_admissible(const QuadraticPoly& f);

/// Square-full values f(n) for lo <= n <= hi (n >= 1). Values f(n) <= 0 are
/// skipped and tallied.
ScanResult scan_squarefull_values(const QuadraticPoly& f, std::uint64_t lo, std::uint64_t hi,
                                  unsigned threads = default_threads());

std::uint64_t count_squarefull_values(const QuadraticPoly& f, std::uint64_t limit,
                                      unsigned threads = default_threads());
std::vector<SolutionTriple> enumerate_triples(const QuadraticPoly& f, std::uint64_t limit,
                                              unsigned threads = default_threads());

/// Lower endpoint of the dyadic cell containing x >= 1.
std::uint64_t dyadic_floor(std::uint64_t x);

/// M(E, D) over N < n <= 2N, by scanning n and bucketing the decompositions.
DyadicCell m_cell_count(const QuadraticPoly& f, std::uint64_t N, std::uint64_t E, std::uint64_t D,
                        unsigned threads = default_threads());

/// M(E, D) over N < n <= 2N, by iterating square-free d and e in the cell and
/// solving f(n) = e^2 d^3 for n.
DyadicCell m_cell_count_by_divisors(const QuadraticPoly& f, std::uint64_t N, std::uint64_t E, std::uint64_t D);

/// Integer n in (lo, hi] with f(n) = v, ascending.
std::vector<std::uint64_t> solve_for_n(const QuadraticPoly& f, __int128 v, std::uint64_t lo, std::uint64_t hi);

struct DyadicCheck {
    std::uint64_t N = 0;
    std::uint64_t lhs = 0;  // S_f(2N) - S_f(N)
    std::uint64_t rhs = 0;  // sum of M(E, D) over the grid
    std::vector<DyadicCell> cells;  // nonempty cells, row-major in (E, D)
    std::uint64_t grid_cells = 0;
    std::uint64_t bucket_mismatches = 0;  // cells where n-scan and d-scan disagree
    unsigned slack = 16;
    bool equal = false;
};

/// Checks S_f(2N) - S_f(N) = sum over dyadic (E, D) of M(E, D). The grid
/// spans every cell whose corner products E^2 D^3 and (2E)^2 (2D)^3 meet the
/// range of f on (N, 2N] widened by `slack` on both sides.
DyadicCheck dyadic_decomposition_check(const QuadraticPoly& f, std::uint64_t N, unsigned threads = default_threads());

struct EstermannProfile {
    std::uint64_t d = 0;
    std::uint64_t alpha = 0;
    std::uint64_t N = 0;
    std::uint64_t nonneg_pairs = 0;  // n >= 0, e >= 0
    std::uint64_t signed_pairs = 0;  // all sign choices
    double ratio = 0.0;              // nonneg_pairs / log(N + d alpha)
};

/// Pairs with |n|, |e| <= N and n^2 = d^3 e^2 - alpha^2.
EstermannProfile estermann_per_d_profile(std::uint64_t alpha, std::uint64_t N, std::uint64_t d);

void write_triples_csv(std::ostream& os, std::span<const SolutionTriple> rows);
void write_cells_csv(std::ostream& os, std::span<const DyadicCell> rows);

}  // namespace sqfull
