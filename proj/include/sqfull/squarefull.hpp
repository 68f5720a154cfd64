#pragma once

// Square-full integers: membership, the canonical e^2 d^3 form, enumeration
// and comparison with the two-term main term of the counting function.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "sqfull/arith.hpp"
#include "sqfull/parallel.hpp"

namespace sqfull {

/// n = e^2 d^3 with d square-free; unique for square-full n.
template <typename Int>
struct E2D3 {
    Int n{};
    Int e{};
    Int d{};

    bool operator==(const E2D3&) const = default;
};

using SquarefullDecomposition = E2D3<std::uint64_t>;

struct CountReport {
    std::uint64_t limit = 0;
    std::uint64_t count = 0;
    double prediction = 0.0;
    double deviation = 0.0;
    double normalized_deviation = 0.0;  // deviation / N^{1/6}
};

bool is_squarefull(std::uint64_t n);
bool is_squarefull(const BigInt& n);

/// Decomposition if n is square-full, nullopt otherwise. n = 0 is never
/// square-full.
std::optional<SquarefullDecomposition> try_decompose_e2d3(std::uint64_t n);

SquarefullDecomposition decompose_e2d3(std::uint64_t n);
E2D3<BigInt> decompose_e2d3(const BigInt& n);

/// flags[d] != 0 iff d is square-free, for 0 <= d <= limit (flags[0] = 0).
std::vector<std::uint8_t> squarefree_flags(std::uint64_t limit);

/// Sorted square-full n <= limit, generated as e^2 d^3 over square-free d.
/// Throws std::logic_error if two distinct (e, d) ever collide.
std::vector<std::uint64_t> sieve_squarefull(std::uint64_t limit, unsigned threads = default_threads());

/// Same set, generated with the decomposition attached.
std::vector<SquarefullDecomposition> sieve_decompositions(std::uint64_t limit, unsigned threads = default_threads());

/// zeta(3/2)/zeta(3) N^{1/2} + zeta(2/3)/zeta(2) N^{1/3}.
double squarefull_main_term(double limit);

CountReport count_with_prediction(std::uint64_t limit, unsigned threads = default_threads());

void write_decompositions_csv(std::ostream& os, std::span<const SquarefullDecomposition> rows);
void write_count_reports_csv(std::ostream& os, std::span<const CountReport> rows);

}  // namespace sqfull
