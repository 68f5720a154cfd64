#pragma once

// Exponent arithmetic, the abc reduction chain, random-polynomial family
// averages and log-log exponent fits.

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "sqfull/arith.hpp"
#include "sqfull/parallel.hpp"

namespace sqfull {

struct ExponentSet {
    double beta = 0.0;
    double varpi0 = 0.0;          // 2 beta / (3 log 3)
    double varpi_thm2 = 0.0;      // 2(1 + 4 varpi0) / (5 + 12 varpi0)
    double e_opt_exponent = 0.0;  // 2 / (5 + 12 varpi0)
    double psi_star = 0.0;        // grid argmax of the psi objective
    double varpi_thm1 = 0.0;      // grid max of the psi objective
    Rational psi_exact;           // rational confirmation point, 2/5
    Rational varpi_thm1_exact;    // objective evaluated exactly at psi_exact
};

/// (3/8) psi (1 - psi) + min(psi / 2, (1 - psi) / 3).
double psi_objective(double psi);
Rational psi_objective(const Rational& psi);

/// Grid search of psi_objective on [0, 1] with the given step.
std::pair<double, double> maximize_psi(double step);

ExponentSet exponents(double grid_step = 1e-6);

struct Tradeoff {
    double e_exponent = 0.0;  // log E / log N at the optimum
    double value = 0.0;       // optimal exponent of min(D, E^{1 + 4 varpi0})
    double grid_e_exponent = 0.0;
    double grid_value = 0.0;
};

/// sup over E of min(D, E^{1 + 4 varpi0}) subject to E^2 D^3 = N^2, in
/// exponents of N, closed form and grid.
Tradeoff theorem2_tradeoff(double varpi0, double grid_step = 1e-5);

struct AbcChain {
    BigInt c, b, e, d, n;
    BigInt ell, n1, b1;      // ell = gcd(b, n), n = ell n1, b = ell b1
    BigInt ell1, b2, ell2;   // ell1 = gcd(ell, b1), b1 = ell1 b2, ell = ell1 ell2
    BigInt lhs;              // c e^2 d^3 / (ell ell1)
    BigInt rhs;              // ell2 n1^2 + b2
    bool identity_holds = false;
    bool coprime_terms = false;  // reduced triple is coprime with positive terms
    double quality = 0.0;        // log(max term) / log rad(product), when coprime_terms
};

/// c e^2 d^3 = n^2 + b reduced by the gcd chain. Throws DomainError if the
/// input equation does not hold.
AbcChain abc_chain(const BigInt& c, const BigInt& b, const BigInt& e, const BigInt& d, const BigInt& n);

/// log c / log rad(abc) for a + b = c.
double abc_quality(const BigInt& a, const BigInt& b, const BigInt& c);

struct FamilyAverage {
    std::int64_t H = 0;
    std::uint64_t N = 0;
    std::uint64_t total = 0;
    std::uint64_t family_size = 0;  // (2H + 1)^3
    double average = 0.0;
    double bound_ratio = 0.0;       // total / (H^{5/2} N + H^2 N^{5/3})
};

/// Sum of S_f(N) over all a0 + a1 x + a2 x^2 with |a_i| <= H: for each
/// (a1, a2, n), counts square-full values in the window a1 n + a2 n^2 + [-H, H].
FamilyAverage random_family_average(std::int64_t H, std::uint64_t N, unsigned threads = default_threads());

/// Same total by evaluating every polynomial at every n.
FamilyAverage random_family_average_naive(std::int64_t H, std::uint64_t N, unsigned threads = default_threads());

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_sum = 0.0;
    std::size_t samples = 0;
};

/// Least squares of log y on log x; needs >= 3 points, x, y > 0 and two
/// distinct x.
FitResult fit_exponent(std::span<const std::pair<double, double>> series);

/// Reads "x,y" rows (an optional header line is skipped).
std::vector<std::pair<double, double>> read_series_csv(std::istream& is);

}  // namespace sqfull
