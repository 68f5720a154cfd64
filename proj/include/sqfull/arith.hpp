#pragma once

// Exact integer/rational primitives and multiplicative functions.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace sqfull {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised when an input is well-formed but the requested mathematical
/// object does not exist (inconsistent equation, empty kernel, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

/// Prime -> exponent map, primes strictly increasing, exponents >= 1.
class Factorization {
public:
    Factorization() = default;
    explicit Factorization(std::vector<PrimePower> factors);

    const std::vector<PrimePower>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }
    std::size_t size() const { return factors_.size(); }

    /// Product of p^e over all factors.
    BigInt value() const;

    int mu() const;
    BigInt rad() const;
    unsigned omega() const { return static_cast<unsigned>(factors_.size()); }
    BigInt tau() const;

    bool is_squarefree() const;
    bool is_squarefull() const;

    bool operator==(const Factorization&) const = default;

private:
    std::vector<PrimePower> factors_;
};

/// Primes below 10^6, computed once and shared read-only.
std::span<const std::uint32_t> small_primes();

bool is_prime(std::uint64_t n);
bool is_prime(const BigInt& n);

Factorization factorize(std::uint64_t n);
Factorization factorize(const BigInt& n);

int mu(std::uint64_t n);
std::uint64_t rad(std::uint64_t n);
unsigned omega(std::uint64_t n);
std::uint64_t tau(std::uint64_t n);

/// Riemann zeta for real s > 0, s != 1. For 0 < s < 1 this is the analytic
/// continuation, evaluated through the alternating eta series with
/// Euler–van Wijngaarden averaging of the partial sums.
double zeta(double s, double tol = 1e-12);

/// All (x1, x2) with x1^2 + x2^2 = m and 0 <= x1 <= x2, ascending in x1.
std::vector<std::pair<std::uint64_t, std::uint64_t>> two_square_representations(std::uint64_t m);

template <typename T>
struct Root {
    T root{};
    bool exact = false;
};

Root<std::uint64_t> isqrt(std::uint64_t n);
Root<BigInt> isqrt(const BigInt& n);
/// Floor cube root, rounding toward negative infinity for negative input.
Root<std::int64_t> icbrt(std::int64_t n);
Root<BigInt> icbrt(const BigInt& n);

/// Exact-square test for possibly-negative 128-bit values.
bool is_square(__int128 v, std::uint64_t* root = nullptr);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

std::string to_string(__int128 v);

}  // namespace sqfull
