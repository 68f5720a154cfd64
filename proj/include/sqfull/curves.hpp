#pragma once

// Boxed integral points on Mordell curves, the negative-Pell family for
// n^2 + 4, and the cubic forms P_{c,d}(y1, y2) = c(3y1^2y2 - y2^3) + d(y1^3 - 3y1y2^2).

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "sqfull/arith.hpp"
#include "sqfull/parallel.hpp"

namespace sqfull {

struct MordellResult {
    std::int64_t D = 0;
    std::int64_t box = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> points;  // sorted by (x, y)

    std::size_t count() const { return points.size(); }
};

/// All (x, y) with y^2 = x^3 + D and |x|, |y| <= box.
MordellResult mordell_points(std::int64_t D, std::int64_t box, unsigned threads = default_threads());

struct MordellScanRow {
    std::int64_t abs_D = 0;
    std::size_t count_pos = 0;
    std::size_t count_neg = 0;
    std::size_t max_count = 0;
    std::size_t running_max = 0;
};

struct MordellScan {
    std::int64_t box = 0;
    std::vector<MordellScanRow> rows;
    double slope = 0.0;  // least squares of log(running max) on log|D|
    double intercept = 0.0;
    std::size_t fitted_points = 0;
    double varpi0_reference = 0.0;
};

MordellScan mordell_exponent_scan(std::int64_t D_max, std::int64_t box, unsigned threads = default_threads());

struct SubstitutionResult {
    BigInt x, y, D;
    bool consistent = false;  // a n^2 = e^2 d^3 - b held
    bool on_curve = false;    // y^2 = x^3 + D verified
};

/// From a n^2 = e^2 d^3 - b, maps to (x, y) = (e^2 a d, e^2 a^2 n) on
/// y^2 = x^3 + D with D = -e^4 b a^3.
SubstitutionResult theorem2_substitution(const BigInt& e, const BigInt& a, const BigInt& b, const BigInt& d,
                                         const BigInt& n);

struct PellSolution {
    BigInt d, k, n;  // d^2 - 2k^2 = -1, n = 2d

    bool operator==(const PellSolution&) const = default;
};

/// Solutions of d^2 - 2k^2 = -1 with n = 2d <= limit_n via
/// (d, k) -> (3d + 4k, 2d + 3k) from (1, 1). Each is checked exactly.
std::vector<PellSolution> pell_family(const BigInt& limit_n);

/// Same family from odd powers of 1 + sqrt(2).
std::vector<PellSolution> pell_family_from_unit_powers(const BigInt& limit_n);

enum class CubicFormKind { Irreducible, LinearFactor };

struct CubicFormClass {
    std::int64_t c = 0;
    std::int64_t d = 0;
    CubicFormKind kind = CubicFormKind::Irreducible;
    // Linear factor q y1 - p y2 and cofactor a y1^2 + b y1 y2 + e y2^2.
    std::int64_t p = 0;
    std::int64_t q = 0;
    Rational quad_a, quad_b, quad_e;
    Rational cofactor_discriminant;      // b^2 - 4ae
    Rational predicted_discriminant;     // 3(p^2 - q^2)^2
};

/// P_{c,d} evaluated exactly.
__int128 cubic_form(std::int64_t c, std::int64_t d, std::int64_t y1, std::int64_t y2);

CubicFormClass classify_cubic_form(std::int64_t c, std::int64_t d);

/// Re-multiplies the factorization and compares against P_{c,d}.
bool verify_factorization(const CubicFormClass& cls);

struct ThueCount {
    std::size_t all = 0;
    std::size_t primitive = 0;  // gcd(y1, y2) = 1
    double reference = 0.0;     // 3^{1 + omega(alpha)}
};

ThueCount thue_count(std::int64_t c, std::int64_t d, std::int64_t alpha, std::int64_t box,
                     unsigned threads = default_threads());

/// Pairs with z1^2 - gamma z2^2 = m and |z1|, |z2| <= box.
std::size_t pell_like_count(std::int64_t gamma, std::int64_t m, std::int64_t box);

void write_mordell_csv(std::ostream& os, std::span<const MordellScanRow> rows);
void write_pell_csv(std::ostream& os, std::span<const PellSolution> rows);

}  // namespace sqfull
