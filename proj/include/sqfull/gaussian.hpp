#pragma once

// Gaussian-integer coordinates of solutions to e^2 d^3 = n^2 + alpha^2:
// e = x1^2 + x2^2, d = y1^2 + y2^2 and (x1 + i x2)^2 (y1 + i y2)^3 = +-n + alpha i.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "sqfull/arith.hpp"
#include "sqfull/quadratic.hpp"

namespace sqfull {

struct GaussianInt {
    BigInt re, im;

    GaussianInt() = default;
    GaussianInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}

    BigInt norm() const { return re * re + im * im; }

    friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) { return {a.re + b.re, a.im + b.im}; }
    friend bool operator==(const GaussianInt& a, const GaussianInt& b) { return a.re == b.re && a.im == b.im; }
};

struct Quadruple {
    std::int64_t x1 = 0, x2 = 0, y1 = 0, y2 = 0;

    auto operator<=>(const Quadruple&) const = default;
};

/// (x1^2 - x2^2)(3y1^2y2 - y2^3) + 2x1x2(y1^3 - 3y1y2^2).
__int128 imaginary_part_form(const Quadruple& q);
/// Re((x1 + i x2)^2 (y1 + i y2)^3).
__int128 real_part_form(const Quadruple& q);

/// |x1| <= |x2| and x1 x2 >= 0; the imaginary part is preserved.
Quadruple normalize(Quadruple q);

enum class QChoice { A, B };  // q1 = q_a = 3y1^2y2 - y2^3 or q1 = q_b = y1^3 - 3y1y2^2

struct Branch {
    bool y_swapped = false;  // s = y2/y1 (|y1| > |y2|) instead of y1/y2
    QChoice q1 = QChoice::A;

    bool operator==(const Branch&) const = default;
};

struct QForms {
    __int128 qa = 0;
    __int128 qb = 0;
    QChoice q1 = QChoice::A;  // larger in absolute value, ties to A

    __int128 first() const { return q1 == QChoice::A ? qa : qb; }
    __int128 second() const { return q1 == QChoice::A ? qb : qa; }
};

QForms q_forms(std::int64_t y1, std::int64_t y2);

struct ExtractedSolution {
    Quadruple coords;
    std::uint64_t e = 0, d = 0;
    std::uint64_t alpha = 0;
    __int128 real_part = 0;  // +-n
    Branch branch;
};

struct Extraction {
    SolutionTriple triple;
    std::uint64_t alpha = 0;
    std::vector<ExtractedSolution> solutions;  // empty is a finding, not an error
};

/// All normalized quadruples for a triple of f = x^2 + alpha^2.
Extraction extract_solutions(const SolutionTriple& triple);

struct MagnitudeReport {
    std::uint64_t d_max = 0;
    std::uint64_t representations = 0;
    double min_ratio = 0.0;  // min of max(|qa|, |qb|) / d^{3/2}
    std::uint64_t witness_d = 0;
    std::int64_t witness_y1 = 0, witness_y2 = 0;
    std::uint64_t failures = 0;  // ratio < 1/4
};

/// Over square-free d <= d_max and every (y1, y2) with y1^2 + y2^2 = d.
MagnitudeReport verify_magnitude_claim(std::uint64_t d_max);

/// -q2(s, 1)/q1(s, 1), or -q2(1, s)/q1(1, s) when the branch swaps y.
Rational phi(const Rational& s, const Branch& branch);

enum class Degeneracy { None, ZeroW, UnitW };

struct CurvePoint {
    Rational s;  // |s| <= 1
    Rational w;  // x1 / x2, 0 <= w <= 1
    Rational t;  // z-ratio paired with the branch; unset when degenerate
    Branch branch;
    Degeneracy degeneracy = Degeneracy::None;
    std::uint64_t interval = 0;  // set by the mesh assignment
};

CurvePoint curve_point(const ExtractedSolution& sol);

/// t from w by the branch formula: (w^2 - 1)/2w for q1 = q_a, 2w/(w^2 - 1)
/// for q1 = q_b.
Rational tau_of_w(const Rational& w, QChoice q1);

struct Residual {
    Rational value;       // t - phi(s)
    double scaled = 0.0;  // |t - phi(s)| * N
    bool within = false;  // scaled <= C
};

/// Throws DomainError for degenerate points (w = 0 or w = 1).
Residual tau_residual(const CurvePoint& point, std::uint64_t N, double C = 16.0);

void write_extraction_csv(std::ostream& os, std::span<const Extraction> rows, std::uint64_t N);

}  // namespace sqfull
