#include "sqfull/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sqfull/experiments.hpp"
#include "sqfull/format.hpp"
#include "sqfull/squarefull.hpp"

namespace sqfull {

namespace {

std::vector<std::int64_t> positive_divisors(std::int64_t v)
{
    const auto u = static_cast<std::uint64_t>(v < 0 ? -v : v);
    std::vector<std::uint64_t> divs{1};
    const Factorization f = factorize(u);
    for (const auto& [p, k] : f.factors()) {
        const std::size_t base = divs.size();
        std::uint64_t pe = 1;
        for (unsigned i = 0; i < k; ++i) {
            pe *= p.get_ui();
            for (std::size_t j = 0; j < base; ++j)
                divs.push_back(divs[j] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return {divs.begin(), divs.end()};
}

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

}  // namespace

MordellResult mordell_points(std::int64_t D, std::int64_t box, unsigned threads)
{
    if (D == 0)
        throw std::invalid_argument("mordell_points: D must be nonzero");
    if (box < 1)
        throw std::invalid_argument("mordell_points: box must be >= 1");
    if (box > 2'000'000)
        throw std::invalid_argument("mordell_points: box exceeds 2e6");

    // Smallest x with x^3 + D >= 0.
    const auto r = icbrt(-D);
    const std::int64_t x_min = std::max(-box, r.exact ? r.root : r.root + 1);
    MordellResult out{D, box, {}};
    if (x_min > box)
        return out;

    constexpr std::int64_t kChunk = 1 << 14;
    const std::size_t chunks = static_cast<std::size_t>((box - x_min) / kChunk + 1);
    auto parts = parallel_chunks(chunks, threads, [&](std::size_t k) {
        std::vector<std::pair<std::int64_t, std::int64_t>> pts;
        const std::int64_t lo = x_min + static_cast<std::int64_t>(k) * kChunk;
        const std::int64_t hi = std::min(box, lo + kChunk - 1);
        for (std::int64_t x = lo; x <= hi; ++x) {
            const __int128 v = static_cast<__int128>(x) * x * x + D;
            std::uint64_t y = 0;
            if (!is_square(v, &y) || y > static_cast<std::uint64_t>(box))
                continue;
            const auto sy = static_cast<std::int64_t>(y);
            if (y == 0) {
                pts.emplace_back(x, 0);
            } else {
                pts.emplace_back(x, -sy);
                pts.emplace_back(x, sy);
            }
        }
        return pts;
    });
    for (auto& p : parts)
        out.points.insert(out.points.end(), p.begin(), p.end());
    return out;
}

MordellScan mordell_exponent_scan(std::int64_t D_max, std::int64_t box, unsigned threads)
{
    if (D_max < 2)
        throw std::invalid_argument("mordell_exponent_scan: D_max must be >= 2");
    MordellScan scan;
    scan.box = box;
    scan.varpi0_reference = exponents().varpi0;
    // Parallel over |D|; each curve scan runs single-threaded.
    auto rows = parallel_chunks(static_cast<std::size_t>(D_max), threads, [&](std::size_t i) {
        const auto D = static_cast<std::int64_t>(i) + 1;
        MordellScanRow row;
        row.abs_D = D;
        row.count_pos = mordell_points(D, box, 1).count();
        row.count_neg = mordell_points(-D, box, 1).count();
        row.max_count = std::max(row.count_pos, row.count_neg);
        return row;
    });
    std::size_t running = 0;
    std::vector<std::pair<double, double>> series;
    for (auto& row : rows) {
        running = std::max(running, row.max_count);
        row.running_max = running;
        if (running > 0)
            series.emplace_back(static_cast<double>(row.abs_D), static_cast<double>(running));
    }
    scan.rows = std::move(rows);
    if (series.size() >= 3) {
        const FitResult fit = fit_exponent(series);
        scan.slope = fit.slope;
        scan.intercept = fit.intercept;
        scan.fitted_points = fit.samples;
    }
    return scan;
}

SubstitutionResult theorem2_substitution(const BigInt& e, const BigInt& a, const BigInt& b, const BigInt& d,
                                         const BigInt& n)
{
    SubstitutionResult out;
    const BigInt e2 = e * e;
    out.x = e2 * a * d;
    out.y = e2 * a * a * n;
    out.D = -(e2 * e2) * b * a * a * a;
    out.consistent = a * n * n == e2 * d * d * d - b;
    out.on_curve = out.y * out.y == out.x * out.x * out.x + out.D;
    return out;
}

std::vector<PellSolution> pell_family(const BigInt& limit_n)
{
    if (limit_n < 2)
        throw std::invalid_argument("pell_family: limit must be >= 2");
    std::vector<PellSolution> out;
    BigInt d = 1, k = 1;
    while (2 * d <= limit_n) {
        PellSolution sol{d, k, 2 * d};
        if (d * d - 2 * k * k != -1)
            throw std::logic_error("pell_family: recurrence left the Pell conic");
        const BigInt value = sol.n * sol.n + 4;
        if (value != 8 * k * k || !is_squarefull(value))
            throw std::logic_error("pell_family: n^2 + 4 not square-full for n = " + sol.n.get_str());
        out.push_back(std::move(sol));
        const BigInt nd = 3 * d + 4 * k;
        const BigInt nk = 2 * d + 3 * k;
        d = nd;
        k = nk;
    }
    return out;
}

std::vector<PellSolution> pell_family_from_unit_powers(const BigInt& limit_n)
{
    std::vector<PellSolution> out;
    // (u + v sqrt 2) runs over (1 + sqrt 2)^j; odd j has norm -1.
    BigInt u = 1, v = 1;
    for (unsigned j = 1;; ++j) {
        if (j % 2 == 1) {
            if (2 * u > limit_n)
                break;
            out.push_back({u, v, 2 * u});
        }
        const BigInt nu = u + 2 * v;
        const BigInt nv = u + v;
        u = nu;
        v = nv;
    }
    return out;
}

__int128 cubic_form(std::int64_t c, std::int64_t d, std::int64_t y1, std::int64_t y2)
{
    const __int128 Y1 = y1, Y2 = y2;
    return c * (3 * Y1 * Y1 * Y2 - Y2 * Y2 * Y2) + d * (Y1 * Y1 * Y1 - 3 * Y1 * Y2 * Y2);
}

CubicFormClass classify_cubic_form(std::int64_t c, std::int64_t d)
{
    if (c == 0 && d == 0)
        throw std::invalid_argument("classify_cubic_form: (c, d) must be nonzero");
    CubicFormClass cls;
    cls.c = c;
    cls.d = d;

    auto set_factor = [&](std::int64_t p, std::int64_t q) {
        cls.kind = CubicFormKind::LinearFactor;
        cls.p = p;
        cls.q = q;
        // (q y1 - p y2)(A y1^2 + B y1 y2 + E y2^2) against the coefficients
        // (d, 3c, -3d, -c) of y1^3, y1^2 y2, y1 y2^2, y2^3.
        if (q != 0) {
            cls.quad_a = Rational(big(d), big(q));
            cls.quad_b = (Rational(big(3 * c)) + big(p) * cls.quad_a) / big(q);
            cls.quad_e = (Rational(big(-3 * d)) + big(p) * cls.quad_b) / big(q);
        } else {
            cls.quad_a = Rational(big(-3 * c), big(p));
            cls.quad_b = Rational(big(3 * d), big(p));
            cls.quad_e = Rational(big(c), big(p));
        }
        cls.quad_a.canonicalize();
        cls.quad_b.canonicalize();
        cls.quad_e.canonicalize();
        cls.cofactor_discriminant = cls.quad_b * cls.quad_b - 4 * cls.quad_a * cls.quad_e;
        const BigInt diff = big(p) * p - big(q) * q;
        cls.predicted_discriminant = 3 * diff * diff;
    };

    if (d == 0) {
        // P = c y2 (3y1^2 - y2^2).
        set_factor(-1, 0);
        return cls;
    }
    if (c == 0) {
        set_factor(0, 1);
        return cls;
    }
    const auto num = positive_divisors(c);
    const auto den = positive_divisors(d);
    for (std::int64_t q : den) {
        for (std::int64_t abs_p : num) {
            for (std::int64_t p : {abs_p, -abs_p}) {
                if (std::gcd(abs_p, q) != 1)
                    continue;
                const BigInt P = big(p), Q = big(q);
                const BigInt val = big(d) * P * P * P + 3 * big(c) * P * P * Q - 3 * big(d) * P * Q * Q - big(c) * Q * Q * Q;
                if (val == 0) {
                    set_factor(p, q);
                    return cls;
                }
            }
        }
    }
    return cls;
}

bool verify_factorization(const CubicFormClass& cls)
{
    if (cls.kind != CubicFormKind::LinearFactor)
        return false;
    const Rational p = big(cls.p), q = big(cls.q);
    const Rational& A = cls.quad_a;
    const Rational& B = cls.quad_b;
    const Rational& E = cls.quad_e;
    return q * A == big(cls.d) && q * B - p * A == big(3 * cls.c) && q * E - p * B == big(-3 * cls.d) &&
           -p * E == big(-cls.c);
}

ThueCount thue_count(std::int64_t c, std::int64_t d, std::int64_t alpha, std::int64_t box, unsigned threads)
{
    if (c == 0 && d == 0)
        throw std::invalid_argument("thue_count: (c, d) must be nonzero");
    if (alpha == 0)
        throw std::invalid_argument("thue_count: alpha must be nonzero");
    if (box < 0)
        throw std::invalid_argument("thue_count: box must be nonnegative");

    const std::size_t rows = static_cast<std::size_t>(2 * box + 1);
    auto parts = parallel_chunks(rows, threads, [&](std::size_t i) {
        const std::int64_t y1 = static_cast<std::int64_t>(i) - box;
        std::pair<std::size_t, std::size_t> tally{0, 0};
        for (std::int64_t y2 = -box; y2 <= box; ++y2) {
            if (cubic_form(c, d, y1, y2) != alpha)
                continue;
            ++tally.first;
            if (std::gcd(y1, y2) == 1)
                ++tally.second;
        }
        return tally;
    });
    ThueCount out;
    for (const auto& [all, prim] : parts) {
        out.all += all;
        out.primitive += prim;
    }
    out.reference = std::pow(3.0, 1.0 + omega(static_cast<std::uint64_t>(alpha < 0 ? -alpha : alpha)));
    return out;
}

std::size_t pell_like_count(std::int64_t gamma, std::int64_t m, std::int64_t box)
{
    if (box < 1)
        throw std::invalid_argument("pell_like_count: box must be >= 1");
    std::size_t count = 0;
    for (std::int64_t z2 = -box; z2 <= box; ++z2) {
        const __int128 sq = static_cast<__int128>(m) + static_cast<__int128>(gamma) * z2 * z2;
        std::uint64_t z1 = 0;
        if (!is_square(sq, &z1) || z1 > static_cast<std::uint64_t>(box))
            continue;
        count += z1 == 0 ? 1 : 2;
    }
    return count;
}

void write_mordell_csv(std::ostream& os, std::span<const MordellScanRow> rows)
{
    os << "D,count\n";
    for (const auto& r : rows)
        os << r.abs_D << ',' << r.max_count << '\n';
}

void write_pell_csv(std::ostream& os, std::span<const PellSolution> rows)
{
    os << "d,k,n\n";
    for (const auto& r : rows)
        os << r.d.get_str() << ',' << r.k.get_str() << ',' << r.n.get_str() << '\n';
}

}  // namespace sqfull
