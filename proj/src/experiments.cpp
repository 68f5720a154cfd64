#include "sqfull/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "sqfull/squarefull.hpp"

namespace sqfull {

double psi_objective(double psi)
{
    return 0.375 * psi * (1.0 - psi) + std::min(psi / 2.0, (1.0 - psi) / 3.0);
}

Rational psi_objective(const Rational& psi)
{
    const Rational one = 1;
    const Rational left = psi / 2;
    const Rational right = (one - psi) / 3;
    return Rational(3, 8) * psi * (one - psi) + (left < right ? left : right);
}

std::pair<double, double> maximize_psi(double step)
{
    if (!(step > 0.0) || step > 1.0)
        throw std::invalid_argument("maximize_psi: step must lie in (0, 1]");
    const auto steps = static_cast<std::int64_t>(std::llround(1.0 / step));
    double best_psi = 0.0, best = psi_objective(0.0);
    for (std::int64_t i = 1; i <= steps; ++i) {
        const double psi = static_cast<double>(i) / static_cast<double>(steps);
        const double v = psi_objective(psi);
        if (v > best) {
            best = v;
            best_psi = psi;
        }
    }
    return {best_psi, best};
}

ExponentSet exponents(double grid_step)
{
    ExponentSet x;
    const double r3 = std::sqrt(3.0);
    const double u = (2.0 + r3) / (2.0 * r3);
    const double v = (2.0 - r3) / (2.0 * r3);
    x.beta = u * std::log(u) - v * std::log(v);
    x.varpi0 = 2.0 * x.beta / (3.0 * std::log(3.0));
    x.varpi_thm2 = 2.0 * (1.0 + 4.0 * x.varpi0) / (5.0 + 12.0 * x.varpi0);
    x.e_opt_exponent = 2.0 / (5.0 + 12.0 * x.varpi0);
    std::tie(x.psi_star, x.varpi_thm1) = maximize_psi(grid_step);
    // The grid optimum sits at the kink psi/2 = (1 - psi)/3.
    x.psi_exact = Rational(2, 5);
    x.varpi_thm1_exact = psi_objective(x.psi_exact);
    return x;
}

Tradeoff theorem2_tradeoff(double varpi0, double grid_step)
{
    if (varpi0 < 0.0)
        throw std::invalid_argument("theorem2_tradeoff: varpi0 must be nonnegative");
    Tradeoff t;
    const double growth = 1.0 + 4.0 * varpi0;
    t.e_exponent = 2.0 / (5.0 + 12.0 * varpi0);
    t.value = 2.0 * growth / (5.0 + 12.0 * varpi0);

    const auto steps = static_cast<std::int64_t>(std::llround(1.0 / grid_step));
    t.grid_value = -1.0;
    for (std::int64_t i = 0; i <= steps; ++i) {
        const double e = static_cast<double>(i) / static_cast<double>(steps);
        const double d = (2.0 - 2.0 * e) / 3.0;
        const double v = std::min(d, e * growth);
        if (v > t.grid_value) {
            t.grid_value = v;
            t.grid_e_exponent = e;
        }
    }
    return t;
}

double abc_quality(const BigInt& a, const BigInt& b, const BigInt& c)
{
    if (a <= 0 || b <= 0 || c <= 0)
        throw std::invalid_argument("abc_quality: terms must be positive");
    const BigInt r = factorize(BigInt(a * b * c)).rad();
    return std::log(c.get_d()) / std::log(r.get_d());
}

AbcChain abc_chain(const BigInt& c, const BigInt& b, const BigInt& e, const BigInt& d, const BigInt& n)
{
    AbcChain ch;
    ch.c = c;
    ch.b = b;
    ch.e = e;
    ch.d = d;
    ch.n = n;
    const BigInt value = c * e * e * d * d * d;
    if (value != n * n + b)
        throw DomainError("abc_chain: c e^2 d^3 != n^2 + b");
    if (b == 0)
        throw std::invalid_argument("abc_chain: b must be nonzero");

    mpz_gcd(ch.ell.get_mpz_t(), b.get_mpz_t(), n.get_mpz_t());
    ch.n1 = n / ch.ell;
    ch.b1 = b / ch.ell;
    mpz_gcd(ch.ell1.get_mpz_t(), ch.ell.get_mpz_t(), ch.b1.get_mpz_t());
    ch.b2 = ch.b1 / ch.ell1;
    ch.ell2 = ch.ell / ch.ell1;

    const BigInt denom = ch.ell * ch.ell1;
    if (!mpz_divisible_p(value.get_mpz_t(), denom.get_mpz_t()))
        throw std::logic_error("abc_chain: ell * ell1 does not divide c e^2 d^3");
    ch.lhs = value / denom;
    ch.rhs = ch.ell2 * ch.n1 * ch.n1 + ch.b2;
    ch.identity_holds = ch.lhs == ch.rhs;

    // Reduced triple x + y = z with positive terms.
    const BigInt A = ch.ell2 * ch.n1 * ch.n1;
    BigInt x, y, z;
    if (ch.b2 > 0) {
        x = A, y = ch.b2, z = ch.lhs;
    } else {
        x = ch.lhs, y = -ch.b2, z = A;
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    ch.coprime_terms = x > 0 && y > 0 && g == 1;
    if (ch.coprime_terms)
        ch.quality = abc_quality(x, y, z);
    return ch;
}

namespace {

double bound_ratio(std::uint64_t total, std::int64_t H, std::uint64_t N)
{
    const double h = static_cast<double>(H), n = static_cast<double>(N);
    const double denom = std::pow(h, 2.5) * n + h * h * std::pow(n, 5.0 / 3.0);
    return denom > 0.0 ? static_cast<double>(total) / denom : 0.0;
}

FamilyAverage finish(std::int64_t H, std::uint64_t N, std::uint64_t total)
{
    FamilyAverage out;
    out.H = H;
    out.N = N;
    out.total = total;
    const auto side = static_cast<std::uint64_t>(2 * H + 1);
    out.family_size = side * side * side;
    out.average = static_cast<double>(total) / static_cast<double>(out.family_size);
    out.bound_ratio = bound_ratio(total, H, N);
    return out;
}

void check_family_args(std::int64_t H, std::uint64_t N)
{
    if (H < 0)
        throw std::invalid_argument("random_family_average: H must be nonnegative");
    if (N == 0)
        throw std::invalid_argument("random_family_average: N must be >= 1");
    if (N > 1'000'000 || H > 1'000'000)
        throw std::invalid_argument("random_family_average: parameters exceed desk scale");
}

}  // namespace

FamilyAverage random_family_average(std::int64_t H, std::uint64_t N, unsigned threads)
{
    check_family_args(H, N);
    const __int128 max_value = static_cast<__int128>(H) * (1 + N + static_cast<__int128>(N) * N);
    if (max_value > static_cast<__int128>(1) << 50)
        throw std::invalid_argument("random_family_average: value range too large");
    const auto sqfull = sieve_squarefull(std::max<std::uint64_t>(1, static_cast<std::uint64_t>(max_value)), threads);
    auto count_upto = [&](__int128 x) -> std::uint64_t {
        if (x < 1)
            return 0;
        return static_cast<std::uint64_t>(
            std::upper_bound(sqfull.begin(), sqfull.end(), static_cast<std::uint64_t>(x)) - sqfull.begin());
    };

    const auto side = static_cast<std::size_t>(2 * H + 1);
    auto parts = parallel_chunks(side, threads, [&](std::size_t i) {
        const std::int64_t a2 = static_cast<std::int64_t>(i) - H;
        std::uint64_t sum = 0;
        for (std::int64_t a1 = -H; a1 <= H; ++a1) {
            for (std::uint64_t n = 1; n <= N; ++n) {
                const __int128 nn = n;
                const __int128 base = a1 * nn + a2 * nn * nn;
                sum += count_upto(base + H) - count_upto(base - H - 1);
            }
        }
        return sum;
    });
    std::uint64_t total = 0;
    for (auto s : parts)
        total += s;
    return finish(H, N, total);
}

FamilyAverage random_family_average_naive(std::int64_t H, std::uint64_t N, unsigned threads)
{
    check_family_args(H, N);
    const auto side = static_cast<std::size_t>(2 * H + 1);
    auto parts = parallel_chunks(side, threads, [&](std::size_t i) {
        const std::int64_t a2 = static_cast<std::int64_t>(i) - H;
        std::uint64_t sum = 0;
        for (std::int64_t a1 = -H; a1 <= H; ++a1) {
            for (std::int64_t a0 = -H; a0 <= H; ++a0) {
                for (std::uint64_t n = 1; n <= N; ++n) {
                    const __int128 nn = n;
                    const __int128 v = a0 + a1 * nn + a2 * nn * nn;
                    if (v > 0 && factorize(static_cast<std::uint64_t>(v)).is_squarefull())
                        ++sum;
                }
            }
        }
        return sum;
    });
    std::uint64_t total = 0;
    for (auto s : parts)
        total += s;
    return finish(H, N, total);
}

FitResult fit_exponent(std::span<const std::pair<double, double>> series)
{
    if (series.size() < 3)
        throw std::invalid_argument("fit_exponent: need at least 3 points");
    double sx = 0, sy = 0;
    for (const auto& [x, y] : series) {
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("fit_exponent: x and y must be positive");
        sx += std::log(x);
        sy += std::log(y);
    }
    const double n = static_cast<double>(series.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : series) {
        const double lx = std::log(x) - mx, ly = std::log(y) - my;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    if (sxx <= 0.0)
        throw std::invalid_argument("fit_exponent: degenerate series (all x equal)");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.samples = series.size();
    for (const auto& [x, y] : series) {
        const double r = std::log(y) - (fit.intercept + fit.slope * std::log(x));
        fit.residual_sum += r * r;
    }
    return fit;
}

std::vector<std::pair<double, double>> read_series_csv(std::istream& is)
{
    std::vector<std::pair<double, double>> out;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("read_series_csv: expected x,y");
        try {
            std::size_t used = 0;
            const double x = std::stod(line.substr(0, comma), &used);
            const double y = std::stod(line.substr(comma + 1));
            out.emplace_back(x, y);
        } catch (const std::invalid_argument&) {
            if (!first)
                throw std::invalid_argument("read_series_csv: malformed row '" + line + "'");
        }
        first = false;
    }
    return out;
}

}  // namespace sqfull
