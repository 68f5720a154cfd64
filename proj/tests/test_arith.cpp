#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sqfull/arith.hpp"

using namespace sqfull;

namespace {

// Plain trial division, independent of the prime table.
std::vector<std::pair<std::uint64_t, unsigned>> naive_factor(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        if (k)
            out.emplace_back(p, k);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

std::uint64_t divisor_count(std::uint64_t n)
{
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        c += n % k == 0;
    return c;
}

// Partial sums of the eta series with plain repeated averaging; slow but simple.
double eta_by_averaging(double s, int terms)
{
    std::vector<double> partial(terms);
    double acc = 0;
    for (int k = 1; k <= terms; ++k) {
        acc += ((k % 2) ? 1.0 : -1.0) * std::pow(static_cast<double>(k), -s);
        partial[k - 1] = acc;
    }
    for (int round = 0; round < terms - 1; ++round)
        for (int i = 0; i + 1 < terms - round; ++i)
            partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    return partial[0];
}

double zeta_oracle(double s) { return eta_by_averaging(s, 60) / (1.0 - std::pow(2.0, 1.0 - s)); }

}  // namespace

TEST_CASE("factorize small values")
{
    const auto f72 = factorize(72);
    REQUIRE(f72.size() == 2);
    CHECK(f72.factors()[0] == PrimePower{2, 3});
    CHECK(f72.factors()[1] == PrimePower{3, 2});
    CHECK(factorize(1).empty());
    const auto f97 = factorize(97);
    REQUIRE(f97.size() == 1);
    CHECK(f97.factors()[0] == PrimePower{97, 1});
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorization reconstructs n and agrees with naive trial division")
{
    for (std::uint64_t n = 1; n <= 100000; ++n) {
        const auto f = factorize(n);
        REQUIRE(f.value() == n);
        const auto ref = naive_factor(n);
        REQUIRE(f.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            REQUIRE(f.factors()[i].prime == ref[i].first);
            REQUIRE(f.factors()[i].exponent == ref[i].second);
        }
    }
}

TEST_CASE("large and arbitrary precision factorization")
{
    const std::uint64_t p = 1000000007ULL, q = 998244353ULL;
    const auto f = factorize(p * q);
    REQUIRE(f.size() == 2);
    CHECK(f.factors()[0].prime == q);
    CHECK(f.factors()[1].prime == p);

    // 2^64 + 1 = 274177 * 67280421310721
    BigInt big = 1;
    big <<= 64;
    big += 1;
    const auto fb = factorize(big);
    REQUIRE(fb.size() == 2);
    CHECK(fb.factors()[0].prime == 274177);
    CHECK(fb.factors()[1].prime == BigInt("67280421310721"));
    CHECK(fb.value() == big);

    // 8 k^2 with k near 10^12
    const BigInt k("816646167923");
    const auto fk = factorize(BigInt(8 * k * k));
    CHECK(fk.value() == 8 * k * k);
    CHECK(fk.is_squarefull());
}

TEST_CASE("primality")
{
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(1000000007ULL));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(is_prime(18446744073709551557ULL));
    CHECK(is_prime(BigInt("170141183460469231731687303715884105727")));
}

TEST_CASE("multiplicative functions")
{
    CHECK(mu(12) == 0);
    CHECK(mu(30) == -1);
    CHECK(mu(1) == 1);
    CHECK(rad(72) == 6);
    CHECK(tau(200) == 12);
    CHECK(tau(200) == divisor_count(200));
    CHECK(omega(200) == 2);
    for (std::uint64_t n = 1; n <= 2000; ++n)
        REQUIRE(tau(n) == divisor_count(n));
}

TEST_CASE("multiplicativity over random coprime pairs")
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::uint64_t> pick(1, 1000000);
    int tested = 0;
    while (tested < 1000) {
        const auto m = pick(rng), n = pick(rng);
        if (gcd_u64(m, n) != 1)
            continue;
        ++tested;
        REQUIRE(mu(m * n) == mu(m) * mu(n));
        REQUIRE(tau(m * n) == tau(m) * tau(n));
        REQUIRE(rad(m * n) == rad(m) * rad(n));
        REQUIRE(omega(m * n) == omega(m) + omega(n));
    }
}

TEST_CASE("zeta closed forms and continuation")
{
    const double pi = std::numbers::pi;
    CHECK(zeta(2.0) == doctest::Approx(pi * pi / 6).epsilon(1e-12));
    CHECK(zeta(4.0) == doctest::Approx(std::pow(pi, 4) / 90).epsilon(1e-12));
    CHECK(std::fabs(zeta(1.5) / zeta(3.0) - 2.17326) < 1e-4);
    CHECK(std::fabs(zeta(2.0 / 3.0) - (-2.4476)) < 1e-3);
    for (double s : {2.0 / 3.0, 0.5, 1.5, 2.0, 3.0})
        CHECK(zeta(s) == doctest::Approx(zeta_oracle(s)).epsilon(1e-9));
    CHECK_THROWS_AS(zeta(1.0), std::invalid_argument);
    CHECK_THROWS_AS(zeta(0.0), std::invalid_argument);
    CHECK_THROWS_AS(zeta(-1.0), std::invalid_argument);
}

TEST_CASE("two square representations")
{
    using V = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
    CHECK(two_square_representations(5) == V{{1, 2}});
    CHECK(two_square_representations(25) == V{{0, 5}, {3, 4}});
    CHECK(two_square_representations(3).empty());
    CHECK(two_square_representations(1) == V{{0, 1}});
    for (std::uint64_t m = 1; m <= 10000; ++m) {
        V brute;
        for (std::uint64_t x = 0; 2 * x * x <= m; ++x) {
            const std::uint64_t rest = m - x * x;
            std::uint64_t y = 0;
            while ((y + 1) * (y + 1) <= rest)
                ++y;
            if (y * y == rest)
                brute.emplace_back(x, y);
        }
        REQUIRE(two_square_representations(m) == brute);
    }
}

TEST_CASE("integer roots")
{
    const auto r = isqrt(std::uint64_t{97344});
    CHECK(r.root == 312);
    CHECK(r.exact);
    CHECK(isqrt(std::uint64_t{2}).root == 1);
    CHECK_FALSE(isqrt(std::uint64_t{2}).exact);
    CHECK(isqrt(~std::uint64_t{0}).root == 4294967295ULL);
    CHECK(icbrt(std::int64_t{8}).root == 2);
    CHECK(icbrt(std::int64_t{8}).exact);
    CHECK(icbrt(std::int64_t{-8}).root == -2);
    CHECK(icbrt(std::int64_t{-9}).root == -3);
    CHECK_FALSE(icbrt(std::int64_t{-9}).exact);
    CHECK(icbrt(std::int64_t{26}).root == 2);
    CHECK_THROWS_AS(isqrt(BigInt(-1)), std::invalid_argument);
    CHECK(isqrt(BigInt("1000000000000000000000000")).root == BigInt("1000000000000"));
    CHECK(icbrt(BigInt(-27)).root == -3);
    std::uint64_t root = 0;
    CHECK(is_square(static_cast<__int128>(122500), &root));
    CHECK(root == 350);
    CHECK_FALSE(is_square(-4));
}
