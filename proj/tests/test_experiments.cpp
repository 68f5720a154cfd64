#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sqfull/experiments.hpp"
#include "sqfull/quadratic.hpp"

using namespace sqfull;

TEST_CASE("exponent constants")
{
    const auto x = exponents();
    CHECK(std::fabs(x.varpi0 - 0.1688) < 1e-3);
    CHECK(std::fabs(x.varpi_thm2 - 0.4769) < 1e-3);
    CHECK(x.psi_star == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(x.varpi_thm1 == doctest::Approx(0.29).epsilon(1e-9));
    CHECK(x.psi_exact == Rational(2, 5));
    CHECK(x.varpi_thm1_exact == Rational(29, 100));
    CHECK(x.e_opt_exponent == doctest::Approx(2.0 / (5.0 + 12.0 * x.varpi0)));

    // beta from its definition, evaluated independently in long double
    const long double r3 = std::sqrt(3.0L);
    const long double u = (2 + r3) / (2 * r3), v = (2 - r3) / (2 * r3);
    const long double beta = u * std::log(u) - v * std::log(v);
    CHECK(static_cast<double>(beta) == doctest::Approx(x.beta).epsilon(1e-12));

    const auto coarse = exponents(1e-5);
    CHECK(std::fabs(coarse.varpi_thm1 - x.varpi_thm1) < 1e-6);
    CHECK(std::fabs(coarse.psi_star - x.psi_star) < 1e-6);
}

TEST_CASE("psi objective")
{
    CHECK(psi_objective(Rational(2, 5)) == Rational(29, 100));
    CHECK(psi_objective(0.4) == doctest::Approx(0.29));
    CHECK(psi_objective(Rational(0)) == 0);
    CHECK_THROWS_AS(maximize_psi(0.0), std::invalid_argument);
    for (int i = 0; i <= 1000; ++i)
        CHECK(psi_objective(i / 1000.0) <= 0.29 + 1e-15);
}

TEST_CASE("cell exponent tradeoff")
{
    const auto z = theorem2_tradeoff(0.0);
    CHECK(z.e_exponent == doctest::Approx(0.4));
    CHECK(z.value == doctest::Approx(0.4));
    const auto t = theorem2_tradeoff(0.168862);
    CHECK(std::fabs(t.value - 0.476904) < 1e-5);
    for (double w : {0.0, 0.1, 0.168842, 0.3})
        CHECK(std::fabs(theorem2_tradeoff(w).grid_value - theorem2_tradeoff(w).value) < 1e-4);
    CHECK_THROWS_AS(theorem2_tradeoff(-0.1), std::invalid_argument);
}

TEST_CASE("abc chain")
{
    const auto ch = abc_chain(1, 4, 5, 2, 14);
    CHECK(ch.ell == 2);
    CHECK(ch.n1 == 7);
    CHECK(ch.b1 == 2);
    CHECK(ch.ell1 == 2);
    CHECK(ch.b2 == 1);
    CHECK(ch.ell2 == 1);
    CHECK(ch.lhs == 50);
    CHECK(ch.rhs == 50);
    CHECK(ch.identity_holds);
    CHECK(ch.coprime_terms);

    // 3 = 1^2 + 2 with gcd(b, n) = 1
    const auto plain = abc_chain(3, 2, 1, 1, 1);
    CHECK(plain.ell == 1);
    CHECK(plain.ell1 == 1);
    CHECK(plain.lhs == 3);
    CHECK(plain.identity_holds);
    CHECK_THROWS_AS(abc_chain(1, 4, 5, 2, 13), DomainError);

    CHECK(abc_quality(1, 8, 9) == doctest::Approx(std::log(9.0) / std::log(6.0)));
    CHECK(abc_quality(1, 8, 9) == doctest::Approx(1.2263).epsilon(1e-4));
}

TEST_CASE("abc chain over x^2 + 4 solutions")
{
    for (const auto& t : enumerate_triples({1, 0, 4}, 1000000)) {
        const auto ch = abc_chain(1, 4, t.e, t.d, t.n);
        REQUIRE(ch.identity_holds);
        BigInt g;
        mpz_gcd(g.get_mpz_t(), ch.n1.get_mpz_t(), ch.b1.get_mpz_t());
        REQUIRE(g == 1);
    }
}

TEST_CASE("random family averages")
{
    const auto zero = random_family_average(0, 5);
    CHECK(zero.total == 0);
    CHECK(zero.family_size == 1);
    for (std::int64_t H = 0; H <= 5; ++H)
        for (std::uint64_t N : {1ULL, 7ULL, 20ULL})
            REQUIRE(random_family_average(H, N).total == random_family_average_naive(H, N).total);

    // H = 2, N = 10 by direct polynomial loop through count_squarefull_values
    std::uint64_t total = 0;
    for (int a2 = -2; a2 <= 2; ++a2)
        for (int a1 = -2; a1 <= 2; ++a1)
            for (int a0 = -2; a0 <= 2; ++a0)
                total += count_squarefull_values({a2, a1, a0}, 10, 1);
    const auto f = random_family_average(2, 10);
    CHECK(f.total == total);
    CHECK(f.family_size == 125);
    CHECK(f.average == doctest::Approx(static_cast<double>(total) / 125));
    CHECK_THROWS_AS(random_family_average(-1, 5), std::invalid_argument);
}

TEST_CASE("exponent fit")
{
    std::vector<std::pair<double, double>> lin{{1, 1}, {2, 2}, {5, 5}, {10, 10}};
    CHECK(std::fabs(fit_exponent(lin).slope - 1.0) < 1e-9);
    std::vector<std::pair<double, double>> root;
    for (double x = 100; x <= 1e6; x *= 10)
        root.emplace_back(x, std::sqrt(x));
    const auto r = fit_exponent(root);
    CHECK(std::fabs(r.slope - 0.5) < 1e-6);
    CHECK(r.samples == 5);
    std::vector<std::pair<double, double>> two{{1, 1}, {2, 2}};
    CHECK_THROWS_AS(fit_exponent(two), std::invalid_argument);
    std::vector<std::pair<double, double>> flat{{2, 1}, {2, 2}, {2, 3}};
    CHECK_THROWS_AS(fit_exponent(flat), std::invalid_argument);
    std::vector<std::pair<double, double>> neg{{1, 1}, {2, -2}, {3, 3}};
    CHECK_THROWS_AS(fit_exponent(neg), std::invalid_argument);
}

TEST_CASE("series csv")
{
    std::istringstream is("x,y\n1,2\n3,4\n\n5,6\n");
    const auto s = read_series_csv(is);
    REQUIRE(s.size() == 3);
    CHECK(s[2] == std::pair{5.0, 6.0});
    std::istringstream bad("x,y\n1,2\nfoo,3\n");
    CHECK_THROWS_AS(read_series_csv(bad), std::invalid_argument);
}
