#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sqfull/arith.hpp"
#include "sqfull/squarefull.hpp"

using namespace sqfull;

namespace {

bool squarefull_by_division(std::uint64_t n)
{
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        if (n % (p * p))
            return false;
        while (n % p == 0)
            n /= p;
    }
    return n == 1;
}

std::vector<std::uint64_t> filter_squarefull(std::uint64_t limit)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1; n <= limit; ++n)
        if (squarefull_by_division(n))
            out.push_back(n);
    return out;
}

}  // namespace

TEST_CASE("membership")
{
    CHECK(is_squarefull(1));
    CHECK(is_squarefull(8));
    CHECK_FALSE(is_squarefull(12));
    CHECK(is_squarefull(200));
    CHECK_FALSE(is_squarefull(0));
    CHECK(is_squarefull(BigInt("1000000000000000000000000")));
    for (std::uint64_t n = 1; n <= 20000; ++n)
        REQUIRE(is_squarefull(n) == squarefull_by_division(n));
}

TEST_CASE("decomposition")
{
    CHECK(decompose_e2d3(72) == SquarefullDecomposition{72, 3, 2});
    CHECK(decompose_e2d3(1) == SquarefullDecomposition{1, 1, 1});
    CHECK(decompose_e2d3(432) == SquarefullDecomposition{432, 4, 3});
    CHECK_THROWS_AS(decompose_e2d3(12), std::invalid_argument);
    CHECK_FALSE(try_decompose_e2d3(12).has_value());
    const auto big = decompose_e2d3(BigInt("200"));
    CHECK(big.e == 5);
    CHECK(big.d == 2);
}

TEST_CASE("sieve against filter")
{
    CHECK(sieve_squarefull(50) == std::vector<std::uint64_t>{1, 4, 8, 9, 16, 25, 27, 32, 36, 49});
    CHECK(sieve_squarefull(100).size() == 14);
    CHECK(sieve_squarefull(3) == std::vector<std::uint64_t>{1});
    CHECK(sieve_squarefull(100000, 1) == filter_squarefull(100000));
    CHECK(sieve_squarefull(100000, 7) == filter_squarefull(100000));
}

TEST_CASE("decomposition round trip to 10^6")
{
    const auto rows = sieve_decompositions(1000000);
    for (const auto& r : rows) {
        REQUIRE(r.e * r.e * r.d * r.d * r.d == r.n);
        REQUIRE(mu(r.d) != 0);
        REQUIRE(decompose_e2d3(r.n) == r);
    }
}

TEST_CASE("count with prediction")
{
    const auto r = count_with_prediction(100);
    CHECK(r.count == 14);
    // 2.1732543 * 10 - 1.4879507 * 100^{1/3}
    CHECK(r.prediction == doctest::Approx(21.732543 - 1.4879507 * std::cbrt(100.0)).epsilon(1e-6));
    CHECK(count_with_prediction(1).count == 1);
    for (std::uint64_t N : {10000ULL, 100000ULL, 1000000ULL}) {
        const auto rep = count_with_prediction(N);
        CHECK(std::fabs(rep.deviation) <= 5 * std::pow(static_cast<double>(N), 1.0 / 6));
    }
}

TEST_CASE("csv output")
{
    std::ostringstream os;
    const auto rows = sieve_decompositions(10);
    write_decompositions_csv(os, rows);
    CHECK(os.str() == "n,e,d\n1,1,1\n4,2,1\n8,1,2\n9,3,1\n");
}
