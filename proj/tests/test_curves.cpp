#include <doctest.h>

#include <random>
#include <sstream>

#include "sqfull/curves.hpp"
#include "sqfull/squarefull.hpp"

using namespace sqfull;

namespace {

std::size_t brute_mordell(std::int64_t D, std::int64_t box)
{
    std::size_t c = 0;
    for (std::int64_t x = -box; x <= box; ++x) {
        const __int128 v = static_cast<__int128>(x) * x * x + D;
        if (v < 0)
            continue;
        for (std::int64_t y = 0; y <= box; ++y) {
            const __int128 yy = static_cast<__int128>(y) * y;
            if (yy > v)
                break;
            if (yy == v)
                c += y ? 2 : 1;
        }
    }
    return c;
}

__int128 im_product(std::int64_t c, std::int64_t d, std::int64_t y1, std::int64_t y2)
{
    // Im((c + d i)(y1 + y2 i)^3)
    const __int128 Y1 = y1, Y2 = y2;
    const __int128 re3 = Y1 * Y1 * Y1 - 3 * Y1 * Y2 * Y2;
    const __int128 im3 = 3 * Y1 * Y1 * Y2 - Y2 * Y2 * Y2;
    return static_cast<__int128>(c) * im3 + static_cast<__int128>(d) * re3;
}

}  // namespace

TEST_CASE("mordell points")
{
    using P = std::vector<std::pair<std::int64_t, std::int64_t>>;
    const auto r1 = mordell_points(1, 100);
    CHECK(r1.points == P{{-1, 0}, {0, -1}, {0, 1}, {2, -3}, {2, 3}});
    const auto r8 = mordell_points(8, 500);
    CHECK(r8.points == P{{-2, 0}, {1, -3}, {1, 3}, {2, -4}, {2, 4}, {46, -312}, {46, 312}});
    CHECK(mordell_points(7, 10000).count() == 0);
    CHECK_THROWS_AS(mordell_points(0, 10), std::invalid_argument);
    for (std::int64_t D : {-26LL, -2LL, 17LL, 24LL, -432LL})
        CHECK(mordell_points(D, 300).count() == brute_mordell(D, 300));
    const auto sym = mordell_points(17, 5000);
    for (const auto& [x, y] : sym.points)
        CHECK(std::binary_search(sym.points.begin(), sym.points.end(), std::pair{x, -y}));
}

TEST_CASE("mordell exponent scan")
{
    const auto s = mordell_exponent_scan(100, 2000);
    REQUIRE(s.rows.size() == 100);
    CHECK(s.rows[0].abs_D == 1);
    CHECK(s.rows[0].count_pos == 5);
    CHECK(s.varpi0_reference == doctest::Approx(0.1688).epsilon(1e-2));
    CHECK(mordell_exponent_scan(2, 100).rows.size() == 2);
    std::ostringstream os;
    write_mordell_csv(os, s.rows);
    CHECK(os.str().rfind("D,count\n", 0) == 0);
}

TEST_CASE("mordell substitution")
{
    const auto r = theorem2_substitution(5, 1, 4, 2, 14);
    CHECK(r.consistent);
    CHECK(r.on_curve);
    CHECK(r.x == 50);
    CHECK(r.y == 350);
    CHECK(r.D == -2500);
    CHECK(r.y * r.y == r.x * r.x * r.x + r.D);
    CHECK_FALSE(theorem2_substitution(1, 1, -1, 1, 0).consistent);
    CHECK_FALSE(theorem2_substitution(5, 1, 4, 2, 13).consistent);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> small(1, 50);
    std::uniform_int_distribution<int> sign(-30, 30);
    for (int i = 0; i < 500; ++i) {
        const BigInt e = small(rng), a = small(rng), d = small(rng), n = sign(rng);
        const BigInt b = e * e * d * d * d - a * n * n;
        const auto s = theorem2_substitution(e, a, b, d, n);
        REQUIRE(s.consistent);
        REQUIRE(s.on_curve);
    }
}

TEST_CASE("pell family")
{
    const auto f = pell_family(500);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == PellSolution{1, 1, 2});
    CHECK(f[1].n == 14);
    CHECK(f[2].n == 82);
    CHECK(f[3].n == 478);
    CHECK(pell_family(2).size() == 1);
    const BigInt limit("1000000000000");
    const auto big = pell_family(limit);
    CHECK(big == pell_family_from_unit_powers(limit));
    for (const auto& s : big) {
        CHECK(s.d * s.d - 2 * s.k * s.k == -1);
        const BigInt v = s.n * s.n + 4;
        CHECK(v == 8 * s.k * s.k);
        CHECK(is_squarefull(v));
    }
    std::ostringstream os;
    write_pell_csv(os, f);
    CHECK(os.str() == "d,k,n\n1,1,2\n7,5,14\n41,29,82\n239,169,478\n");
}

TEST_CASE("cubic form classification")
{
    const auto a = classify_cubic_form(0, 1);
    CHECK(a.kind == CubicFormKind::LinearFactor);
    CHECK(verify_factorization(a));
    const auto b = classify_cubic_form(1, 0);
    CHECK(b.kind == CubicFormKind::LinearFactor);
    CHECK(verify_factorization(b));
    const auto c = classify_cubic_form(1, 1);
    CHECK(c.kind == CubicFormKind::LinearFactor);
    CHECK(verify_factorization(c));
    CHECK(classify_cubic_form(2, 1).kind == CubicFormKind::Irreducible);
    CHECK_THROWS_AS(classify_cubic_form(0, 0), std::invalid_argument);
    for (std::int64_t cc = -6; cc <= 6; ++cc)
        for (std::int64_t dd = -6; dd <= 6; ++dd)
            if ((cc || dd) && classify_cubic_form(cc, dd).kind == CubicFormKind::LinearFactor)
                REQUIRE(verify_factorization(classify_cubic_form(cc, dd)));
}

TEST_CASE("cubic form matches imaginary part")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> r(-1000, 1000);
    for (int i = 0; i < 10000; ++i) {
        const int c = r(rng), d = r(rng), y1 = r(rng), y2 = r(rng);
        REQUIRE(cubic_form(c, d, y1, y2) == im_product(c, d, y1, y2));
        REQUIRE(cubic_form(c, d, -y1, -y2) == -cubic_form(c, d, y1, y2));
    }
}

TEST_CASE("thue counts")
{
    std::size_t brute = 0;
    for (int y1 = -100; y1 <= 100; ++y1)
        for (int y2 = -100; y2 <= 100; ++y2)
            brute += cubic_form(2, 1, y1, y2) == 2;
    CHECK(thue_count(2, 1, 2, 100).all == brute);
    const auto t = thue_count(0, 1, 1, 10);
    CHECK(t.all >= 1);
    CHECK(t.all == thue_count(0, 1, -1, 10).all);
    CHECK(t.reference == doctest::Approx(3.0));
    CHECK_THROWS_AS(thue_count(1, 1, 0, 10), std::invalid_argument);
}

TEST_CASE("pell-like counts")
{
    CHECK(pell_like_count(-1, 25, 10) == 12);
    CHECK(pell_like_count(2, -1, 50) == 12);
    CHECK(pell_like_count(0, 4, 3) == 14);
}
