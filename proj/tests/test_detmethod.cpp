#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "sqfull/detmethod.hpp"

using namespace sqfull;

namespace {

std::uint64_t mesh_oracle(double logE, double logD, double logN, double eta, std::uint64_t D)
{
    const double threshold = 1.125 * (1 + eta) * logE * logD / logN;
    std::uint64_t M = D;
    while (std::log(static_cast<double>(M)) < threshold)
        ++M;
    return M;
}

// Points with s = (m^2 - n^2) / 2mn lie on (w^2 - 1) q_a(s) + 2 w q_b(s) = 0
// with rational w, since q_a^2 + q_b^2 = (s^2 + 1)^3.
std::vector<CurveSample> curve_samples(int count)
{
    std::vector<CurveSample> pts;
    for (int m = 2; static_cast<int>(pts.size()) < count; ++m) {
        for (int n = 1; n < m && static_cast<int>(pts.size()) < count; ++n) {
            Rational s(m * m - n * n, 2 * m * n);
            s.canonicalize();
            const Rational qa = 3 * s * s - 1;
            const Rational qb = s * s * s - 3 * s;
            if (qa == 0)
                continue;
            Rational r(m * m + n * n, 2 * m * n);
            r.canonicalize();
            const Rational w = (-qb + r * r * r) / qa;
            pts.push_back({s, w});
        }
    }
    return pts;
}

double shortest_norm_sq(std::int64_t y3, std::int64_t M)
{
    double best = INFINITY;
    for (std::int64_t a = -20; a <= 20; ++a)
        for (std::int64_t b = -20; b <= 20; ++b) {
            if (a == 0 && b == 0)
                continue;
            const double x = static_cast<double>(M * a - y3 * b), y = static_cast<double>(b);
            best = std::min(best, x * x + y * y);
        }
    return best;
}

}  // namespace

TEST_CASE("mesh choice")
{
    const std::uint64_t N = 10000000000ULL;
    const auto a = choose_mesh(10000, 10000, N, 0.0);
    CHECK(a.M == 10000);
    const auto b = choose_mesh(1000000000ULL, 10000, N, 0.0);
    CHECK(b.M == mesh_oracle(9 * std::log(10.0), 4 * std::log(10.0), 10 * std::log(10.0), 0.0, 10000));
    CHECK(b.M > 10000);
    CHECK_THROWS_AS(choose_mesh(1000000000ULL, 1000000000ULL, N, 100.0), InfeasibleMesh);
    CHECK_THROWS_AS(choose_mesh(1, 10, 100, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(choose_mesh(10, 200, 100, 0.1), std::invalid_argument);

    // monotone in E, D and eta
    const std::uint64_t n = 1000000;
    std::uint64_t prev = 0;
    for (std::uint64_t E = 2; E <= n; E *= 3) {
        const auto m = choose_mesh(E, 1000, n, 0.1).M;
        CHECK(m >= prev);
        prev = m;
    }
    prev = 0;
    for (std::uint64_t D = 2; D <= n; D *= 3) {
        const auto m = choose_mesh(100000, D, n, 0.1).M;
        CHECK(m >= prev);
        prev = m;
    }
    prev = 0;
    for (double eta : {0.0, 0.1, 0.2, 0.4, 0.5}) {
        const auto m = choose_mesh(100000, 1000, n, eta).M;
        CHECK(m >= prev);
        prev = m;
    }
}

TEST_CASE("monomial matrix")
{
    const std::vector<CurveSample> one{{0, 1}};
    const auto m = build_matrix(one, 1, 1);
    REQUIRE(m.J() == 1);
    CHECK(m.H() == 4);
    CHECK(m.rows[0] == std::vector<Rational>{1, 0, 1, 0});
    const std::vector<CurveSample> three{{1, 2}, {3, 4}, {5, 6}};
    const auto m3 = build_matrix(three, 2, 2);
    CHECK(m3.J() == 3);
    CHECK(m3.H() == 9);
    const std::vector<CurveSample> frac{{Rational(1, 2), Rational(1, 3)}};
    CHECK(build_matrix(frac, 1, 1).rows[0] == std::vector<Rational>{1, Rational(1, 2), Rational(1, 3), Rational(1, 6)});
    CHECK_THROWS_AS(build_matrix({}, 1, 1), std::invalid_argument);
}

TEST_CASE("kernel forms")
{
    const std::vector<CurveSample> one{{0, 1}};
    const auto f = kernel_form(build_matrix(one, 1, 1));
    CHECK(f.evaluate(0, 1) == 0);

    const std::vector<CurveSample> two{{0, 0}, {1, 1}};
    const auto full = build_matrix(two, 1, 0);
    CHECK(matrix_rank(full) == 2);
    CHECK_THROWS_AS(kernel_form(full), NoKernel);

    // five points on w = s
    std::vector<CurveSample> line;
    for (int i = 1; i <= 5; ++i)
        line.push_back({Rational(i, 7), Rational(i, 7)});
    const auto lm = build_matrix(line, 1, 1);
    CHECK(matrix_rank(lm) == 3);
    const auto lf = kernel_form(lm);
    // C(s, w) restricted to w = s vanishes identically: check at fresh points
    for (int i = 10; i < 15; ++i)
        CHECK(lf.evaluate(Rational(i, 3), Rational(i, 3)) == 0);
}

TEST_CASE("kernel of points on the curve recovers its equation")
{
    const auto pts = curve_samples(30);
    const auto m = build_matrix(pts, 3, 2);
    CHECK(matrix_rank(m) == 11);
    const auto form = kernel_form(m);
    const std::vector<BigInt> expected{1, 0, -3, 0, 0, -6, 0, 2, -1, 0, 3, 0};
    CHECK(form.coefficients == expected);
    for (const auto& p : pts)
        CHECK(form.evaluate(p.s, p.w) == 0);

    const auto twelve = curve_samples(12);
    const auto m16 = build_matrix(twelve, 3, 3);
    CHECK(matrix_rank(m16) < 16);
    const auto f16 = kernel_form(m16);
    BigInt g = 0;
    for (const auto& c : f16.coefficients)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    CHECK(g == 1);
    for (const auto& p : twelve)
        CHECK(f16.evaluate(p.s, p.w) == 0);
    CHECK(f16.height_bits() > 0);
}

TEST_CASE("lattice reduction")
{
    const auto a = reduce_lattice(0, 10, 4);
    CHECK(a.g1 == LatticeVector{0, 1});
    CHECK(a.L1 == doctest::Approx(2.0));
    const auto b = reduce_lattice(3, 10, 4);
    CHECK(static_cast<double>(b.g1.first * b.g1.first + b.g1.second * b.g1.second) == shortest_norm_sq(3, 10));
    CHECK(b.g1.first * b.g1.first + b.g1.second * b.g1.second == 10);
    CHECK_THROWS_AS(reduce_lattice(10, 10, 4), std::invalid_argument);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> pm(1, 5000), pd(1, 100000);
    for (int i = 0; i < 1000; ++i) {
        const auto M = pm(rng);
        const auto y3 = std::uniform_int_distribution<std::int64_t>(0, M - 1)(rng);
        const auto D = pd(rng);
        const auto r = reduce_lattice(y3, M, D);
        REQUIRE(r.is_reduced());
        REQUIRE(r.spans_original());
        REQUIRE((r.det == M || r.det == -M));
        REQUIRE(r.L1 >= r.L2);
        const double n1 = std::hypot(static_cast<double>(r.g1.first), static_cast<double>(r.g1.second));
        const double n2 = std::hypot(static_cast<double>(r.g2.first), static_cast<double>(r.g2.second));
        const double sin_theta = static_cast<double>(M) / (n1 * n2);
        REQUIRE(r.L1 * r.L2 == doctest::Approx(static_cast<double>(D) * sin_theta / static_cast<double>(M)));
        REQUIRE(sin_theta >= std::sqrt(3.0) / 2 - 1e-12);
        if (M <= 400)
            REQUIRE(n1 * n1 == doctest::Approx(shortest_norm_sq(y3, M)));
    }
}

TEST_CASE("L1 probe")
{
    CHECK(reduce_lattice(0, 1000, 10000).L1 == doctest::Approx(100.0));
    CHECK(reduce_lattice(0, 1, 10000).L1 == doctest::Approx(100.0));
    const auto p = l1_upper_probe(10000, 1000, 1000, 42);
    CHECK(p.max_l1 >= 100.0 * std::sqrt(1.0 / 1000.0));
    CHECK(p.soft_bound == doctest::Approx(10 * std::pow(10000.0, 0.55)));
    CHECK(p.soft_ok == (p.max_l1 <= p.soft_bound));
    const auto again = l1_upper_probe(10000, 1000, 1000, 42);
    CHECK(again.max_l1 == p.max_l1);
}

TEST_CASE("interval assignment")
{
    CHECK(interval_of(0, 10) == 0);
    CHECK(interval_of(1, 10) == 9);
    CHECK(interval_of(Rational(1, 10), 10) == 0);
    CHECK(interval_of(Rational(11, 100), 10) == 1);
    CHECK_THROWS_AS(interval_of(Rational(-1, 2), 10), std::invalid_argument);
    // each s in (0, 1] lands in exactly the interval (k/M, (k+1)/M]
    for (int num = 1; num <= 97; ++num) {
        const Rational s(num, 97);
        const auto k = interval_of(s, 13);
        CHECK(Rational(static_cast<long>(k), 13) < s);
        CHECK(s <= Rational(static_cast<long>(k + 1), 13));
    }
}

TEST_CASE("pipeline")
{
    const auto empty = interval_pipeline(1, 1, {});
    CHECK(empty.triples == 0);
    CHECK(empty.intervals.empty());

    const auto small = interval_pipeline(2, 7, {});
    CHECK(small.triples == 2);  // n = 11 and n = 14
    REQUIRE(small.points >= 1);
    for (const auto& ir : small.intervals) {
        CHECK(ir.J < ir.H);
        CHECK(ir.has_form);
        CHECK(ir.vanishes);
    }

    const auto big = interval_pipeline(2, 20000, {}, 4);
    std::size_t total_points = 0;
    for (const auto& ir : big.intervals) {
        total_points += ir.J;
        if (ir.rank < ir.H) {
            CHECK(ir.has_form);
            CHECK(ir.vanishes);
        }
    }
    CHECK(total_points == big.points);
    std::ostringstream a, b;
    write_pipeline_json(a, big);
    write_pipeline_json(b, interval_pipeline(2, 20000, {}, 1));
    CHECK(a.str() == b.str());
    CHECK(a.str().find("\"schema\": 1") != std::string::npos);
}
