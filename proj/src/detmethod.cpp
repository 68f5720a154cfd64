#include "sqfull/detmethod.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <json.hpp>

#include "sqfull/gaussian.hpp"
#include "sqfull/quadratic.hpp"

namespace sqfull {

namespace {

// Fraction-free (Bareiss) row echelon form; returns pivot columns.
std::vector<std::size_t> bareiss_echelon(std::vector<std::vector<BigInt>>& a, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    BigInt prev = 1;
    std::size_t r = 0;
    const std::size_t rows = a.size();
    BigInt num, rem;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && a[piv][col] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[r], a[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                num = a[r][col] * a[i][j] - a[i][col] * a[r][j];
                mpz_tdiv_qr(a[i][j].get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                if (rem != 0)
                    throw std::logic_error("bareiss_echelon: inexact division");
            }
            a[i][col] = 0;
        }
        prev = a[r][col];
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<BigInt>> integer_rows(const MonomialMatrix& m)
{
    std::vector<std::vector<BigInt>> out;
    out.reserve(m.rows.size());
    for (const auto& row : m.rows) {
        BigInt l = 1;
        for (const auto& x : row)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        std::vector<BigInt> ir;
        ir.reserve(row.size());
        for (const auto& x : row)
            ir.push_back(x.get_num() * (l / x.get_den()));
        out.push_back(std::move(ir));
    }
    return out;
}

Rational rpow(const Rational& x, unsigned k)
{
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i)
        r *= x;
    return r;
}

double norm(const LatticeVector& v)
{
    return std::sqrt(static_cast<double>(v.first) * v.first + static_cast<double>(v.second) * v.second);
}

__int128 dot(const LatticeVector& a, const LatticeVector& b)
{
    return static_cast<__int128>(a.first) * b.first + static_cast<__int128>(a.second) * b.second;
}

// Nearest integer to num/den, den > 0, halves rounded up.
__int128 round_div(__int128 num, __int128 den)
{
    __int128 n2 = 2 * num + den, d2 = 2 * den;
    __int128 q = n2 / d2;
    if ((n2 % d2 != 0) && (n2 < 0))
        --q;
    return q;
}

}  // namespace

MeshParams choose_mesh(std::uint64_t E, std::uint64_t D, std::uint64_t N, double eta)
{
    if (D < 2 || D > N || E < 2 || E > N)
        throw std::invalid_argument("choose_mesh: requires 2 <= D <= N and 2 <= E <= N");
    if (eta < 0.0)
        throw std::invalid_argument("choose_mesh: eta must be nonnegative");
    using ld = long double;
    const ld threshold = 1.125L * (1 + static_cast<ld>(eta)) * std::log(static_cast<ld>(E)) *
                         std::log(static_cast<ld>(D)) / std::log(static_cast<ld>(N));
    // Tolerance absorbs rounding when the threshold is exactly log of an integer.
    constexpr ld kTol = 1e-12L;
    auto meets = [&](std::uint64_t m) { return std::log(static_cast<ld>(m)) >= threshold - kTol; };
    if (!meets(N))
        throw InfeasibleMesh("choose_mesh: no M in [D, N] satisfies the mesh inequality");
    std::uint64_t M = D;
    if (!meets(M)) {
        M = static_cast<std::uint64_t>(std::ceil(std::exp(threshold)));
        M = std::clamp(M, D, N);
        while (M > D && meets(M - 1))
            --M;
        while (!meets(M))
            ++M;
    }
    return {E, D, N, eta, M};
}

MonomialMatrix build_matrix(std::span<const CurveSample> points, unsigned K, unsigned L)
{
    if (points.empty())
        throw std::invalid_argument("build_matrix: no points");
    MonomialMatrix m;
    m.K = K;
    m.L = L;
    for (const auto& pt : points) {
        std::vector<Rational> row;
        row.reserve(m.H());
        for (unsigned l = 0; l <= L; ++l) {
            const Rational wl = rpow(pt.w, l);
            for (unsigned k = 0; k <= K; ++k)
                row.push_back(rpow(pt.s, k) * wl);
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

std::size_t matrix_rank(const MonomialMatrix& m)
{
    auto a = integer_rows(m);
    return bareiss_echelon(a, m.H()).size();
}

Rational VanishingForm::evaluate(const Rational& s, const Rational& w) const
{
    Rational acc = 0;
    std::size_t h = 0;
    for (unsigned l = 0; l <= L; ++l) {
        const Rational wl = rpow(w, l);
        for (unsigned k = 0; k <= K; ++k, ++h)
            acc += Rational(coefficients[h]) * rpow(s, k) * wl;
    }
    return acc;
}

std::size_t VanishingForm::height_bits() const
{
    std::size_t bits = 0;
    for (const auto& c : coefficients)
        bits = std::max<std::size_t>(bits, c == 0 ? 0 : mpz_sizeinbase(c.get_mpz_t(), 2));
    return bits;
}

VanishingForm kernel_form(const MonomialMatrix& m)
{
    const std::size_t H = m.H();
    auto a = integer_rows(m);
    const auto pivots = bareiss_echelon(a, H);
    if (pivots.size() == H)
        throw NoKernel("kernel_form: monomial matrix has full column rank");

    std::vector<bool> is_pivot(H, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col])
        ++free_col;

    std::vector<Rational> c(H, Rational(0));
    c[free_col] = 1;
    for (std::size_t i = pivots.size(); i-- > 0;) {
        const std::size_t p = pivots[i];
        Rational acc = 0;
        for (std::size_t j = p + 1; j < H; ++j) {
            if (a[i][j] != 0 && c[j] != 0)
                acc += Rational(a[i][j]) * c[j];
        }
        c[p] = -acc / Rational(a[i][p]);
    }

    BigInt l = 1, g = 0;
    for (const auto& x : c)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    VanishingForm form;
    form.K = m.K;
    form.L = m.L;
    form.rank = pivots.size();
    for (const auto& x : c) {
        BigInt v = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        form.coefficients.push_back(std::move(v));
    }
    const auto first = std::find_if(form.coefficients.begin(), form.coefficients.end(), [](const BigInt& v) { return v != 0; });
    const bool flip = first != form.coefficients.end() && *first < 0;
    for (auto& v : form.coefficients) {
        v /= g;
        if (flip)
            v = -v;
    }
    return form;
}

bool ReducedLattice::is_reduced() const
{
    const LatticeVector sum{g1.first + g2.first, g1.second + g2.second};
    const LatticeVector diff{g1.first - g2.first, g1.second - g2.second};
    const __int128 n1 = dot(g1, g1), n2 = dot(g2, g2);
    return n1 > 0 && n1 <= n2 && n2 <= dot(sum, sum) && n2 <= dot(diff, diff);
}

bool ReducedLattice::spans_original() const
{
    // Solve u g1 + v g2 = b by Cramer; |det| = M makes integrality the test.
    if (det == 0)
        return false;
    auto integral = [&](const LatticeVector& b) {
        const __int128 u = static_cast<__int128>(b.first) * g2.second - static_cast<__int128>(b.second) * g2.first;
        const __int128 v = static_cast<__int128>(g1.first) * b.second - static_cast<__int128>(g1.second) * b.first;
        return u % det == 0 && v % det == 0;
    };
    return integral({M, 0}) && integral({-y3, 1});
}

ReducedLattice reduce_lattice(std::int64_t y3, std::int64_t M, std::int64_t D)
{
    if (M < 1 || D < 1 || y3 < 0 || y3 >= M)
        throw std::invalid_argument("reduce_lattice: requires M >= 1, D >= 1, 0 <= y3 < M");
    LatticeVector a{M, 0}, b{-y3, 1};
    if (dot(a, a) > dot(b, b))
        std::swap(a, b);
    for (;;) {
        const __int128 mu = round_div(dot(a, b), dot(a, a));
        b = {static_cast<std::int64_t>(b.first - mu * a.first), static_cast<std::int64_t>(b.second - mu * a.second)};
        if (dot(b, b) >= dot(a, a))
            break;
        std::swap(a, b);
    }
    ReducedLattice out;
    out.y3 = y3;
    out.M = M;
    out.D = D;
    out.g1 = a;
    out.g2 = b;
    out.det = static_cast<__int128>(a.first) * b.second - static_cast<__int128>(a.second) * b.first;
    const double root_d = std::sqrt(static_cast<double>(D));
    out.L1 = root_d / norm(a);
    out.L2 = root_d / norm(b);
    return out;
}

L1Probe l1_upper_probe(std::int64_t D, std::int64_t M, std::size_t samples, std::uint64_t seed)
{
    if (samples < 1)
        throw std::invalid_argument("l1_upper_probe: samples must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> pick(0, M - 1);
    L1Probe probe;
    for (std::size_t i = 0; i < samples; ++i)
        probe.max_l1 = std::max(probe.max_l1, reduce_lattice(pick(rng), M, D).L1);
    const double d = static_cast<double>(D);
    probe.ratio_to_sqrt_d = probe.max_l1 / std::sqrt(d);
    probe.comparison = std::pow(d, 0.55);
    probe.soft_bound = 10.0 * probe.comparison;
    probe.soft_ok = probe.max_l1 <= probe.soft_bound;
    return probe;
}

std::uint64_t interval_of(const Rational& s, std::uint64_t M)
{
    if (s < 0 || s > 1)
        throw std::invalid_argument("interval_of: s must lie in [0, 1]");
    if (s == 0)
        return 0;
    // ceil(s M) - 1
    const Rational scaled = s * BigInt(static_cast<unsigned long>(M));
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return c.get_ui() - 1;
}

PipelineReport interval_pipeline(std::uint64_t alpha, std::uint64_t N, const PipelineOptions& options, unsigned threads)
{
    if (alpha == 0 || N == 0)
        throw std::invalid_argument("interval_pipeline: alpha and N must be positive");
    PipelineReport rep;
    rep.alpha = alpha;
    rep.N = N;
    rep.options = options;

    const QuadraticPoly f{1, 0, static_cast<std::int64_t>(alpha * alpha)};
    const auto triples = scan_squarefull_values(f, N + 1, 2 * N, threads).triples;
    rep.triples = triples.size();

    // Points grouped by dyadic cell of (e, d).
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::set<std::pair<Rational, Rational>>> cells;
    for (const auto& t : triples) {
        const Extraction ex = extract_solutions(t);
        if (ex.solutions.empty()) {
            ++rep.unextracted;
            continue;
        }
        for (const auto& sol : ex.solutions) {
            ++rep.solutions;
            CurvePoint pt = curve_point(sol);
            if (pt.degeneracy != Degeneracy::None) {
                ++rep.degenerate;
                continue;
            }
            if (pt.s < 0) {
                pt.s = -pt.s;
                ++rep.folded;
            }
            // Distinct solutions can share (s, w); the matrix keeps one row each.
            if (cells[{dyadic_floor(t.e), dyadic_floor(t.d)}].insert({pt.s, pt.w}).second)
                ++rep.points;
        }
    }

    struct Task {
        std::uint64_t E, D, M, k;
        std::vector<CurveSample> pts;
    };
    std::vector<Task> tasks;
    for (const auto& [cell, pts] : cells) {
        const auto [E, D] = cell;
        const std::uint64_t e_eff = std::clamp<std::uint64_t>(E, 2, std::max<std::uint64_t>(N, 2));
        const std::uint64_t d_eff = std::clamp<std::uint64_t>(D, 2, std::max<std::uint64_t>(N, 2));
        MeshParams mesh;
        try {
            mesh = choose_mesh(e_eff, d_eff, std::max<std::uint64_t>(N, 2), options.eta);
        } catch (const InfeasibleMesh&) {
            ++rep.infeasible_cells;
            continue;
        }
        std::map<std::uint64_t, std::vector<CurveSample>> by_interval;
        for (const auto& [s, w] : pts)
            by_interval[interval_of(s, mesh.M)].push_back({s, w});
        for (auto& [k, v] : by_interval)
            tasks.push_back({E, D, mesh.M, k, std::move(v)});
    }

    rep.intervals = parallel_chunks(tasks.size(), threads, [&](std::size_t i) {
        const Task& task = tasks[i];
        IntervalReport ir;
        ir.E = task.E;
        ir.D = task.D;
        ir.M = task.M;
        ir.interval_index = task.k;
        ir.L = options.L;
        ir.K = options.K;
        if (options.auto_K && task.E >= 2 && task.D >= 2)
            ir.K = static_cast<unsigned>(std::floor(options.L * std::log(static_cast<double>(task.E)) /
                                                    std::log(static_cast<double>(task.D))));
        const MonomialMatrix m = build_matrix(task.pts, ir.K, ir.L);
        ir.J = m.J();
        ir.H = m.H();
        ir.rank = matrix_rank(m);
        if (ir.rank < ir.H) {
            const VanishingForm form = kernel_form(m);
            ir.has_form = true;
            ir.coefficients = form.coefficients;
            ir.vanishes = std::all_of(task.pts.begin(), task.pts.end(),
                                      [&](const CurveSample& p) { return form.evaluate(p.s, p.w) == 0; });
        }
        const ReducedLattice lat = reduce_lattice(static_cast<std::int64_t>(task.k), static_cast<std::int64_t>(task.M),
                                                  static_cast<std::int64_t>(std::max<std::uint64_t>(task.D, 1)));
        ir.l1 = lat.L1;
        ir.l2 = lat.L2;
        return ir;
    });
    for (const auto& ir : rep.intervals)
        ++rep.l1_histogram[static_cast<int>(std::floor(std::log2(ir.l1)))];
    return rep;
}

void write_pipeline_json(std::ostream& os, const PipelineReport& rep)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema"] = 1;
    j["alpha"] = rep.alpha;
    j["N"] = rep.N;
    j["eta"] = rep.options.eta;
    j["K"] = rep.options.K;
    j["L"] = rep.options.L;
    j["triples"] = rep.triples;
    j["solutions"] = rep.solutions;
    j["points"] = rep.points;
    j["degenerate"] = rep.degenerate;
    j["folded"] = rep.folded;
    j["unextracted"] = rep.unextracted;
    j["infeasible_cells"] = rep.infeasible_cells;
    ordered_json intervals = ordered_json::array();
    for (const auto& ir : rep.intervals) {
        ordered_json x;
        x["interval_index"] = ir.interval_index;
        x["E"] = ir.E;
        x["D"] = ir.D;
        x["M"] = ir.M;
        x["J"] = ir.J;
        x["H"] = ir.H;
        x["rank"] = ir.rank;
        ordered_json coeffs = ordered_json::array();
        for (const auto& c : ir.coefficients)
            coeffs.push_back(c.get_str());
        x["coefficients"] = coeffs;
        x["vanishes"] = ir.vanishes;
        x["l1"] = ir.l1;
        x["l2"] = ir.l2;
        intervals.push_back(std::move(x));
    }
    j["intervals"] = std::move(intervals);
    ordered_json hist = ordered_json::object();
    for (const auto& [bin, n] : rep.l1_histogram)
        hist[std::to_string(bin)] = n;
    j["l1_histogram_log2"] = std::move(hist);
    os << j.dump(2) << '\n';
}

}  // namespace sqfull
