#include "sqfull/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sqfull/format.hpp"
#include "sqfull/squarefull.hpp"

namespace sqfull {

namespace {

constexpr std::uint64_t kChunk = 1u << 14;
constexpr std::uint64_t kSmallValueLimit = 1'000'000'000'000'000'000ULL;
constexpr std::uint64_t kMaxArgument = 1ULL << 32;
constexpr std::int64_t kMaxCoefficient = std::int64_t{1} << 60;

std::uint64_t mod_of(__int128 v, std::uint64_t p)
{
    __int128 r = v % static_cast<__int128>(p);
    if (r < 0)
        r += p;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

// Square root of a quadratic residue a modulo an odd prime p.
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p)
{
    if (a == 0)
        return 0;
    if (p % 4 == 3)
        return powmod(a, (p + 1) / 4, p);
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    std::uint64_t m = s;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t t = powmod(a, q, p);
    std::uint64_t r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + 1 < m - i; ++j)
            b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

struct PrimeRoots {
    std::uint32_t p = 0;
    bool all = false;  // f vanishes identically mod p
    std::vector<std::uint32_t> roots;
};

PrimeRoots roots_mod_p(const QuadraticPoly& f, std::uint32_t p)
{
    PrimeRoots out{p, false, {}};
    const std::uint64_t A = mod_of(f.a, p), B = mod_of(f.b, p), C = mod_of(f.c, p);
    if (p < 64) {
        for (std::uint32_t r = 0; r < p; ++r) {
            if ((A * r * r + B * r + C) % p == 0)
                out.roots.push_back(r);
        }
        out.all = out.roots.size() == p;
        return out;
    }
    if (A == 0) {
        if (B == 0)
            out.all = C == 0;
        else
            out.roots.push_back(static_cast<std::uint32_t>(mulmod(p - C, invmod(B, p), p) % p));
        return out;
    }
    const std::uint64_t disc = (mulmod(B, B, p) + p - mulmod(4 % p, mulmod(A, C, p), p)) % p;
    const std::uint64_t inv2a = invmod(2 * A % p, p);
    if (disc == 0) {
        out.roots.push_back(static_cast<std::uint32_t>(mulmod((p - B) % p, inv2a, p)));
        return out;
    }
    if (powmod(disc, (p - 1) / 2, p) != 1)
        return out;
    const std::uint64_t s = sqrt_mod(disc, p);
    const auto r1 = static_cast<std::uint32_t>(mulmod((p - B + s) % p, inv2a, p));
    const auto r2 = static_cast<std::uint32_t>(mulmod((2 * p - B - s) % p, inv2a, p));
    out.roots.push_back(std::min(r1, r2));
    out.roots.push_back(std::max(r1, r2));
    return out;
}

// max |f(n)| for lo <= n <= hi.
__int128 max_abs_on(const QuadraticPoly& f, std::uint64_t lo, std::uint64_t hi)
{
    auto absv = [](__int128 v) { return v < 0 ? -v : v; };
    __int128 m = std::max(absv(f(static_cast<std::int64_t>(lo))), absv(f(static_cast<std::int64_t>(hi))));
    if (f.a != 0) {
        const long double vertex = -static_cast<long double>(f.b) / (2.0L * f.a);
        for (long double cand : {std::floor(vertex), std::ceil(vertex)}) {
            if (cand >= lo && cand <= hi)
                m = std::max(m, absv(f(static_cast<std::int64_t>(cand))));
        }
    }
    return m;
}

void validate_range(const QuadraticPoly& f, std::uint64_t hi)
{
    if (hi > kMaxArgument)
        throw std::invalid_argument("quadratic scan: argument range exceeds 2^32");
    for (std::int64_t coef : {f.a, f.b, f.c}) {
        if (coef > kMaxCoefficient || coef < -kMaxCoefficient)
            throw std::invalid_argument("quadratic scan: coefficient magnitude exceeds 2^60");
    }
}

bool absorb(std::uint64_t p, unsigned k, std::uint64_t& e, std::uint64_t& d)
{
    if (k == 1)
        return false;
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < (k % 2 == 1 ? (k - 3) / 2 : k / 2); ++i)
        pe *= p;
    e *= pe;
    if (k % 2 == 1)
        d *= p;
    return true;
}

ScanResult scan_chunk(const QuadraticPoly& f, std::uint64_t lo, std::uint64_t hi, std::span<const PrimeRoots> table)
{
    ScanResult out;
    const std::size_t len = hi - lo + 1;
    out.scanned = len;
    std::vector<std::uint64_t> rest(len, 0), e(len, 1), d(len, 1);
    std::vector<std::uint8_t> alive(len, 0);
    std::vector<std::size_t> big;

    for (std::size_t i = 0; i < len; ++i) {
        const __int128 v = f(static_cast<std::int64_t>(lo + i));
        if (v <= 0) {
            ++out.skipped_nonpositive;
            continue;
        }
        if (v > static_cast<__int128>(kSmallValueLimit)) {
            big.push_back(i);
            continue;
        }
        rest[i] = static_cast<std::uint64_t>(v);
        alive[i] = 1;
    }

    for (const PrimeRoots& pr : table) {
        const std::uint64_t p = pr.p;
        auto visit = [&](std::size_t i) {
            if (!alive[i] || rest[i] % p)
                return;
            unsigned k = 0;
            do {
                rest[i] /= p;
                ++k;
            } while (rest[i] % p == 0);
            if (!absorb(p, k, e[i], d[i]))
                alive[i] = 0;
        };
        if (pr.all) {
            for (std::size_t i = 0; i < len; ++i)
                visit(i);
            continue;
        }
        const std::uint64_t base = lo % p;
        for (std::uint32_t r : pr.roots) {
            const std::uint64_t first = (r + p - base) % p;
            for (std::size_t i = first; i < len; i += p)
                visit(i);
        }
    }

    for (std::size_t i = 0; i < len; ++i) {
        if (!alive[i])
            continue;
        if (rest[i] > 1) {
            const auto r = isqrt(rest[i]);
            if (!r.exact)
                continue;
            e[i] *= r.root;
        }
        const std::uint64_t n = lo + i;
        const __int128 check = static_cast<__int128>(e[i]) * e[i] * d[i] * d[i] * d[i];
        if (check != f(static_cast<std::int64_t>(n)))
            throw std::logic_error("scan_squarefull_values: decomposition mismatch at n = " + std::to_string(n));
        out.triples.push_back({n, e[i], d[i], f.c});
    }

    for (std::size_t i : big) {
        const std::uint64_t n = lo + i;
        const BigInt v = f.value(BigInt(static_cast<unsigned long>(n)));
        if (!is_squarefull(v))
            continue;
        const auto dec = decompose_e2d3(v);
        if (!dec.e.fits_ulong_p() || !dec.d.fits_ulong_p())
            throw std::overflow_error("scan_squarefull_values: decomposition exceeds 64 bits");
        out.triples.push_back({n, dec.e.get_ui(), dec.d.get_ui(), f.c});
    }
    std::sort(out.triples.begin(), out.triples.end(), [](const auto& x, const auto& y) { return x.n < y.n; });
    return out;
}

std::uint64_t cell_hi(std::uint64_t lower) { return lower == 0 ? 1 : 2 * lower; }

}  // namespace

std::string QuadraticPoly::str() const
{
    return std::to_string(a) + "x^2" + (b < 0 ? " - " : " + ") + std::to_string(b < 0 ? -b : b) + "x" +
           (c < 0 ? " - " : " + ") + std::to_string(c < 0 ? -c : c);
}

QuadraticPoly MajorantPoly::as_quadratic() const
{
    if (q > INT64_MAX || q < INT64_MIN)
        throw std::overflow_error("MajorantPoly: constant term exceeds 64 bits");
    return {p, 0, static_cast<std::int64_t>(q)};
}

MajorantPoly majorant(const QuadraticPoly& f)
{
    if (f.a == 0)
        throw std::invalid_argument("majorant: leading coefficient must be nonzero");
    MajorantPoly g;
    g.p = f.a;
    // Expanding a(2ax + b)^2 = 4a^3x^2 + 4a^2bx + ab^2 forces q = a(4ac - b^2).
    g.q = static_cast<__int128>(f.a) * (static_cast<__int128>(4) * f.a * f.c - static_cast<__int128>(f.b) * f.b);
    g.scale = 2 * f.a;
    for (std::int64_t x : {-2, -1, 0, 1, 3}) {
        const BigInt X(static_cast<long>(x));
        const BigInt A(static_cast<long>(f.a));
        const BigInt lhs = 4 * A * A * f.value(X);
        const BigInt y = 2 * A * X + static_cast<long>(f.b);
        const BigInt rhs = A * y * y + BigInt(to_string(g.q));
        if (lhs != rhs)
            throw std::logic_error("majorant: identity 4a^2 f(x) = g(2ax + b) failed");
    }
    return g;
}

bool is_admissible(const QuadraticPoly& f) { return f.a != 0 && f.discriminant() != 0; }

ScanResult scan_squarefull_values(const QuadraticPoly& f, std::uint64_t lo, std::uint64_t hi, unsigned threads)
{
    lo = std::max<std::uint64_t>(lo, 1);
    ScanResult total;
    if (hi < lo)
        return total;
    validate_range(f, hi);

    const __int128 maxv = std::min<__int128>(max_abs_on(f, lo, hi), kSmallValueLimit);
    const auto bound = static_cast<std::uint64_t>(icbrt(static_cast<std::int64_t>(maxv)).root) + 1;
    std::vector<PrimeRoots> table;
    for (std::uint32_t p : small_primes()) {
        if (p > bound)
            break;
        PrimeRoots pr = roots_mod_p(f, p);
        if (pr.all || !pr.roots.empty())
            table.push_back(std::move(pr));
    }

    const std::uint64_t chunks = (hi - lo) / kChunk + 1;
    auto parts = parallel_chunks(chunks, threads, [&](std::size_t k) {
        const std::uint64_t a = lo + k * kChunk;
        const std::uint64_t b = std::min(hi, a + kChunk - 1);
        return scan_chunk(f, a, b, table);
    });
    for (auto& part : parts) {
        total.scanned += part.scanned;
        total.skipped_nonpositive += part.skipped_nonpositive;
        total.triples.insert(total.triples.end(), part.triples.begin(), part.triples.end());
    }
    return total;
}

std::uint64_t count_squarefull_values(const QuadraticPoly& f, std::uint64_t limit, unsigned threads)
{
    return scan_squarefull_values(f, 1, limit, threads).triples.size();
}

std::vector<SolutionTriple> enumerate_triples(const QuadraticPoly& f, std::uint64_t limit, unsigned threads)
{
    return scan_squarefull_values(f, 1, limit, threads).triples;
}

std::uint64_t dyadic_floor(std::uint64_t x)
{
    if (x == 0)
        throw std::invalid_argument("dyadic_floor: x must be positive");
    if (x == 1)
        return 0;
    std::uint64_t p = 1;
    while (2 * p < x)
        p *= 2;
    return p;
}

DyadicCell m_cell_count(const QuadraticPoly& f, std::uint64_t N, std::uint64_t E, std::uint64_t D, unsigned threads)
{
    if (N == 0)
        throw std::invalid_argument("m_cell_count: N must be positive");
    DyadicCell cell{E, D, 0};
    for (const auto& t : scan_squarefull_values(f, N + 1, 2 * N, threads).triples) {
        if (t.e > E && t.e <= cell_hi(E) && t.d > D && t.d <= cell_hi(D))
            ++cell.count;
    }
    return cell;
}

std::vector<std::uint64_t> solve_for_n(const QuadraticPoly& f, __int128 v, std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    auto accept = [&](__int128 num, __int128 den) {
        if (den == 0 || num % den != 0)
            return;
        const __int128 n = num / den;
        if (n > static_cast<__int128>(lo) && n <= static_cast<__int128>(hi))
            out.push_back(static_cast<std::uint64_t>(n));
    };
    if (f.a == 0) {
        if (f.b != 0)
            accept(v - f.c, f.b);
        return out;
    }
    const __int128 disc = static_cast<__int128>(f.b) * f.b - static_cast<__int128>(4) * f.a * (f.c - v);
    std::uint64_t s = 0;
    if (!is_square(disc, &s))
        return out;
    accept(-static_cast<__int128>(f.b) + s, static_cast<__int128>(2) * f.a);
    if (s != 0)
        accept(-static_cast<__int128>(f.b) - s, static_cast<__int128>(2) * f.a);
    std::sort(out.begin(), out.end());
    return out;
}

DyadicCell m_cell_count_by_divisors(const QuadraticPoly& f, std::uint64_t N, std::uint64_t E, std::uint64_t D)
{
    if (N == 0)
        throw std::invalid_argument("m_cell_count_by_divisors: N must be positive");
    validate_range(f, 2 * N);
    DyadicCell cell{E, D, 0};
    const __int128 vmax = max_abs_on(f, N + 1, 2 * N);
    const std::uint64_t d_hi = cell_hi(D), e_hi = cell_hi(E);
    for (std::uint64_t d = D + 1; d <= d_hi; ++d) {
        const __int128 d3 = static_cast<__int128>(d) * d * d;
        if (d3 > vmax)
            break;
        if (mu(d) == 0)
            continue;
        for (std::uint64_t e = E + 1; e <= e_hi; ++e) {
            const __int128 v = static_cast<__int128>(e) * e * d3;
            if (v > vmax)
                break;
            cell.count += solve_for_n(f, v, N, 2 * N).size();
        }
    }
    return cell;
}

DyadicCheck dyadic_decomposition_check(const QuadraticPoly& f, std::uint64_t N, unsigned threads)
{
    if (N == 0)
        throw std::invalid_argument("dyadic_decomposition_check: N must be positive");
    DyadicCheck out;
    out.N = N;
    out.lhs = count_squarefull_values(f, 2 * N, threads) - count_squarefull_values(f, N, threads);

    // n-major buckets for the per-cell cross-check.
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> buckets;
    for (const auto& t : scan_squarefull_values(f, N + 1, 2 * N, threads).triples)
        ++buckets[{dyadic_floor(t.e), dyadic_floor(t.d)}];

    const __int128 vmax = max_abs_on(f, N + 1, 2 * N);
    __int128 vmin = vmax;
    for (std::uint64_t n : {N + 1, 2 * N}) {
        const __int128 v = f(static_cast<std::int64_t>(n));
        if (v > 0)
            vmin = std::min(vmin, v);
    }
    vmin = std::max<__int128>(vmin, 1);
    const __int128 upper = vmax * out.slack;
    const __int128 lower = vmin / out.slack;

    std::vector<std::uint64_t> e_cells{0}, d_cells{0};
    for (std::uint64_t x = 1; static_cast<__int128>(x) * x <= upper; x *= 2)
        e_cells.push_back(x);
    for (std::uint64_t x = 1; static_cast<__int128>(x) * x * x <= upper; x *= 2)
        d_cells.push_back(x);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> grid;
    for (std::uint64_t E : e_cells) {
        for (std::uint64_t D : d_cells) {
            const __int128 lo_corner = static_cast<__int128>(E) * E * D * D * D;
            const __int128 eh = cell_hi(E), dh = cell_hi(D);
            const __int128 hi_corner = eh * eh * dh * dh * dh;
            if (lo_corner <= upper && hi_corner >= lower)
                grid.emplace_back(E, D);
        }
    }
    out.grid_cells = grid.size();

    auto counts = parallel_chunks(grid.size(), threads,
                                  [&](std::size_t i) { return m_cell_count_by_divisors(f, N, grid[i].first, grid[i].second); });
    std::uint64_t bucketed = 0;
    for (const auto& cell : counts) {
        out.rhs += cell.count;
        const auto it = buckets.find({cell.E, cell.D});
        const std::uint64_t scanned = it == buckets.end() ? 0 : it->second;
        bucketed += scanned;
        if (scanned != cell.count)
            ++out.bucket_mismatches;
        if (cell.count)
            out.cells.push_back(cell);
    }
    // Triples whose cell fell outside the grid would show up here.
    const std::uint64_t total_bucketed = [&] {
        std::uint64_t s = 0;
        for (const auto& [k, v] : buckets)
            s += v;
        return s;
    }();
    if (total_bucketed != bucketed)
        out.bucket_mismatches += 1;
    out.equal = out.lhs == out.rhs && out.bucket_mismatches == 0;
    return out;
}

EstermannProfile estermann_per_d_profile(std::uint64_t alpha, std::uint64_t N, std::uint64_t d)
{
    if (d == 0)
        throw std::invalid_argument("estermann_per_d_profile: d must be positive");
    EstermannProfile out{d, alpha, N, 0, 0, 0.0};
    const __int128 d3 = static_cast<__int128>(d) * d * d;
    const __int128 a2 = static_cast<__int128>(alpha) * alpha;
    for (std::uint64_t e = 0; e <= N; ++e) {
        const __int128 v = d3 * e * e - a2;
        std::uint64_t n = 0;
        if (!is_square(v, &n) || n > N)
            continue;
        ++out.nonneg_pairs;
        out.signed_pairs += (n ? 2 : 1) * (e ? 2 : 1);
    }
    out.ratio = static_cast<double>(out.nonneg_pairs) / std::log(static_cast<double>(N) + static_cast<double>(d) * alpha);
    return out;
}

void write_triples_csv(std::ostream& os, std::span<const SolutionTriple> rows)
{
    os << "n,e,d\n";
    for (const auto& t : rows)
        os << t.n << ',' << t.e << ',' << t.d << '\n';
}

void write_cells_csv(std::ostream& os, std::span<const DyadicCell> rows)
{
    os << "E,D,count\n";
    for (const auto& c : rows)
        os << c.E << ',' << c.D << ',' << c.count << '\n';
}

}  // namespace sqfull
