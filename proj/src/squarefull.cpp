#include "sqfull/squarefull.hpp"

#include <algorithm>
#include <cmath>

#include "sqfull/format.hpp"

namespace sqfull {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e)
{
    std::uint64_t r = 1;
    while (e--)
        r *= b;
    return r;
}

// Accumulates p^k into (e, d); returns false when k == 1.
bool absorb(std::uint64_t p, unsigned k, std::uint64_t& e, std::uint64_t& d)
{
    if (k == 1)
        return false;
    if (k % 2 == 1) {
        d *= p;
        e *= ipow(p, (k - 3) / 2);
    } else {
        e *= ipow(p, k / 2);
    }
    return true;
}

}  // namespace

std::optional<SquarefullDecomposition> try_decompose_e2d3(std::uint64_t n)
{
    if (n == 0)
        return std::nullopt;
    std::uint64_t m = n, e = 1, d = 1;
    bool exhausted = true;
    for (std::uint32_t p : small_primes()) {
        if (static_cast<unsigned __int128>(p) * p * p > m) {
            exhausted = false;
            break;
        }
        if (m % p)
            continue;
        unsigned k = 0;
        do {
            m /= p;
            ++k;
        } while (m % p == 0);
        if (!absorb(p, k, e, d))
            return std::nullopt;
    }
    if (exhausted && m > 1) {
        // Cofactor beyond the cube of the table; factor it outright.
        const Factorization f = factorize(m);
        for (const auto& [p, k] : f.factors()) {
            if (!absorb(p.get_ui(), k, e, d))
                return std::nullopt;
        }
        return SquarefullDecomposition{n, e, d};
    }
    // Every prime factor of m exceeds m^{1/3}: m is 1, p, p^2 or pq.
    if (m > 1) {
        const auto r = isqrt(m);
        if (!r.exact)
            return std::nullopt;
        e *= r.root;
    }
    return SquarefullDecomposition{n, e, d};
}

bool is_squarefull(std::uint64_t n) { return try_decompose_e2d3(n).has_value(); }

bool is_squarefull(const BigInt& n)
{
    if (n <= 0)
        return false;
    if (n.fits_ulong_p())
        return is_squarefull(static_cast<std::uint64_t>(n.get_ui()));
    return factorize(n).is_squarefull();
}

SquarefullDecomposition decompose_e2d3(std::uint64_t n)
{
    auto dec = try_decompose_e2d3(n);
    if (!dec)
        throw std::invalid_argument("decompose_e2d3: " + std::to_string(n) + " is not square-full");
    return *dec;
}

E2D3<BigInt> decompose_e2d3(const BigInt& n)
{
    if (n <= 0)
        throw std::invalid_argument("decompose_e2d3: input must be positive");
    const Factorization f = factorize(n);
    E2D3<BigInt> out{n, 1, 1};
    for (const auto& [p, k] : f.factors()) {
        if (k == 1)
            throw std::invalid_argument("decompose_e2d3: " + n.get_str() + " is not square-full");
        BigInt pe;
        if (k % 2 == 1) {
            out.d *= p;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), (k - 3) / 2);
        } else {
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), k / 2);
        }
        out.e *= pe;
    }
    return out;
}

std::vector<std::uint8_t> squarefree_flags(std::uint64_t limit)
{
    std::vector<std::uint8_t> flags(limit + 1, 1);
    flags[0] = 0;
    for (std::uint64_t p = 2; p * p <= limit; ++p) {
        for (std::uint64_t m = p * p; m <= limit; m += p * p)
            flags[m] = 0;
    }
    return flags;
}

std::vector<SquarefullDecomposition> sieve_decompositions(std::uint64_t limit, unsigned threads)
{
    if (limit == 0)
        return {};
    const std::uint64_t dmax = static_cast<std::uint64_t>(icbrt(static_cast<std::int64_t>(limit)).root);
    const auto squarefree = squarefree_flags(dmax);

    constexpr std::uint64_t kChunks = 64;
    const std::uint64_t span_len = (dmax + kChunks - 1) / kChunks;
    auto parts = parallel_chunks(kChunks, threads, [&](std::size_t chunk) {
        std::vector<SquarefullDecomposition> out;
        const std::uint64_t lo = 1 + chunk * span_len;
        const std::uint64_t hi = std::min(dmax, lo + span_len - 1);
        for (std::uint64_t d = lo; d <= hi; ++d) {
            if (!squarefree[d])
                continue;
            const std::uint64_t d3 = d * d * d;
            const std::uint64_t emax = isqrt(limit / d3).root;
            for (std::uint64_t e = 1; e <= emax; ++e)
                out.push_back({e * e * d3, e, d});
        }
        return out;
    });

    std::vector<SquarefullDecomposition> all;
    for (auto& p : parts)
        all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (all[i].n == all[i - 1].n)
            throw std::logic_error("sieve_squarefull: non-unique decomposition of " + std::to_string(all[i].n));
    }
    return all;
}

std::vector<std::uint64_t> sieve_squarefull(std::uint64_t limit, unsigned threads)
{
    const auto decs = sieve_decompositions(limit, threads);
    std::vector<std::uint64_t> out;
    out.reserve(decs.size());
    for (const auto& dec : decs)
        out.push_back(dec.n);
    return out;
}

double squarefull_main_term(double limit)
{
    static const double c_half = zeta(1.5) / zeta(3.0);
    static const double c_third = zeta(2.0 / 3.0) / zeta(2.0);
    return c_half * std::sqrt(limit) + c_third * std::cbrt(limit);
}

CountReport count_with_prediction(std::uint64_t limit, unsigned threads)
{
    if (limit == 0)
        throw std::invalid_argument("count_with_prediction: limit must be >= 1");
    CountReport rep;
    rep.limit = limit;
    rep.count = sieve_squarefull(limit, threads).size();
    rep.prediction = squarefull_main_term(static_cast<double>(limit));
    rep.deviation = static_cast<double>(rep.count) - rep.prediction;
    rep.normalized_deviation = rep.deviation / std::pow(static_cast<double>(limit), 1.0 / 6.0);
    return rep;
}

void write_decompositions_csv(std::ostream& os, std::span<const SquarefullDecomposition> rows)
{
    os << "n,e,d\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.e << ',' << r.d << '\n';
}

void write_count_reports_csv(std::ostream& os, std::span<const CountReport> rows)
{
    os << "N,S,P,deviation\n";
    for (const auto& r : rows)
        os << r.limit << ',' << r.count << ',' << fmt_real(r.prediction) << ',' << fmt_real(r.deviation) << '\n';
}

}  // namespace sqfull
