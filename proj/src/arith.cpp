#include "sqfull/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace sqfull {

namespace {

constexpr std::uint32_t kPrimeTableLimit = 1'000'000;

std::vector<std::uint32_t> build_prime_table()
{
    std::vector<bool> composite(kPrimeTableLimit + 1, false);
    std::vector<std::uint32_t> primes;
    primes.reserve(78'500);
    for (std::uint32_t i = 2; i <= kPrimeTableLimit; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j <= kPrimeTableLimit; j += i)
            composite[j] = true;
    }
    return primes;
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

// Brent's variant; n must be composite and odd.
std::uint64_t pollard_brent(std::uint64_t n)
{
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void split_u64(std::uint64_t n, std::map<std::uint64_t, unsigned>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    const std::uint64_t g = pollard_brent(n);
    split_u64(g, out);
    split_u64(n / g, out);
}

BigInt pollard_brent(const BigInt& n)
{
    for (unsigned long c = 1;; ++c) {
        auto f = [&](const BigInt& x) {
            BigInt r = x * x + c;
            mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
            return r;
        };
        BigInt y = 2, x = 2, g = 1, q = 1, ys = 2, diff;
        unsigned long r = 1;
        constexpr unsigned long m = 128;
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    diff = abs(x - y);
                    q = q * diff % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void split_big(const BigInt& n, std::map<BigInt, unsigned>& out)
{
    if (n == 1)
        return;
    if (n.fits_ulong_p()) {
        std::map<std::uint64_t, unsigned> small;
        split_u64(n.get_ui(), small);
        for (auto [p, e] : small)
            out[BigInt(static_cast<unsigned long>(p))] += e;
        return;
    }
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    const BigInt g = pollard_brent(n);
    split_big(g, out);
    split_big(BigInt(n / g), out);
}

}  // namespace

Factorization::Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors))
{
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].exponent == 0 || factors_[i].prime < 2)
            throw std::invalid_argument("Factorization: invalid prime power");
        if (i > 0 && factors_[i - 1].prime >= factors_[i].prime)
            throw std::invalid_argument("Factorization: primes must be strictly increasing");
    }
}

BigInt Factorization::value() const
{
    BigInt v = 1;
    for (const auto& [p, e] : factors_) {
        BigInt pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

int Factorization::mu() const
{
    if (!is_squarefree())
        return 0;
    return factors_.size() % 2 == 0 ? 1 : -1;
}

BigInt Factorization::rad() const
{
    BigInt r = 1;
    for (const auto& pp : factors_)
        r *= pp.prime;
    return r;
}

BigInt Factorization::tau() const
{
    BigInt t = 1;
    for (const auto& pp : factors_)
        t *= pp.exponent + 1;
    return t;
}

bool Factorization::is_squarefree() const
{
    return std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

bool Factorization::is_squarefull() const
{
    return std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& pp) { return pp.exponent >= 2; });
}

std::span<const std::uint32_t> small_primes()
{
    static const std::vector<std::uint32_t> table = build_prime_table();
    return table;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are deterministic for all n < 2^64.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

bool is_prime(const BigInt& n)
{
    if (n.fits_ulong_p())
        return is_prime(static_cast<std::uint64_t>(n.get_ui()));
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Factorization factorize(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("factorize: n must be positive");
    std::map<std::uint64_t, unsigned> exps;
    for (std::uint32_t p : small_primes()) {
        if (std::uint64_t{p} * p > n)
            break;
        while (n % p == 0) {
            ++exps[p];
            n /= p;
        }
    }
    if (n > 1) {
        if (n < std::uint64_t{kPrimeTableLimit} * kPrimeTableLimit)
            ++exps[n];
        else
            split_u64(n, exps);
    }
    std::vector<PrimePower> out;
    out.reserve(exps.size());
    for (auto [p, e] : exps)
        out.push_back({BigInt(static_cast<unsigned long>(p)), e});
    return Factorization(std::move(out));
}

Factorization factorize(const BigInt& n)
{
    if (n <= 0)
        throw std::invalid_argument("factorize: n must be positive");
    if (n.fits_ulong_p())
        return factorize(static_cast<std::uint64_t>(n.get_ui()));
    std::map<BigInt, unsigned> exps;
    BigInt m = n;
    for (std::uint32_t p : small_primes()) {
        if (BigInt(p) * p > m)
            break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            ++exps[BigInt(p)];
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        }
    }
    split_big(m, exps);
    std::vector<PrimePower> out;
    out.reserve(exps.size());
    for (auto& [p, e] : exps)
        out.push_back({p, e});
    return Factorization(std::move(out));
}

int mu(std::uint64_t n) { return factorize(n).mu(); }

std::uint64_t rad(std::uint64_t n) { return factorize(n).rad().get_ui(); }

unsigned omega(std::uint64_t n) { return factorize(n).omega(); }

std::uint64_t tau(std::uint64_t n) { return factorize(n).tau().get_ui(); }

double zeta(double s, double tol)
{
    if (!(s > 0.0) || s == 1.0)
        throw std::invalid_argument("zeta: requires s > 0 and s != 1");
    if (!(tol > 0.0))
        throw std::invalid_argument("zeta: tolerance must be positive");

    using ld = long double;
    const ld ls = s;
    // eta(s) partial sums, then repeated pairwise averaging.
    auto eta_estimate = [&](int terms) {
        std::vector<ld> partial(terms);
        ld acc = 0;
        for (int k = 1; k <= terms; ++k) {
            const ld term = std::pow(static_cast<ld>(k), -ls);
            acc += (k % 2 == 1) ? term : -term;
            partial[k - 1] = acc;
        }
        for (int width = terms; width > 1; --width) {
            for (int i = 0; i + 1 < width; ++i)
                partial[i] = (partial[i] + partial[i + 1]) / 2;
        }
        return partial[0];
    };

    const ld denom = 1 - std::pow(2.0L, 1 - ls);
    ld prev = eta_estimate(16) / denom;
    for (int terms = 32; terms <= 4096; terms *= 2) {
        const ld cur = eta_estimate(terms) / denom;
        if (std::fabs(cur - prev) < tol / 16)
            return static_cast<double>(cur);
        prev = cur;
    }
    return static_cast<double>(prev);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> two_square_representations(std::uint64_t m)
{
    std::vector<std::pair<std::uint64_t, std::uint64_t>> reps;
    for (std::uint64_t x1 = 0; 2 * static_cast<unsigned __int128>(x1) * x1 <= m; ++x1) {
        const auto r = isqrt(m - x1 * x1);
        if (r.exact)
            reps.emplace_back(x1, r.root);
    }
    return reps;
}

Root<std::uint64_t> isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<unsigned __int128>(r) * r > n)
        --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n)
        ++r;
    return {r, static_cast<unsigned __int128>(r) * r == n};
}

Root<BigInt> isqrt(const BigInt& n)
{
    if (n < 0)
        throw std::invalid_argument("isqrt: negative input");
    Root<BigInt> out;
    BigInt rem;
    mpz_sqrtrem(out.root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    out.exact = rem == 0;
    return out;
}

Root<std::int64_t> icbrt(std::int64_t n)
{
    auto r = static_cast<std::int64_t>(std::cbrt(static_cast<long double>(n)));
    auto cube = [](std::int64_t x) { return static_cast<__int128>(x) * x * x; };
    while (cube(r) > n)
        --r;
    while (cube(r + 1) <= n)
        ++r;
    return {r, cube(r) == n};
}

Root<BigInt> icbrt(const BigInt& n)
{
    Root<BigInt> out;
    out.exact = mpz_root(out.root.get_mpz_t(), n.get_mpz_t(), 3) != 0;
    // mpz_root truncates toward zero; shift to floor for negative inexact roots.
    if (n < 0 && !out.exact)
        out.root -= 1;
    return out;
}

bool is_square(__int128 v, std::uint64_t* root)
{
    if (v < 0)
        return false;
    if (v <= static_cast<__int128>(UINT64_MAX)) {
        const auto r = isqrt(static_cast<std::uint64_t>(v));
        if (root)
            *root = r.root;
        return r.exact;
    }
    BigInt big;
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    const auto lo = static_cast<std::uint64_t>(v);
    big = BigInt(static_cast<unsigned long>(hi));
    big <<= 64;
    big += BigInt(static_cast<unsigned long>(lo));
    const auto r = isqrt(big);
    if (root)
        *root = r.root.fits_ulong_p() ? r.root.get_ui() : 0;
    return r.exact && r.root.fits_ulong_p();
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::string to_string(__int128 v)
{
    if (v == 0)
        return "0";
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg)
        s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace sqfull
