#include "sqfull/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sqfull/format.hpp"

namespace sqfull {

namespace {

__int128 qa_of(__int128 y1, __int128 y2) { return 3 * y1 * y1 * y2 - y2 * y2 * y2; }
__int128 qb_of(__int128 y1, __int128 y2) { return y1 * y1 * y1 - 3 * y1 * y2 * y2; }

__int128 iabs(__int128 v) { return v < 0 ? -v : v; }

BigInt big(__int128 v) { return BigInt(to_string(v)); }

// Every ordered, signed (u, v) with u^2 + v^2 = m.
std::vector<std::pair<std::int64_t, std::int64_t>> signed_representations(std::uint64_t m)
{
    std::set<std::pair<std::int64_t, std::int64_t>> all;
    for (const auto& [a, b] : two_square_representations(m)) {
        const auto u = static_cast<std::int64_t>(a), v = static_cast<std::int64_t>(b);
        for (int su : {1, -1}) {
            for (int sv : {1, -1}) {
                all.insert({su * u, sv * v});
                all.insert({sv * v, su * u});
            }
        }
    }
    return {all.begin(), all.end()};
}

}  // namespace

__int128 imaginary_part_form(const Quadruple& q)
{
    const __int128 x1 = q.x1, x2 = q.x2;
    return (x1 * x1 - x2 * x2) * qa_of(q.y1, q.y2) + 2 * x1 * x2 * qb_of(q.y1, q.y2);
}

__int128 real_part_form(const Quadruple& q)
{
    const __int128 x1 = q.x1, x2 = q.x2;
    return (x1 * x1 - x2 * x2) * qb_of(q.y1, q.y2) - 2 * x1 * x2 * qa_of(q.y1, q.y2);
}

Quadruple normalize(Quadruple q)
{
    if (std::llabs(q.x1) > std::llabs(q.x2)) {
        std::swap(q.x1, q.x2);
        q.y2 = -q.y2;
    }
    if ((q.x1 < 0) != (q.x2 < 0) && q.x1 != 0 && q.x2 != 0) {
        q.y1 = -q.y1;
        q.x2 = -q.x2;
    }
    return q;
}

QForms q_forms(std::int64_t y1, std::int64_t y2)
{
    if (y1 == 0 && y2 == 0)
        throw std::invalid_argument("q_forms: (y1, y2) must be nonzero");
    QForms f;
    f.qa = qa_of(y1, y2);
    f.qb = qb_of(y1, y2);
    f.q1 = iabs(f.qb) > iabs(f.qa) ? QChoice::B : QChoice::A;
    return f;
}

Extraction extract_solutions(const SolutionTriple& triple)
{
    if (triple.constant_term <= 0)
        throw std::invalid_argument("extract_solutions: polynomial must be x^2 + alpha^2 with alpha > 0");
    const auto root = isqrt(static_cast<std::uint64_t>(triple.constant_term));
    if (!root.exact)
        throw std::invalid_argument("extract_solutions: constant term is not a square");
    if (mu(triple.d) == 0)
        throw std::invalid_argument("extract_solutions: d = " + std::to_string(triple.d) + " is not square-free");
    const __int128 lhs = static_cast<__int128>(triple.e) * triple.e * triple.d * triple.d * triple.d;
    const __int128 rhs = static_cast<__int128>(triple.n) * triple.n + triple.constant_term;
    if (lhs != rhs)
        throw std::invalid_argument("extract_solutions: e^2 d^3 != n^2 + alpha^2");

    Extraction out{triple, root.root, {}};
    const auto alpha = static_cast<__int128>(root.root);
    std::set<Quadruple> seen;
    const auto xs = signed_representations(triple.e);
    const auto ys = signed_representations(triple.d);
    for (const auto& [x1, x2] : xs) {
        for (const auto& [y1, y2] : ys) {
            const Quadruple q{x1, x2, y1, y2};
            if (imaginary_part_form(q) != alpha || iabs(real_part_form(q)) != static_cast<__int128>(triple.n))
                continue;
            const Quadruple nq = normalize(q);
            if (!seen.insert(nq).second)
                continue;
            ExtractedSolution sol;
            sol.coords = nq;
            sol.e = triple.e;
            sol.d = triple.d;
            sol.alpha = root.root;
            sol.real_part = real_part_form(nq);
            sol.branch.y_swapped = std::llabs(nq.y1) > std::llabs(nq.y2);
            sol.branch.q1 = q_forms(nq.y1, nq.y2).q1;
            out.solutions.push_back(sol);
        }
    }
    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const auto& a, const auto& b) { return a.coords < b.coords; });
    return out;
}

MagnitudeReport verify_magnitude_claim(std::uint64_t d_max)
{
    if (d_max < 2)
        throw std::invalid_argument("verify_magnitude_claim: d_max must be >= 2");
    MagnitudeReport rep;
    rep.d_max = d_max;
    rep.min_ratio = INFINITY;
    for (std::uint64_t d = 1; d <= d_max; ++d) {
        if (mu(d) == 0)
            continue;
        const double scale = std::pow(static_cast<double>(d), 1.5);
        for (const auto& [y1, y2] : signed_representations(d)) {
            const QForms f = q_forms(y1, y2);
            const double ratio = static_cast<double>(std::max(iabs(f.qa), iabs(f.qb))) / scale;
            ++rep.representations;
            if (ratio < 0.25)
                ++rep.failures;
            if (ratio < rep.min_ratio) {
                rep.min_ratio = ratio;
                rep.witness_d = d;
                rep.witness_y1 = y1;
                rep.witness_y2 = y2;
            }
        }
    }
    return rep;
}

Rational phi(const Rational& s, const Branch& branch)
{
    const Rational one = 1;
    Rational qa, qb;
    if (!branch.y_swapped) {
        qa = 3 * s * s - one;
        qb = s * s * s - 3 * s;
    } else {
        qa = 3 * s - s * s * s;
        qb = one - 3 * s * s;
    }
    const Rational& q1 = branch.q1 == QChoice::A ? qa : qb;
    const Rational& q2 = branch.q1 == QChoice::A ? qb : qa;
    if (q1 == 0)
        throw DomainError("phi: q1 vanishes at s = " + s.get_str());
    return -q2 / q1;
}

Rational tau_of_w(const Rational& w, QChoice q1)
{
    const Rational num = w * w - 1;
    const Rational den = 2 * w;
    if (q1 == QChoice::A) {
        if (den == 0)
            throw DomainError("tau_of_w: w = 0");
        return num / den;
    }
    if (num == 0)
        throw DomainError("tau_of_w: w^2 = 1");
    return den / num;
}

CurvePoint curve_point(const ExtractedSolution& sol)
{
    const Quadruple& q = sol.coords;
    CurvePoint pt;
    pt.branch = sol.branch;
    const BigInt y1(static_cast<long>(q.y1)), y2(static_cast<long>(q.y2));
    pt.s = sol.branch.y_swapped ? Rational(y2, y1) : Rational(y1, y2);
    pt.s.canonicalize();
    pt.w = Rational(BigInt(static_cast<long>(q.x1)), BigInt(static_cast<long>(q.x2)));
    pt.w.canonicalize();
    const __int128 z1 = static_cast<__int128>(q.x1) * q.x1 - static_cast<__int128>(q.x2) * q.x2;
    const __int128 z2 = static_cast<__int128>(2) * q.x1 * q.x2;
    if (z2 == 0) {
        pt.degeneracy = Degeneracy::ZeroW;
        return pt;
    }
    if (z1 == 0) {
        pt.degeneracy = Degeneracy::UnitW;
        return pt;
    }
    pt.t = sol.branch.q1 == QChoice::A ? Rational(big(z1), big(z2)) : Rational(big(z2), big(z1));
    pt.t.canonicalize();
    return pt;
}

Residual tau_residual(const CurvePoint& point, std::uint64_t N, double C)
{
    if (point.degeneracy != Degeneracy::None)
        throw DomainError("tau_residual: degenerate point (w = 0 or w = 1)");
    if (N == 0)
        throw std::invalid_argument("tau_residual: N must be positive");
    Residual r;
    r.value = tau_of_w(point.w, point.branch.q1) - phi(point.s, point.branch);
    r.scaled = std::fabs(r.value.get_d()) * static_cast<double>(N);
    r.within = r.scaled <= C;
    return r;
}

void write_extraction_csv(std::ostream& os, std::span<const Extraction> rows, std::uint64_t N)
{
    os << "n,e,d,alpha,x1,x2,y1,y2,y_swapped,q1,degenerate,residual\n";
    for (const auto& ex : rows) {
        for (const auto& sol : ex.solutions) {
            const auto& q = sol.coords;
            const CurvePoint pt = curve_point(sol);
            os << ex.triple.n << ',' << sol.e << ',' << sol.d << ',' << sol.alpha << ',' << q.x1 << ',' << q.x2 << ','
               << q.y1 << ',' << q.y2 << ',' << (sol.branch.y_swapped ? 1 : 0) << ','
               << (sol.branch.q1 == QChoice::A ? "a" : "b") << ',';
            if (pt.degeneracy != Degeneracy::None) {
                os << (pt.degeneracy == Degeneracy::ZeroW ? "w0" : "w1") << ",\n";
                continue;
            }
            os << "none," << tau_residual(pt, N).value.get_str() << '\n';
        }
    }
}

}  // namespace sqfull
