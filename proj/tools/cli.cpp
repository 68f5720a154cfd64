#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqfull/curves.hpp"
#include "sqfull/detmethod.hpp"
#include "sqfull/experiments.hpp"
#include "sqfull/format.hpp"
#include "sqfull/gaussian.hpp"
#include "sqfull/quadratic.hpp"
#include "sqfull/squarefull.hpp"

namespace sqfull::cli {

namespace {

using json = nlohmann::ordered_json;

struct Config {
    std::string format = "csv";
    std::string out;
    unsigned threads = 0;
    std::uint64_t seed = 1;

    std::vector<std::uint64_t> limits;
    std::string n_value;
    std::string poly = "1,0,4";
    std::uint64_t nwindow = 0;
    std::uint64_t E = 0, D = 0;
    std::int64_t dmax = 0, box = 0, mordell_D = 0;
    std::int64_t c = 0, d = 0, alpha = 0;
    double eta = 0.1;
    unsigned K = 3, L = 3;
    bool auto_K = false;
    std::uint64_t probe_samples = 0, probe_D = 10000, probe_M = 1000;
    std::int64_t H = 0;
    std::uint64_t N = 0;
    std::string c_big = "1", b_big, e_big, d_big, n_big;
    std::string in;
    double grid_step = 1e-6;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

BigInt parse_big(const std::string& s, const char* what)
{
    BigInt v;
    if (s.empty() || v.set_str(s, 10) != 0)
        throw UsageError(std::string("invalid integer for ") + what + ": '" + s + "'");
    return v;
}

QuadraticPoly parse_poly(const std::string& s)
{
    std::vector<std::int64_t> coef;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw UsageError("--poly expects a,b,c integers, got '" + s + "'");
        coef.push_back(v);
    }
    if (coef.size() != 3)
        throw UsageError("--poly expects exactly three coefficients a,b,c");
    return {coef[0], coef[1], coef[2]};
}

std::string rational_str(const Rational& q)
{
    return q.get_den() == 1 ? q.get_num().get_str() + "/1" : q.get_str();
}

json jnum(const BigInt& v)
{
    if (v.fits_slong_p())
        return json(v.get_si());
    return json(v.get_str());
}

void emit_json(std::ostream& os, json j)
{
    json out;
    out["schema"] = 1;
    for (auto& [k, v] : j.items())
        out[k] = v;
    os << out.dump(2) << '\n';
}

bool as_json(const Config& c) { return c.format == "json"; }

// --- handlers ---------------------------------------------------------------

void do_sieve(const Config& c, std::ostream& os)
{
    if (c.limits.size() != 1)
        throw UsageError("sieve takes a single --limit");
    const auto rows = sieve_decompositions(c.limits[0], c.threads);
    if (!as_json(c)) {
        write_decompositions_csv(os, rows);
        return;
    }
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"n", r.n}, {"e", r.e}, {"d", r.d}});
    emit_json(os, {{"limit", c.limits[0]}, {"count", rows.size()}, {"rows", arr}});
}

void do_count(const Config& c, std::ostream& os)
{
    std::vector<CountReport> reps;
    for (auto N : c.limits)
        reps.push_back(count_with_prediction(N, c.threads));
    if (!as_json(c)) {
        write_count_reports_csv(os, reps);
        return;
    }
    json arr = json::array();
    for (const auto& r : reps)
        arr.push_back({{"N", r.limit},
                       {"S", r.count},
                       {"P", r.prediction},
                       {"deviation", r.deviation},
                       {"normalized_deviation", r.normalized_deviation}});
    emit_json(os, {{"reports", arr}});
}

void do_decompose(const Config& c, std::ostream& os)
{
    const BigInt n = parse_big(c.n_value, "--n");
    if (n < 1)
        throw UsageError("--n must be positive");
    const auto r = decompose_e2d3(n);
    if (as_json(c))
        emit_json(os, {{"n", jnum(r.n)}, {"e", jnum(r.e)}, {"d", jnum(r.d)}});
    else
        os << "n,e,d\n" << r.n.get_str() << ',' << r.e.get_str() << ',' << r.d.get_str() << '\n';
}

void do_poly_count(const Config& c, std::ostream& os)
{
    if (c.limits.size() != 1)
        throw UsageError("poly-count takes a single --limit");
    const auto f = parse_poly(c.poly);
    const auto scan = scan_squarefull_values(f, 1, c.limits[0], c.threads);
    if (!as_json(c)) {
        write_triples_csv(os, scan.triples);
        return;
    }
    json arr = json::array();
    for (const auto& t : scan.triples)
        arr.push_back({{"n", t.n}, {"e", t.e}, {"d", t.d}});
    emit_json(os, {{"poly", f.str()},
                   {"limit", c.limits[0]},
                   {"count", scan.triples.size()},
                   {"skipped_nonpositive", scan.skipped_nonpositive},
                   {"admissible", is_admissible(f)},
                   {"triples", arr}});
}

void do_mcell(const Config& c, std::ostream& os)
{
    const auto f = parse_poly(c.poly);
    if (c.nwindow < 1)
        throw UsageError("--nwindow must be >= 1");
    const auto cell = m_cell_count(f, c.nwindow, c.E, c.D, c.threads);
    const auto cross = m_cell_count_by_divisors(f, c.nwindow, c.E, c.D);
    if (cell.count != cross.count)
        throw std::logic_error("mcell: n-major and d-major counts disagree");
    if (as_json(c)) {
        emit_json(os, {{"poly", f.str()}, {"N", c.nwindow}, {"E", cell.E}, {"D", cell.D}, {"count", cell.count}});
        return;
    }
    const std::vector<DyadicCell> rows{cell};
    write_cells_csv(os, rows);
}

void do_dyadic_check(const Config& c, std::ostream& os)
{
    const auto f = parse_poly(c.poly);
    if (c.nwindow < 1)
        throw UsageError("--nwindow must be >= 1");
    const auto chk = dyadic_decomposition_check(f, c.nwindow, c.threads);
    if (!as_json(c)) {
        write_cells_csv(os, chk.cells);
        return;
    }
    json cells = json::array();
    for (const auto& cell : chk.cells)
        cells.push_back({{"E", cell.E}, {"D", cell.D}, {"count", cell.count}});
    emit_json(os, {{"poly", f.str()},
                   {"N", chk.N},
                   {"lhs", chk.lhs},
                   {"rhs", chk.rhs},
                   {"equal", chk.equal},
                   {"grid_cells", chk.grid_cells},
                   {"bucket_mismatches", chk.bucket_mismatches},
                   {"slack", chk.slack},
                   {"cells", cells}});
}

void do_mordell(const Config& c, std::ostream& os)
{
    if (c.box < 1)
        throw UsageError("--box must be >= 1");
    if (c.mordell_D != 0) {
        const auto r = mordell_points(c.mordell_D, c.box, c.threads);
        if (as_json(c)) {
            json pts = json::array();
            for (const auto& [x, y] : r.points)
                pts.push_back({x, y});
            emit_json(os, {{"D", r.D}, {"box", r.box}, {"count", r.count()}, {"points", pts}});
        } else {
            os << "x,y\n";
            for (const auto& [x, y] : r.points)
                os << x << ',' << y << '\n';
        }
        return;
    }
    const auto scan = mordell_exponent_scan(c.dmax, c.box, c.threads);
    if (!as_json(c)) {
        write_mordell_csv(os, scan.rows);
        return;
    }
    json rows = json::array();
    for (const auto& r : scan.rows)
        rows.push_back({{"D", r.abs_D}, {"count_pos", r.count_pos}, {"count_neg", r.count_neg}, {"count", r.max_count}});
    emit_json(os, {{"box", scan.box},
                   {"slope", scan.slope},
                   {"intercept", scan.intercept},
                   {"fitted_points", scan.fitted_points},
                   {"varpi0_reference", scan.varpi0_reference},
                   {"rows", rows}});
}

void do_pell(const Config& c, std::ostream& os)
{
    if (c.limits.size() != 1)
        throw UsageError("pell takes a single --limit");
    const auto fam = pell_family(BigInt(static_cast<unsigned long>(c.limits[0])));
    if (!as_json(c)) {
        write_pell_csv(os, fam);
        return;
    }
    json rows = json::array();
    for (const auto& s : fam)
        rows.push_back({{"d", jnum(s.d)}, {"k", jnum(s.k)}, {"n", jnum(s.n)}});
    emit_json(os, {{"limit", c.limits[0]}, {"rows", rows}});
}

void do_thue(const Config& c, std::ostream& os)
{
    const auto cls = classify_cubic_form(c.c, c.d);
    const auto cnt = thue_count(c.c, c.d, c.alpha, c.box, c.threads);
    const bool linear = cls.kind == CubicFormKind::LinearFactor;
    if (!as_json(c)) {
        os << "c,d,alpha,box,kind,all,primitive,reference\n"
           << c.c << ',' << c.d << ',' << c.alpha << ',' << c.box << ',' << (linear ? "linear" : "irreducible") << ','
           << cnt.all << ',' << cnt.primitive << ',' << fmt_real(cnt.reference) << '\n';
        return;
    }
    json j{{"c", c.c}, {"d", c.d}, {"alpha", c.alpha}, {"box", c.box}, {"kind", linear ? "linear" : "irreducible"}};
    if (linear) {
        j["factor"] = {{"p", cls.p}, {"q", cls.q}};
        j["cofactor"] = {rational_str(cls.quad_a), rational_str(cls.quad_b), rational_str(cls.quad_e)};
        j["cofactor_discriminant"] = rational_str(cls.cofactor_discriminant);
        j["predicted_discriminant"] = rational_str(cls.predicted_discriminant);
    }
    j["all"] = cnt.all;
    j["primitive"] = cnt.primitive;
    j["reference"] = cnt.reference;
    emit_json(os, j);
}

void do_gaussian_check(const Config& c, std::ostream& os)
{
    if (c.dmax > 0) {
        const auto rep = verify_magnitude_claim(static_cast<std::uint64_t>(c.dmax));
        if (as_json(c)) {
            emit_json(os, {{"d_max", rep.d_max},
                           {"representations", rep.representations},
                           {"min_ratio", rep.min_ratio},
                           {"witness", {rep.witness_d, rep.witness_y1, rep.witness_y2}},
                           {"failures", rep.failures}});
        } else {
            os << "d_max,representations,min_ratio,witness_d,witness_y1,witness_y2,failures\n"
               << rep.d_max << ',' << rep.representations << ',' << fmt_real(rep.min_ratio) << ',' << rep.witness_d
               << ',' << rep.witness_y1 << ',' << rep.witness_y2 << ',' << rep.failures << '\n';
        }
        if (rep.failures)
            throw DomainError("magnitude claim fails for d = " + std::to_string(rep.witness_d));
        return;
    }
    if (c.alpha < 1 || c.nwindow < 1)
        throw UsageError("gaussian-check needs --alpha >= 1 and --nwindow >= 1 (or --dmax)");
    const QuadraticPoly f{1, 0, c.alpha * c.alpha};
    const auto triples = scan_squarefull_values(f, c.nwindow + 1, 2 * c.nwindow, c.threads).triples;
    std::vector<Extraction> rows;
    for (const auto& t : triples)
        rows.push_back(extract_solutions(t));
    if (!as_json(c)) {
        write_extraction_csv(os, rows, c.nwindow);
        return;
    }
    json arr = json::array();
    std::size_t unextracted = 0;
    for (const auto& ex : rows) {
        if (ex.solutions.empty())
            ++unextracted;
        for (const auto& s : ex.solutions) {
            const auto pt = curve_point(s);
            json r{{"n", ex.triple.n},
                   {"e", s.e},
                   {"d", s.d},
                   {"x", {s.coords.x1, s.coords.x2}},
                   {"y", {s.coords.y1, s.coords.y2}},
                   {"y_swapped", s.branch.y_swapped},
                   {"q1", s.branch.q1 == QChoice::A ? "a" : "b"}};
            if (pt.degeneracy == Degeneracy::None) {
                const auto res = tau_residual(pt, c.nwindow);
                r["s"] = rational_str(pt.s);
                r["w"] = rational_str(pt.w);
                r["residual"] = rational_str(res.value);
                r["scaled_residual"] = res.scaled;
            } else {
                r["degenerate"] = pt.degeneracy == Degeneracy::ZeroW ? "w0" : "w1";
            }
            arr.push_back(std::move(r));
        }
    }
    emit_json(os, {{"alpha", c.alpha},
                   {"N", c.nwindow},
                   {"triples", triples.size()},
                   {"unextracted", unextracted},
                   {"solutions", arr}});
}

void do_detmethod(const Config& c, std::ostream& os)
{
    if (c.alpha < 1 || c.nwindow < 1)
        throw UsageError("detmethod needs --alpha >= 1 and --nwindow >= 1");
    PipelineOptions opt;
    opt.eta = c.eta;
    opt.K = c.K;
    opt.L = c.L;
    opt.auto_K = c.auto_K;
    const auto rep = interval_pipeline(static_cast<std::uint64_t>(c.alpha), c.nwindow, opt, c.threads);
    if (c.probe_samples > 0) {
        // Append the probe to the JSON report.
        std::ostringstream tmp;
        write_pipeline_json(tmp, rep);
        auto j = json::parse(tmp.str());
        const auto probe = l1_upper_probe(static_cast<std::int64_t>(c.probe_D), static_cast<std::int64_t>(c.probe_M),
                                          c.probe_samples, c.seed);
        j["l1_probe"] = {{"D", c.probe_D},
                         {"M", c.probe_M},
                         {"samples", c.probe_samples},
                         {"seed", c.seed},
                         {"max_l1", probe.max_l1},
                         {"ratio_to_sqrt_d", probe.ratio_to_sqrt_d},
                         {"comparison", probe.comparison},
                         {"soft_bound", probe.soft_bound},
                         {"soft_ok", probe.soft_ok}};
        os << j.dump(2) << '\n';
        return;
    }
    write_pipeline_json(os, rep);
}

void do_exponents(const Config& c, std::ostream& os)
{
    const auto x = exponents(c.grid_step);
    const auto t = theorem2_tradeoff(x.varpi0);
    if (c.format == "csv") {
        os << "name,value\n"
           << "beta," << fmt_real(x.beta) << "\nvarpi0," << fmt_real(x.varpi0) << "\nvarpi_thm2,"
           << fmt_real(x.varpi_thm2) << "\ne_opt_exponent," << fmt_real(x.e_opt_exponent) << "\npsi_star,"
           << fmt_real(x.psi_star) << "\nvarpi_thm1," << fmt_real(x.varpi_thm1) << "\npsi_exact,"
           << rational_str(x.psi_exact) << "\nvarpi_thm1_exact," << rational_str(x.varpi_thm1_exact) << '\n';
        return;
    }
    emit_json(os, {{"beta", x.beta},
                   {"varpi0", x.varpi0},
                   {"varpi_thm2", x.varpi_thm2},
                   {"e_opt_exponent", x.e_opt_exponent},
                   {"psi_star", x.psi_star},
                   {"varpi_thm1", x.varpi_thm1},
                   {"psi_exact", rational_str(x.psi_exact)},
                   {"varpi_thm1_exact", rational_str(x.varpi_thm1_exact)},
                   {"tradeoff_grid_value", t.grid_value},
                   {"conjectural_value", theorem2_tradeoff(0.0).value}});
}

void do_abc_chain(const Config& c, std::ostream& os)
{
    const auto ch = abc_chain(parse_big(c.c_big, "--c"), parse_big(c.b_big, "--b"), parse_big(c.e_big, "--e"),
                              parse_big(c.d_big, "--d"), parse_big(c.n_big, "--n"));
    if (!as_json(c)) {
        os << "ell,n1,b1,ell1,b2,ell2,lhs,rhs,identity_holds,quality\n"
           << ch.ell.get_str() << ',' << ch.n1.get_str() << ',' << ch.b1.get_str() << ',' << ch.ell1.get_str() << ','
           << ch.b2.get_str() << ',' << ch.ell2.get_str() << ',' << ch.lhs.get_str() << ',' << ch.rhs.get_str() << ','
           << (ch.identity_holds ? 1 : 0) << ',' << (ch.coprime_terms ? fmt_real(ch.quality) : "") << '\n';
        return;
    }
    json j{{"ell", jnum(ch.ell)}, {"n1", jnum(ch.n1)},   {"b1", jnum(ch.b1)},   {"ell1", jnum(ch.ell1)},
           {"b2", jnum(ch.b2)},   {"ell2", jnum(ch.ell2)}, {"lhs", jnum(ch.lhs)}, {"rhs", jnum(ch.rhs)},
           {"identity_holds", ch.identity_holds}, {"coprime_terms", ch.coprime_terms}};
    if (ch.coprime_terms)
        j["quality"] = ch.quality;
    emit_json(os, j);
}

void do_randpoly(const Config& c, std::ostream& os)
{
    if (c.H < 0 || c.N < 1)
        throw UsageError("randpoly needs --H >= 0 and --N >= 1");
    const auto f = random_family_average(c.H, c.N, c.threads);
    if (as_json(c)) {
        emit_json(os, {{"H", f.H},
                       {"N", f.N},
                       {"total", f.total},
                       {"family_size", f.family_size},
                       {"average", f.average},
                       {"bound_ratio", f.bound_ratio}});
        return;
    }
    os << "H,N,total,family_size,average,bound_ratio\n"
       << f.H << ',' << f.N << ',' << f.total << ',' << f.family_size << ',' << fmt_real(f.average) << ','
       << fmt_real(f.bound_ratio) << '\n';
}

void do_fit(const Config& c, std::ostream& os)
{
    std::ifstream in(c.in);
    if (!in)
        throw UsageError("cannot open --in file '" + c.in + "'");
    const auto series = read_series_csv(in);
    const auto fit = fit_exponent(series);
    if (as_json(c)) {
        emit_json(os, {{"slope", fit.slope},
                       {"intercept", fit.intercept},
                       {"residual_sum", fit.residual_sum},
                       {"samples", fit.samples}});
        return;
    }
    os << "slope,intercept,residual_sum,samples\n"
       << fmt_real(fit.slope) << ',' << fmt_real(fit.intercept) << ',' << fmt_real(fit.residual_sum) << ','
       << fit.samples << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config cfg;
    CLI::App app{"Square-full values of quadratic polynomials: desk-scale experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sqfull 0.1.0");

    std::map<std::string, std::function<void(const Config&, std::ostream&)>> handlers;
    auto add = [&](const std::string& name, const std::string& help, auto handler) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out, "Output file (default stdout)");
        sub->add_option("--threads", cfg.threads, "Worker threads (default SQFULL_THREADS or all cores)")
            ->check(CLI::Range(1u, 1024u));
        sub->add_option("--seed", cfg.seed, "Random seed");
        handlers[name] = handler;
        return sub;
    };

    add("sieve", "List square-full n <= limit with (e, d)", do_sieve)
        ->add_option("--limit", cfg.limits, "Upper limit")
        ->required()
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 50));
    add("count", "Square-full counts against the two-term main term", do_count)
        ->add_option("--limit", cfg.limits, "One or more limits")
        ->required()
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 50));
    add("decompose", "Write a square-full n as e^2 d^3", do_decompose)->add_option("--n", cfg.n_value)->required();

    auto* pc = add("poly-count", "Square-full values f(n), n <= limit", do_poly_count);
    pc->add_option("--poly", cfg.poly, "Coefficients a,b,c")->required();
    pc->add_option("--limit", cfg.limits)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 32));

    auto* mc = add("mcell", "M(E, D) for N < n <= 2N", do_mcell);
    mc->add_option("--poly", cfg.poly)->required();
    mc->add_option("--nwindow", cfg.nwindow)->required();
    mc->add_option("--E", cfg.E, "Dyadic lower endpoint for e (0 = unit cell)")->required();
    mc->add_option("--D", cfg.D, "Dyadic lower endpoint for d (0 = unit cell)")->required();

    auto* dc = add("dyadic-check", "S_f(2N) - S_f(N) against the summed dyadic cells", do_dyadic_check);
    dc->add_option("--poly", cfg.poly)->required();
    dc->add_option("--nwindow", cfg.nwindow)->required();

    auto* mo = add("mordell", "Boxed integral points on y^2 = x^3 + D", do_mordell);
    mo->add_option("--dmax", cfg.dmax, "Scan |D| = 1..dmax")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
    mo->add_option("--D", cfg.mordell_D, "Single curve");
    mo->add_option("--box", cfg.box)->required();

    add("pell", "Negative Pell family n = 2d with n^2 + 4 = 8k^2", do_pell)
        ->add_option("--limit", cfg.limits)
        ->required()
        ->check(CLI::Range(std::uint64_t{2}, ~std::uint64_t{0}));

    auto* th = add("thue", "Classify P_{c,d} and count its solutions in a box", do_thue);
    th->add_option("--c", cfg.c)->required();
    th->add_option("--d", cfg.d)->required();
    th->add_option("--alpha", cfg.alpha)->required();
    th->add_option("--box", cfg.box)->required();

    auto* gc = add("gaussian-check", "Gaussian coordinates of x^2 + alpha^2 solutions", do_gaussian_check);
    gc->add_option("--alpha", cfg.alpha);
    gc->add_option("--nwindow", cfg.nwindow);
    gc->add_option("--dmax", cfg.dmax, "Check the q-form magnitude bound up to dmax instead");

    auto* dm = add("detmethod", "Interval pipeline of the determinant method", do_detmethod);
    dm->add_option("--alpha", cfg.alpha)->required();
    dm->add_option("--nwindow", cfg.nwindow)->required();
    dm->add_option("--eta", cfg.eta)->check(CLI::NonNegativeNumber);
    dm->add_option("--K", cfg.K);
    dm->add_option("--L", cfg.L);
    dm->add_flag("--auto-K", cfg.auto_K, "K = floor(L log E / log D) per cell");
    dm->add_option("--probe-samples", cfg.probe_samples, "Also run the L1 probe with this many samples");
    dm->add_option("--probe-D", cfg.probe_D)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    dm->add_option("--probe-M", cfg.probe_M)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));

    add("exponents", "Exponent constants and optimizations", do_exponents)
        ->add_option("--grid-step", cfg.grid_step)
        ->check(CLI::Range(1e-8, 1.0));

    auto* ab = add("abc-chain", "gcd reduction of c e^2 d^3 = n^2 + b", do_abc_chain);
    ab->add_option("--c", cfg.c_big);
    ab->add_option("--b", cfg.b_big)->required();
    ab->add_option("--e", cfg.e_big)->required();
    ab->add_option("--d", cfg.d_big)->required();
    ab->add_option("--n", cfg.n_big)->required();

    auto* rp = add("randpoly", "Family total of S_f(N) over |a_i| <= H", do_randpoly);
    rp->add_option("--H", cfg.H)->required();
    rp->add_option("--N", cfg.N)->required();

    add("fit", "Least-squares exponent of an x,y series", do_fit)->add_option("--in", cfg.in)->required();

    // CLI11 consumes a reversed vector; drop the program name.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty())
        rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        err << app.help();
        return kUsageError;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    // exponents defaults to JSON; the pipeline report is JSON only
    if (name == "exponents" && sub->count("--format") == 0)
        cfg.format = "json";
    if (name == "detmethod")
        cfg.format = "json";
    if (name == "mordell" && cfg.mordell_D == 0 && cfg.dmax == 0) {
        err << "mordell: one of --D or --dmax is required\n" << sub->help();
        return kUsageError;
    }
    if (cfg.threads == 0)
        cfg.threads = default_threads();

    try {
        std::ostringstream buf;
        handlers.at(name)(cfg, buf);
        if (cfg.out.empty()) {
            out << buf.str();
        } else {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!file)
                throw UsageError("cannot open --out file '" + cfg.out + "'");
            file << buf.str();
        }
        return kOk;
    } catch (const DomainError& e) {
        err << name << ": " << e.what() << '\n';
        return kDomainError;
    } catch (const std::invalid_argument& e) {
        err << name << ": " << e.what() << '\n' << sub->help();
        return kUsageError;
    }
}

}  // namespace sqfull::cli
