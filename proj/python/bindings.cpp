#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sqfull/arith.hpp"
#include "sqfull/curves.hpp"
#include "sqfull/detmethod.hpp"
#include "sqfull/experiments.hpp"
#include "sqfull/quadratic.hpp"
#include "sqfull/squarefull.hpp"

namespace py = pybind11;
using namespace sqfull;

namespace {

// GMP integers cross the boundary as Python ints via their decimal form.
py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.get_str())); }

BigInt from_py(const py::int_& v) { return BigInt(py::str(v).cast<std::string>()); }

py::int_ to_py(__int128 v) { return py::int_(py::str(sqfull::to_string(v))); }

QuadraticPoly poly(std::int64_t a, std::int64_t b, std::int64_t c) { return QuadraticPoly{a, b, c}; }

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Square-full numbers, square-full values of quadratics, and the determinant method";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("is_squarefull", [](const py::int_& n) { return is_squarefull(from_py(n)); }, py::arg("n"));
    m.def(
        "decompose",
        [](const py::int_& n) {
            const auto r = decompose_e2d3(from_py(n));
            return py::make_tuple(to_py(r.e), to_py(r.d));
        },
        py::arg("n"), "Return (e, d) with n = e^2 d^3 and d square-free.");
    m.def(
        "factorize",
        [](const py::int_& n) {
            std::vector<std::pair<py::int_, unsigned>> out;
            const Factorization f = factorize(from_py(n));
            for (const auto& pp : f.factors())
                out.emplace_back(to_py(pp.prime), pp.exponent);
            return out;
        },
        py::arg("n"));
    m.def("sieve", &sieve_squarefull, py::arg("limit"), py::arg("threads") = default_threads(),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "count",
        [](std::uint64_t limit, unsigned threads) {
            const auto r = count_with_prediction(limit, threads);
            py::dict d;
            d["N"] = r.limit;
            d["S"] = r.count;
            d["P"] = r.prediction;
            d["deviation"] = r.deviation;
            d["normalized_deviation"] = r.normalized_deviation;
            return d;
        },
        py::arg("limit"), py::arg("threads") = default_threads());
    m.def("zeta", [](double s) { return zeta(s); }, py::arg("s"));

    m.def(
        "majorant",
        [](std::int64_t a, std::int64_t b, std::int64_t c) {
            const auto g = majorant(poly(a, b, c));
            return py::make_tuple(g.p, to_py(g.q), g.scale);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), "Return (p, q, 2a) with 4a^2 f(x) = p (2ax + b)^2 + q.");
    m.def("is_admissible", [](std::int64_t a, std::int64_t b, std::int64_t c) { return is_admissible(poly(a, b, c)); });
    m.def(
        "poly_count",
        [](std::int64_t a, std::int64_t b, std::int64_t c, std::uint64_t limit, unsigned threads) {
            return count_squarefull_values(poly(a, b, c), limit, threads);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("limit"), py::arg("threads") = default_threads());
    m.def(
        "triples",
        [](std::int64_t a, std::int64_t b, std::int64_t c, std::uint64_t limit, unsigned threads) {
            std::vector<py::tuple> out;
            for (const auto& t : enumerate_triples(poly(a, b, c), limit, threads))
                out.push_back(py::make_tuple(t.n, t.e, t.d));
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("limit"), py::arg("threads") = default_threads());

    m.def(
        "mordell_points",
        [](std::int64_t D, std::int64_t box, unsigned threads) { return mordell_points(D, box, threads).points; },
        py::arg("D"), py::arg("box"), py::arg("threads") = default_threads());
    m.def(
        "pell_family",
        [](const py::int_& limit) {
            std::vector<py::tuple> out;
            for (const auto& s : pell_family(from_py(limit)))
                out.push_back(py::make_tuple(to_py(s.d), to_py(s.k), to_py(s.n)));
            return out;
        },
        py::arg("limit_n"));
    m.def("pell_like_count", &pell_like_count, py::arg("gamma"), py::arg("m"), py::arg("box"));

    m.def(
        "choose_mesh",
        [](std::uint64_t E, std::uint64_t D, std::uint64_t N, double eta) { return choose_mesh(E, D, N, eta).M; },
        py::arg("E"), py::arg("D"), py::arg("N"), py::arg("eta"));
    m.def(
        "reduce_lattice",
        [](std::int64_t y3, std::int64_t M, std::int64_t D) {
            const auto r = reduce_lattice(y3, M, D);
            py::dict d;
            d["g1"] = r.g1;
            d["g2"] = r.g2;
            d["L1"] = r.L1;
            d["L2"] = r.L2;
            d["det"] = to_py(r.det);
            return d;
        },
        py::arg("y3"), py::arg("M"), py::arg("D"));
    m.def(
        "detmethod",
        [](std::uint64_t alpha, std::uint64_t N, double eta, unsigned K, unsigned L, bool auto_K, unsigned threads) {
            PipelineOptions opt;
            opt.eta = eta;
            opt.K = K;
            opt.L = L;
            opt.auto_K = auto_K;
            std::ostringstream os;
            {
                py::gil_scoped_release nogil;
                write_pipeline_json(os, interval_pipeline(alpha, N, opt, threads));
            }
            return py::module_::import("json").attr("loads")(os.str());
        },
        py::arg("alpha"), py::arg("N"), py::arg("eta") = 0.1, py::arg("K") = 3, py::arg("L") = 3,
        py::arg("auto_K") = false, py::arg("threads") = default_threads());

    m.def(
        "exponents",
        [](double step) {
            const auto x = exponents(step);
            py::dict d;
            d["beta"] = x.beta;
            d["varpi0"] = x.varpi0;
            d["varpi_thm2"] = x.varpi_thm2;
            d["psi_star"] = x.psi_star;
            d["varpi_thm1"] = x.varpi_thm1;
            return d;
        },
        py::arg("grid_step") = 1e-6);
    m.def(
        "abc_chain",
        [](const py::int_& c, const py::int_& b, const py::int_& e, const py::int_& d, const py::int_& n) {
            const auto ch = abc_chain(from_py(c), from_py(b), from_py(e), from_py(d), from_py(n));
            py::dict r;
            r["ell"] = to_py(ch.ell);
            r["ell1"] = to_py(ch.ell1);
            r["lhs"] = to_py(ch.lhs);
            r["rhs"] = to_py(ch.rhs);
            r["identity_holds"] = ch.identity_holds;
            r["coprime_terms"] = ch.coprime_terms;
            r["quality"] = ch.quality;
            return r;
        },
        py::arg("c"), py::arg("b"), py::arg("e"), py::arg("d"), py::arg("n"));
    m.def(
        "family_average",
        [](std::int64_t H, std::uint64_t N, unsigned threads) {
            const auto f = random_family_average(H, N, threads);
            return py::make_tuple(f.total, f.average, f.bound_ratio);
        },
        py::arg("H"), py::arg("N"), py::arg("threads") = default_threads());
}
