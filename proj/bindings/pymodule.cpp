#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xlambda/arithstat.hpp"
#include "xlambda/charsums.hpp"
#include "xlambda/curves.hpp"
#include "xlambda/gn.hpp"
#include "xlambda/padic.hpp"
#include "xlambda/verify.hpp"

namespace py = pybind11;
using namespace xlam;

namespace {

std::complex<double> cval(const ComplexApprox& c) { return {c.re, c.im}; }

py::dict moment_dict(const MomentReport& r) {
    py::dict d;
    d["p"] = r.p;
    d["m_max"] = r.m_max;
    d["kind"] = r.kind;
    d["raw"] = r.raw;
    d["normalized"] = r.normalized;
    d["targets"] = r.targets;
    d["gaps"] = r.gaps;
    return d;
}

}  // namespace

PYBIND11_MODULE(_xlambda, m) {
    m.doc() = "point counts of the surface family X_lambda, character sums, and p-adic hypergeometrics";

    py::class_<PrimeFieldContext>(m, "Context")
        .def(py::init<u64>(), py::arg("p"))
        .def_property_readonly("p", &PrimeFieldContext::p)
        .def_property_readonly("generator", &PrimeFieldContext::generator)
        .def("dlog", &PrimeFieldContext::dlog, py::arg("x"))
        .def("quadratic_char", &PrimeFieldContext::quadratic_char, py::arg("x"))
        .def("char_exponent",
             [](const PrimeFieldContext& ctx, u64 j, u64 x) -> py::object {
                 auto e = ctx.char_exponent(CharacterIndex{j}, x);
                 if (!e) return py::none();
                 return py::int_(*e);
             },
             py::arg("j"), py::arg("x"));

    m.def("is_prime", &is_prime);
    m.def("legendre_trace", &legendre_trace, py::arg("ctx"), py::arg("lam"));
    m.def("clausen_trace", &clausen_trace, py::arg("ctx"), py::arg("lam"));
    m.def("surface_A_direct", &surface_A_direct, py::arg("ctx"), py::arg("lam"));
    m.def("surface_A_fast", &surface_A_fast, py::arg("ctx"), py::arg("lam"));
    m.def("surface_A_table", &surface_A_table, py::arg("ctx"), py::arg("workers") = 1);

    m.def("gauss_sum", [](const PrimeFieldContext& ctx, u64 j) { return cval(gauss_sum_numeric(ctx, CharacterIndex{j})); });
    m.def("jacobi_sum", [](const PrimeFieldContext& ctx, u64 j1, u64 j2) {
        return cval(jacobi_sum_numeric(ctx, CharacterIndex{j1}, CharacterIndex{j2}));
    });
    m.def("greene_2f1", [](const PrimeFieldContext& ctx, u64 lam) { return cval(greene_2f1(ctx, lam)); });
    m.def("greene_3f2", [](const PrimeFieldContext& ctx, u64 lam) { return cval(greene_3f2(ctx, lam)); });

    m.def("c_p", [](const PrimeFieldContext& ctx, u64 lamarg, const std::string& mode) -> py::object {
        if (mode == "padic") return py::int_(c_p_padic(ctx, lamarg));
        if (mode == "via_surface") return py::int_(c_p_via_surface(ctx, lamarg));
        if (mode == "numeric") return py::cast(cval(c_p_numeric(ctx, lamarg)));
        throw std::invalid_argument("mode must be numeric | padic | via_surface");
    }, py::arg("ctx"), py::arg("lamarg"), py::arg("mode") = "padic");

    m.def("gamma_p", [](u64 p, int N, i64 num, i64 den) {
        return gamma_p_batch(p, N, {ZpRational(num, den)}).at(ZpRational(num, den));
    }, py::arg("p"), py::arg("N"), py::arg("num"), py::arg("den") = 1,
       "Morita Gamma_p(num/den) mod p^N");
    m.def("teichmuller", &teichmuller, py::arg("p"), py::arg("N"), py::arg("t"));

    m.def("g3_times_p", [](const PrimeFieldContext& ctx, u64 lam, int N) {
        return G3Evaluator(ctx, N).decode_times_p(lam);
    }, py::arg("ctx"), py::arg("lam"), py::arg("N") = 3,
       "p * 3G3(lambda) as an exact integer (p = 1 mod 3)");
    m.def("g9_value", [](const PrimeFieldContext& ctx, u64 lam, int N) {
        return G9Evaluator(ctx, N).decode(lam);
    }, py::arg("ctx"), py::arg("lam"), py::arg("N") = 3,
       "9G9(lambda) as an exact integer (p = 2 mod 3)");

    m.def("catalan_number", &catalan_number);
    m.def("catalan_moment_coef", &catalan_moment_coef);
    m.def("empirical_moments", [](const PrimeFieldContext& ctx, int m_max, int workers) {
        return moment_dict(empirical_moments(ctx, m_max, workers));
    }, py::arg("ctx"), py::arg("m_max") = 4, py::arg("workers") = 1);
    m.def("gn_moments", [](const PrimeFieldContext& ctx, const std::string& which, int m_max, int N) {
        GnFamily f = which == "3g3" ? GnFamily::g3 : GnFamily::g9;
        return moment_dict(gn_moment_check(ctx, f, m_max, N));
    }, py::arg("ctx"), py::arg("which"), py::arg("m_max") = 4, py::arg("N") = 3);

    m.def("density", [](const std::string& model, double t) {
        return density(model == "a" ? DensityModel::a : DensityModel::b, t);
    });
    m.def("model_cdf", [](const std::string& model, double t) {
        return model_cdf(model == "a" ? DensityModel::a : DensityModel::b, t);
    });
    m.def("distribution", [](const PrimeFieldContext& ctx, int bins, int workers) {
        HistogramReport r = distribution_report(ctx, bins, workers);
        py::dict d;
        d["p"] = r.p;
        d["ks_a"] = r.ks_a;
        d["ks_b"] = r.ks_b;
        d["winner"] = r.winner == DensityModel::a ? "a" : "b";
        py::list bl;
        for (const auto& b : r.bins) {
            py::dict e;
            e["left"] = b.left;
            e["right"] = b.right;
            e["count"] = b.count;
            e["empirical_density"] = b.empirical_density;
            e["model_a"] = b.model_a;
            e["model_b"] = b.model_b;
            bl.append(e);
        }
        d["bins"] = bl;
        return d;
    }, py::arg("ctx"), py::arg("bins") = 60, py::arg("workers") = 1);
    m.def("clausen_even_moments", &clausen_even_moments, py::arg("ctx"), py::arg("j_max") = 3,
          py::arg("workers") = 1);

    m.def("verify", [](const std::string& primes, const std::string& suite, u64 seed, int workers) {
        VerifyConfig cfg;
        cfg.primes = parse_primes(primes);
        cfg.suite = suite;
        cfg.seed = seed;
        cfg.workers = workers;
        auto results = run_verify(cfg);
        py::list out;
        for (const auto& r : results) {
            py::dict d;
            d["suite"] = r.suite;
            d["prime"] = r.prime;
            d["checks"] = r.checks;
            d["failures"] = r.failures.size();
            out.append(d);
        }
        return out;
    }, py::arg("primes"), py::arg("suite") = "all", py::arg("seed") = 1, py::arg("workers") = 1);
}
