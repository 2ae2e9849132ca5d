#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psmod1/diophantine.hpp"
#include "psmod1/error.hpp"
#include "psmod1/experiments.hpp"
#include "psmod1/expsum.hpp"
#include "psmod1/parallel.hpp"
#include "psmod1/psset.hpp"
#include "psmod1/realnum.hpp"
#include "psmod1/report.hpp"
#include "psmod1/sieve.hpp"

namespace py = pybind11;
using namespace psmod1;

namespace {

GammaPair make_pair(double g1, double g2, const std::string& mode) {
    if (mode == "auto" && g1 == 1.0) return GammaPair::single_set_preset(g2);
    const auto m = mode == "exploratory" ? GammaMode::exploratory : GammaMode::theorem;
    return GammaPair(g1, g2, m);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.attr("__version__") = std::string(kVersion);

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    m.def("set_workers", &set_worker_count, py::arg("n"));
    m.def("workers", &worker_count);

    py::class_<Exponent>(m, "Exponent")
        .def(py::init<double>())
        .def_static("parse", &Exponent::parse)
        .def_property_readonly("value", &Exponent::value)
        .def("__str__", &Exponent::to_string);
    py::implicitly_convertible<double, Exponent>();

    py::class_<FloorFrac>(m, "FloorFrac")
        .def_readonly("floor", &FloorFrac::floor)
        .def_readonly("frac", &FloorFrac::frac)
        .def_readonly("escalated", &FloorFrac::escalated)
        .def_readonly("exact", &FloorFrac::exact);

    m.def("pow_floor_frac", [](std::uint64_t n, const Exponent& g) { return pow_floor_frac(n, g); });
    m.def("frac", &frac);
    m.def("dist_nearest", &dist_nearest);

    py::class_<GammaPair>(m, "GammaPair")
        .def(py::init(&make_pair), py::arg("gamma1"), py::arg("gamma2"), py::arg("mode") = "auto")
        .def_property_readonly("gamma1", [](const GammaPair& p) { return p.gamma1().value(); })
        .def_property_readonly("gamma2", [](const GammaPair& p) { return p.gamma2().value(); })
        .def_property_readonly("theta", &GammaPair::theta)
        .def_property_readonly("warnings", &GammaPair::warnings);

    py::class_<ArithmeticTables>(m, "Tables")
        .def_property_readonly("limit", &ArithmeticTables::limit)
        .def("is_prime", &ArithmeticTables::is_prime)
        .def("mu", &ArithmeticTables::mu)
        .def("lambda_", &ArithmeticTables::lambda)
        .def("prime_count", &ArithmeticTables::prime_count)
        .def("primes", &ArithmeticTables::primes);

    m.def("sieve", &sieve_range, py::arg("limit"), py::call_guard<py::gil_scoped_release>());
    m.def("obtain_tables", &obtain_tables, py::arg("limit"), py::arg("path") = "",
          py::call_guard<py::gil_scoped_release>());

    m.def("is_member", [](std::uint64_t p, const Exponent& g) { return is_member(p, g); });
    m.def("witness", [](std::uint64_t p, const Exponent& g) { return witness(p, g); });
    m.def("count_joint", [](double x, const GammaPair& pair, const ArithmeticTables& t) {
        return count_joint(x, pair, t);
    });
    m.def("count_single", [](double x, const Exponent& g, const ArithmeticTables& t) {
        return count_single(x, g, t);
    });
    m.def("main_term", &main_term);
    m.def("intersection", [](std::uint64_t lo, std::uint64_t hi, const GammaPair& pair, const ArithmeticTables& t) {
        std::vector<std::uint64_t> out;
        for (const auto& r : enumerate_intersection(lo, hi, pair, t)) out.push_back(r.p);
        return out;
    });

    m.def("convergents", [](const std::string& spec, std::int64_t q_max) {
        std::vector<std::tuple<std::int64_t, std::int64_t, double>> out;
        for (const auto& c : convergents(IrrationalTarget::parse(spec), q_max).items)
            out.emplace_back(c.a, c.q, c.quality);
        return out;
    });
    m.def("target_value", [](const std::string& spec) { return IrrationalTarget::parse(spec).value(); });
    m.def("dirichlet_approx", [](double theta, std::int64_t Q) {
        const auto d = dirichlet_approx(theta, Q);
        return std::pair{d.b, d.r};
    });
    m.def("min_linear_sum", &min_linear_sum);
    m.def("karatsuba_bound", &karatsuba_bound);

    m.def("record_minima", [](double alpha, double beta, const GammaPair& pair, std::uint64_t limit,
                              const ArithmeticTables& t) {
        std::vector<std::pair<std::uint64_t, double>> out;
        for (const auto& r : record_minima_scan(alpha, beta, pair, limit, t)) out.emplace_back(r.p, r.value);
        return out;
    });
    m.def("witness_count", [](double alpha, double beta, const GammaPair& pair, double eps, std::uint64_t limit,
                              const ArithmeticTables& t) {
        const auto r = theorem_witness_count(alpha, beta, pair, eps, limit, t);
        return std::pair{r.witness_count, r.total_intersection_primes};
    });
    m.def("gamma_star", [](std::uint64_t N, const GammaPair& pair, double alpha, std::int64_t t, std::int64_t h1,
                           std::int64_t h2, const ArithmeticTables& tables) {
        HarmonicParams p(pair);
        p.alpha = alpha;
        p.t = t;
        p.h1 = h1;
        p.h2 = h2;
        return gamma_star(N, p, tables).value;
    });
    m.def("gamma_star_decomposed", [](std::uint64_t N, const GammaPair& pair, double alpha, std::int64_t t,
                                      std::int64_t h1, std::int64_t h2, const ArithmeticTables& tables) {
        HarmonicParams p(pair);
        p.alpha = alpha;
        p.t = t;
        p.h1 = h1;
        p.h2 = h2;
        return gamma_star_decomposed(N, p, tables).value;
    });
}
