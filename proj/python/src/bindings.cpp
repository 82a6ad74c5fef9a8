#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "zerolab/cli.hpp"
#include "zerolab/distribution.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/serialize.hpp"
#include "zerolab/zero_lab.hpp"

namespace py = pybind11;
using namespace zerolab;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

RunOptions options(std::optional<std::uint64_t> budget, unsigned workers) {
    RunOptions o;
    if (budget) o.budget = *budget;
    o.workers = workers;
    return o;
}

Point parse_point(const RingSpec& ring, const std::vector<std::string>& coords) {
    std::vector<ElementIndex> idx;
    for (const auto& c : coords) {
        std::size_t pos = 0;
        idx.push_back(ring.parse_element(c, pos));
        if (pos != c.size()) throw ParseError(c, pos, "end of element");
    }
    return Point(ring, std::move(idx));
}

std::vector<std::string> point_strings(const Point& p) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < p.size(); ++i) out.push_back(p[i].to_string());
    return out;
}

}  // namespace

PYBIND11_MODULE(_zerolab, m) {
    m.doc() = "Common zeros of random polynomial systems over finite rings";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<MismatchedRingError>(m, "MismatchedRingError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<BudgetExceededError>(m, "BudgetExceededError", base.ptr());

    py::class_<RingSpec>(m, "Ring")
        .def(py::init(&RingSpec::parse), py::arg("spec"))
        .def_property_readonly("order", &RingSpec::order)
        .def_property_readonly("is_field", [](const RingSpec& r) { return r.is_field(); })
        .def("elements", [](const RingSpec& r) {
            std::vector<std::string> out;
            for (ElementIndex a = 0; a < r.order(); ++a) out.push_back(r.format(a));
            return out;
        })
        .def("add", [](const RingSpec& r, const std::string& a, const std::string& b) {
            return r.format(r.add(parse_point(r, {a}).indices()[0], parse_point(r, {b}).indices()[0]));
        })
        .def("mul", [](const RingSpec& r, const std::string& a, const std::string& b) {
            return r.format(r.mul(parse_point(r, {a}).indices()[0], parse_point(r, {b}).indices()[0]));
        })
        .def("__str__", &RingSpec::to_string)
        .def("__repr__", [](const RingSpec& r) { return "Ring('" + r.to_string() + "')"; })
        .def("__eq__", [](const RingSpec& a, const RingSpec& b) { return a == b; });

    py::class_<Polynomial>(m, "Polynomial")
        .def(py::init([](const RingSpec& ring, std::size_t nvars, const std::string& text) {
                 return Polynomial::parse(ring, nvars, text);
             }),
             py::arg("ring"), py::arg("nvars"), py::arg("text"))
        .def_property_readonly("nvars", &Polynomial::nvars)
        .def_property_readonly("ring", &Polynomial::ring)
        .def("evaluate", [](const Polynomial& f, const std::vector<std::string>& point) {
            return evaluate(f, parse_point(f.ring(), point)).to_string();
        })
        .def("total_degree", [](const Polynomial& f) -> std::optional<std::uint64_t> {
            const Degree d = total_degree(f);
            if (d.is_minus_infinity()) return std::nullopt;
            return d.value();
        })
        .def("reduce", &reduce_per_variable)
        .def("__add__", [](const Polynomial& a, const Polynomial& b) { return a + b; })
        .def("__sub__", [](const Polynomial& a, const Polynomial& b) { return a - b; })
        .def("__mul__", [](const Polynomial& a, const Polynomial& b) { return a * b; })
        .def("__eq__", [](const Polynomial& a, const Polynomial& b) { return a == b; })
        .def("__str__", &Polynomial::to_string)
        .def("__repr__", [](const Polynomial& f) { return "Polynomial('" + f.to_string() + "')"; });

    py::class_<SampleSpace>(m, "SampleSpace")
        .def(py::init([](const RingSpec& ring, std::size_t nvars, const std::string& spec) {
                 return SampleSpace::parse(ring, nvars, spec);
             }),
             py::arg("ring"), py::arg("nvars"), py::arg("spec"))
        .def_property_readonly("rank", &SampleSpace::rank)
        .def_property_readonly("id", &SampleSpace::id)
        .def_property_readonly("basis", &SampleSpace::basis)
        .def("extends_ring", [](const SampleSpace& s, std::optional<std::uint64_t> budget) {
            return extends_ring(s, options(budget, 1));
        }, py::arg("budget") = py::none())
        .def("contains_functions", [](const SampleSpace& s, std::optional<std::uint64_t> budget) {
            return contains_functions(s, options(budget, 1));
        }, py::arg("budget") = py::none())
        .def("function_coverage_count", [](const SampleSpace& s, std::optional<std::uint64_t> budget) {
            return function_coverage_count(s, options(budget, 1));
        }, py::arg("budget") = py::none())
        .def("vanishing_count", [](const SampleSpace& s, const std::vector<std::vector<std::string>>& points,
                                   std::optional<std::uint64_t> budget) {
            std::vector<Point> pts;
            for (const auto& p : points) pts.push_back(parse_point(s.ring(), p));
            return vanishing_count(VanishingQuery(s, std::move(pts)), options(budget, 1));
        }, py::arg("points"), py::arg("budget") = py::none())
        .def("factorization_failure", [](const SampleSpace& s) -> py::object {
            const auto w = find_factorization_failure(s);
            if (!w) return py::none();
            py::list pts;
            for (const auto& p : w->points) pts.append(point_strings(p));
            py::dict d;
            d["points"] = pts;
            d["joint"] = w->joint.get_str();
            d["product_of_marginals"] = w->product_of_marginals.get_str();
            return std::move(d);
        })
        .def("__repr__", [](const SampleSpace& s) {
            return "SampleSpace('" + s.id() + "', rank=" + std::to_string(s.rank()) + ")";
        });

    m.def("count_common_zeros", [](const std::vector<Polynomial>& polys, std::optional<std::uint64_t> budget,
                                   unsigned workers) {
        return count_common_zeros(PolySystem(polys), options(budget, workers));
    }, py::arg("polys"), py::arg("budget") = py::none(), py::arg("workers") = 0);

    m.def("exact_distribution", [](const SampleSpace& s, std::size_t mcount, std::optional<std::uint64_t> budget,
                                   unsigned workers) {
        return to_python(to_json(exact_distribution(s, mcount, options(budget, workers))));
    }, py::arg("space"), py::arg("m"), py::arg("budget") = py::none(), py::arg("workers") = 0,
       "Exhaustive zero-count law as a dict with exact num/den strings.");

    m.def("monte_carlo_distribution", [](const SampleSpace& s, std::size_t mcount, std::uint64_t samples,
                                         std::uint64_t seed, unsigned workers) {
        return to_python(to_json(monte_carlo_distribution(s, mcount, samples, seed, options(std::nullopt, workers))));
    }, py::arg("space"), py::arg("m"), py::arg("samples"), py::arg("seed") = 0, py::arg("workers") = 0);

    m.def("theoretical_distribution", [](std::uint64_t q, std::size_t n, std::size_t mcount) {
        return to_python(to_json(theoretical_distribution(q, n, mcount)));
    }, py::arg("q"), py::arg("n"), py::arg("m"));

    m.def("poisson_limit_report", [](std::size_t n, const std::vector<std::uint64_t>& qs) {
        return to_python(to_json(poisson_limit_report(n, qs)));
    }, py::arg("n"), py::arg("q_list"));

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
            py::gil_scoped_release release;
            code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
