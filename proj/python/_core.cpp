#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eigenmap/bochner.hpp"
#include "eigenmap/catalog.hpp"
#include "eigenmap/errors.hpp"
#include "eigenmap/schwarz.hpp"
#include "eigenmap/spectral.hpp"
#include "eigenmap/verify.hpp"

namespace py = pybind11;
using namespace eigenmap;

namespace {

const SmoothMap& map_of(const std::string& id) {
    const CatalogEntry& e = find_entry(id);
    if (!e.map) throw GeometryError(ErrorCode::UnknownExample, id + " is a geometry, not a map");
    return *e.map;
}

py::dict record_dict(const CheckRecord& r) {
    py::dict d;
    d["example"] = r.example;
    d["suite"] = r.suite;
    d["check_id"] = r.check_id;
    d["point"] = r.point;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["abs_err"] = r.abs_err;
    d["rel_err"] = r.rel_err;
    d["tolerance"] = r.tolerance;
    d["pass"] = r.pass;
    return d;
}

RunResult run(const std::string& example, const std::string& suite, int samples, std::uint64_t seed,
              const std::map<std::string, double>& tol, double fd_step) {
    RunConfig c;
    c.example_id = example;
    c.suite_id = suite;
    c.samples = samples;
    c.seed = seed;
    c.tol_overrides = tol;
    c.fd_step = fd_step;
    py::gil_scoped_release release;
    return run_suite(c);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Eigenvalue identities of harmonic almost submersions";
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);

    m.def("list_examples", [] {
        std::vector<std::string> ids;
        for (const auto& e : catalog()) ids.push_back(e.id);
        return ids;
    });
    m.def("list_suites", [] { return suite_ids(); });
    m.def("describe", [](const std::string& id) { return describe(load_verified(id), true); }, py::arg("id"));

    m.def(
        "run_suite",
        [](const std::string& example, const std::string& suite, int samples, std::uint64_t seed,
           const std::map<std::string, double>& tol, double fd_step) {
            const RunResult r = run(example, suite, samples, seed, tol, fd_step);
            py::list records;
            for (const auto& rec : r.records) records.append(record_dict(rec));
            py::dict summary;
            summary["total"] = r.summary.total;
            summary["passed"] = r.summary.passed;
            summary["failed"] = r.summary.failed;
            summary["max_abs_err"] = r.summary.max_abs_err;
            py::dict out;
            out["records"] = records;
            out["summary"] = summary;
            out["exit_code"] = exit_code(r);
            return out;
        },
        py::arg("example"), py::arg("suite"), py::arg("samples") = 20, py::arg("seed") = 0,
        py::arg("tol") = std::map<std::string, double>{}, py::arg("fd_step") = 1e-5);
    m.def(
        "run_suite_csv",
        [](const std::string& example, const std::string& suite, int samples, std::uint64_t seed) {
            return to_csv(run(example, suite, samples, seed, {}, 1e-5).records);
        },
        py::arg("example"), py::arg("suite"), py::arg("samples") = 20, py::arg("seed") = 0);

    m.def(
        "sample_points",
        [](const std::string& id, int count, std::uint64_t seed) { return sample_points(find_entry(id), count, seed); },
        py::arg("id"), py::arg("count"), py::arg("seed") = 0);
    m.def(
        "eigenvalues",
        [](const std::string& id, const Point& p) { return eigen_analyze(map_of(id), p).eigenvalues; },
        py::arg("id"), py::arg("point"), "Eigenvalues λ² of φ*h with respect to g, descending.");
    m.def(
        "tension", [](const std::string& id, const Point& p) { return Eigen::VectorXd(tension(map_of(id), p)); },
        py::arg("id"), py::arg("point"));
    m.def(
        "pullback_metric",
        [](const std::string& id, const Point& p) { return Eigen::MatrixXd(pullback_metric(map_of(id), p)); },
        py::arg("id"), py::arg("point"));
    m.def(
        "delta_lambda",
        [](const std::string& id, const Point& p) {
            const DeltaLambdaReport r = delta_lambda_formula(map_of(id), p);
            py::dict d;
            d["lambda"] = r.lambda;
            d["direct"] = r.direct;
            d["formula"] = r.formula;
            d["formula_three_halves"] = r.formula_three_halves;
            d["blocks"] = r.blocks;
            return d;
        },
        py::arg("id"), py::arg("point"), "Laplacian of λ_1² - λ_2² for a PHWC map M⁵ → N⁴.");

    m.def("wedge_norm", &wedge_norm, py::arg("lambda_sq"), py::arg("p"));
    m.def(
        "ratio_bounds",
        [](const std::vector<double>& lambda_sq, int n) {
            const RatioBounds b = phwc_ratio_bounds(lambda_sq, n);
            py::dict d;
            d["ratio"] = b.ratio;
            d["crude_bound"] = b.crude_bound;
            d["refined_bound"] = b.refined_bound;
            d["equality"] = b.equality;
            return d;
        },
        py::arg("lambda_sq"), py::arg("n"));
    m.def("d_homothety_c", &d_homothety_c, py::arg("c"), py::arg("a"));
}
