#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "bouquet/errors.hpp"
#include "bouquet/json_io.hpp"
#include "bouquet/model.hpp"
#include "bouquet/plane.hpp"
#include "bouquet/stratification.hpp"
#include "bouquet/verify.hpp"

namespace py = pybind11;
using namespace bouquet;

namespace {

RunConfig config(double tol, std::uint64_t budget, std::uint64_t seed = RunConfig{}.seed) {
    RunConfig c;
    c.tolerance = tol;
    c.budget = budget;
    c.seed = seed;
    c.validate();
    return c;
}

AlphaIndex alpha_of(const std::vector<std::uint64_t>& a) { return AlphaIndex(a); }

ComplexPoint point(std::complex<double> z) { return ComplexPoint(z.real(), z.imag()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cantor bouquet model of exp(z) - 1 and plane dynamics of e^z + a (JSON-in, JSON-out core)";

    auto base = py::register_exception<Error>(m, "BouquetError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<NoConvergence>(m, "NoConvergence", base.ptr());
    py::register_exception<PreconditionViolation>(m, "PreconditionViolation", base.ptr());
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
    py::register_exception<OverflowGuard>(m, "OverflowGuard", base.ptr());

    m.def("f_map", &f_map, py::arg("t"));
    m.def("f_inv_k", &f_inv_k, py::arg("k"), py::arg("t"));

    m.def("normalize_seq", [](const std::string& d) { return seq_to_json(parse_seq(d)).dump(); }, py::arg("desc"));

    m.def("seq_at",
          [](const std::string& d, std::uint64_t n) { return to_string(parse_seq(d).at(n)); },
          py::arg("desc"), py::arg("n"));

    m.def("t_star",
          [](const std::string& d, std::uint64_t shift) { return interval_to_json(t_star(parse_seq(d), shift)).dump(); },
          py::arg("desc"), py::arg("shift") = 0);

    m.def("t_min",
          [](const std::string& d, double tol, std::uint64_t budget) {
              return tmin_to_json(t_min(parse_seq(d), config(tol, budget))).dump();
          },
          py::arg("desc"), py::arg("tol") = 1e-9, py::arg("budget") = 100000);

    m.def("classify",
          [](const std::string& d, double t, double tol, std::uint64_t budget) {
              const RunConfig c = config(tol, budget);
              return classification_to_json(classify(ModelPoint(t, parse_seq(d)), c.budget, c)).dump();
          },
          py::arg("desc"), py::arg("t"), py::arg("tol") = 1e-9, py::arg("budget") = 100000);

    m.def("in_x",
          [](const std::string& d, const std::vector<std::uint64_t>& alpha, std::optional<double> t, double tol) {
              const RunConfig c = config(tol, 100000);
              const SymbolSeq s = parse_seq(d);
              const ModelPoint x = t ? ModelPoint(*t, s) : endpoint_of(s, c);
              return to_string(in_X(alpha_of(alpha), x, c));
          },
          py::arg("desc"), py::arg("alpha"), py::arg("t") = py::none(), py::arg("tol") = 1e-9);

    m.def("find_extension",
          [](const std::string& d, const std::vector<std::uint64_t>& alpha, std::uint64_t floor, double tol) {
              const RunConfig c = config(tol, 100000);
              const SymbolSeq s = parse_seq(d);
              return find_extension(alpha_of(alpha), endpoint_of(s, c), floor, c);
          },
          py::arg("desc"), py::arg("alpha"), py::arg("floor") = 0, py::arg("tol") = 1e-9);

    m.def("witness",
          [](const std::string& d, const std::vector<std::uint64_t>& alpha, std::uint64_t N, std::uint64_t count,
             double tol) {
              const RunConfig c = config(tol, 100000);
              const SymbolSeq s = parse_seq(d);
              json arr = json::array();
              for (const auto& r : nowhere_dense_demo(endpoint_of(s, c), alpha_of(alpha), N, count, c))
                  arr.push_back(witness_to_json(r));
              return arr.dump();
          },
          py::arg("desc"), py::arg("alpha"), py::arg("N"), py::arg("count") = 3, py::arg("tol") = 1e-9);

    m.def("iterate",
          [](std::complex<double> a, std::complex<double> z, std::uint64_t n) {
              const Orbit o = iterate(point(a), point(z), n);
              std::vector<std::complex<double>> pts;
              for (const auto& p : o.points) pts.push_back(p.value());
              return py::make_tuple(pts, o.escape ? py::cast(*o.escape) : py::none());
          },
          py::arg("a"), py::arg("z"), py::arg("n"));

    m.def("itinerary",
          [](std::complex<double> a, std::complex<double> z, std::uint64_t n) { return itinerary(point(a), point(z), n); },
          py::arg("a"), py::arg("z"), py::arg("n"));

    m.def("escape_region_a",
          [](std::complex<double> a, double R, std::complex<double> z, std::uint64_t budget) {
              return to_string(escape_region_A(point(a), R, point(z), budget));
          },
          py::arg("a"), py::arg("R"), py::arg("z"), py::arg("budget"));

    m.def("find_cycle",
          [](std::complex<double> a, std::uint64_t period, std::complex<double> seed) {
              return cycle_to_json(find_cycle(point(a), period, point(seed))).dump();
          },
          py::arg("a"), py::arg("period"), py::arg("seed"));

    m.def("render",
          [](std::complex<double> a, std::vector<double> vp, std::uint32_t width, std::uint32_t height,
             std::uint64_t max_iter, double R, std::optional<std::string> path) {
              if (vp.size() != 4) throw InvalidInput("viewport must be (re_min, re_max, im_min, im_max)");
              const Viewport v{vp[0], vp[1], vp[2], vp[3], width, height};
              if (path) return render_summary_to_json(render_escape(point(a), v, max_iter, R, *path)).dump();
              return render_summary_to_json(render_escape(point(a), v, max_iter, R).summary).dump();
          },
          py::arg("a"), py::arg("viewport"), py::arg("width") = 200, py::arg("height") = 200,
          py::arg("max_iter") = 100, py::arg("R") = kEscapeGuard, py::arg("path") = py::none());

    m.def("verify",
          [](double tol, std::uint64_t budget, std::uint64_t seed) {
              return report_to_json(run_verification(config(tol, budget, seed))).dump();
          },
          py::arg("tol") = 1e-9, py::arg("budget") = 100000, py::arg("seed") = RunConfig{}.seed);
}
