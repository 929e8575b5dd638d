#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ivopt/dsl.hpp"

namespace py = pybind11;
using namespace ivopt;

namespace {

py::dict report_to_dict(const CheckReport& report) {
  py::dict out;
  out["verdict"] = to_string(report.verdict);
  out["residual"] = report.residual;
  if (report.certificate) {
    py::dict cert;
    cert["delta0"] = report.certificate->delta0;
    cert["delta"] = report.certificate->deltas;
    out["certificate"] = cert;
  }
  if (report.witness) out["witness"] = *report.witness;
  py::dict grid;
  grid["points"] = report.grid.points;
  grid["skipped_infeasible"] = report.grid.skipped_infeasible;
  out["grid"] = grid;
  if (!report.note.empty()) out["note"] = report.note;
  return out;
}

// A parsed and compiled problem with the checkers hanging off it.
struct Problem {
  ProblemFile file;
  CompiledProblem compiled;

  explicit Problem(const std::string& text)
      : file(parse_text(text)), compiled(compile(file)) {}

  static Problem from_text(const std::string& text) { return Problem(text); }

  std::size_t dim() const { return compiled.iop.dim(); }

  Interval eval(const std::vector<double>& at) const {
    return compiled.iop.objective.eval(at);
  }

  std::vector<Interval> gradient(const std::vector<double>& at) const {
    return gh_gradient(compiled.iop.objective, at).components();
  }

  py::dict check_fermat(const std::vector<double>& at) const {
    return report_to_dict(fermat_check(
        compiled.iop.objective, at,
        subdiff_smooth(compiled.iop.objective, at)));
  }

  py::dict check_fritz_john(const std::vector<double>& at,
                            int resolution) const {
    MultiplierGrid mg;
    mg.resolution = resolution;
    const auto grads = constraint_gradients(compiled.iop, at);
    return report_to_dict(fritz_john_check(
        compiled.iop, at, subdiff_smooth(compiled.iop.objective, at), grads,
        mg));
  }

  py::dict check_kkt(const std::vector<double>& at, int resolution) const {
    MultiplierGrid mg;
    mg.resolution = resolution;
    const auto grads = constraint_gradients(compiled.iop, at);
    return report_to_dict(kkt_check(
        compiled.iop, at, subdiff_smooth(compiled.iop.objective, at), grads,
        mg));
  }

  py::dict efficiency(const std::vector<double>& at,
                      std::size_t grid_per_axis) const {
    const auto grid = uniform_grid(compiled.iop.box, grid_per_axis);
    py::dict out;
    out["efficient"] =
        report_to_dict(is_efficient_oracle(compiled.iop, at, grid));
    out["weak_efficient"] =
        report_to_dict(is_weak_efficient_oracle(compiled.iop, at, grid));
    return out;
  }

  std::string pretty() const { return pretty_print(file); }
};

}  // namespace

PYBIND11_MODULE(_ivopt, m) {
  m.doc() = "interval-valued optimization toolkit";

  py::register_exception<ParseError>(m, "ProblemParseError",
                                     PyExc_ValueError);
  py::register_exception<Error>(m, "IvoptError", PyExc_RuntimeError);

  py::class_<Interval>(m, "Interval")
      .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
      .def_property_readonly("lo", &Interval::lo)
      .def_property_readonly("hi", &Interval::hi)
      .def("__repr__",
           [](const Interval& a) { return to_string(a); })
      .def("__eq__",
           [](const Interval& a, const Interval& b) { return a == b; })
      .def("__add__",
           [](const Interval& a, const Interval& b) { return a + b; })
      .def("__sub__",
           [](const Interval& a, const Interval& b) { return a - b; })
      .def("__mul__",
           [](const Interval& a, const Interval& b) { return a * b; })
      .def("__rmul__",
           [](const Interval& a, double s) { return s * a; })
      .def("gh_sub",
           [](const Interval& a, const Interval& b) { return gh_sub(a, b); })
      .def("norm", [](const Interval& a) { return norm(a); })
      .def("dominates",
           [](const Interval& a, const Interval& b) { return dominates(a, b); })
      .def("strictly_dominates",
           [](const Interval& a, const Interval& b) {
             return strictly_dominates(a, b);
           });

  m.def("compare", [](const Interval& a, const Interval& b) {
    return to_string(compare(a, b));
  });
  m.def("parse_interval",
        [](const std::string& s) { return parse_interval(s); });

  py::class_<Problem>(m, "Problem")
      .def_static("from_text", &Problem::from_text)
      .def_property_readonly("dim", &Problem::dim)
      .def("eval", &Problem::eval, py::arg("at"))
      .def("gradient", &Problem::gradient, py::arg("at"))
      .def("check_fermat", &Problem::check_fermat, py::arg("at"))
      .def("check_fritz_john", &Problem::check_fritz_john, py::arg("at"),
           py::arg("resolution") = 100)
      .def("check_kkt", &Problem::check_kkt, py::arg("at"),
           py::arg("resolution") = 100)
      .def("efficiency", &Problem::efficiency, py::arg("at"),
           py::arg("grid") = 101)
      .def("pretty", &Problem::pretty);
}
