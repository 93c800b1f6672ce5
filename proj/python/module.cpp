#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mahler/io.hpp"

namespace py = pybind11;
using namespace mahler;

namespace {

// Report text plus exit code; the Python side turns failures into exceptions.
std::pair<int, std::string> run_job(const std::string& command, const std::string& input, int order, int depth_cap,
                                    std::optional<std::string> place, std::optional<std::string> samples,
                                    std::optional<std::string> twists, double tol_res) {
  JobConfig job;
  job.command = command;
  job.input = input;
  job.order = order;
  job.depth_cap = depth_cap;
  job.tol_res = tol_res;
  try {
    if (place) job.place = parse_place(*place);
    if (samples) job.samples = parse_samples(*samples);
    if (twists) job.twists = parse_twists(*twists);
  } catch (const MahlerError& e) {
    Json err{{"error", std::string(error_name(e.kind()))}, {"message", e.what()}, {"index", nullptr}};
    return {is_validation_error(e.kind()) ? kExitValidation : kExitNumeric, dump_report(err)};
  }
  RunResult r = run(job);
  return {r.exit_code, dump_report(r.report)};
}

Character character_named(const std::string& name) {
  if (name == "gamma1") return Character::gamma1();
  if (name == "gamma2") return Character::gamma2();
  if (name == "id") return Character::identity();
  throw MahlerError(ErrorKind::ValidationError, "unknown character '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mahler systems: local reductions, connection matrices and groupoid generators";

  static py::handle core_error = py::exception<MahlerError>(m, "CoreError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const MahlerError& e) {
      py::set_error(core_error, (std::string(error_name(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("run_job", &run_job, py::arg("command"), py::arg("input"), py::arg("order") = 32, py::arg("depth_cap") = 64,
        py::arg("place") = py::none(), py::arg("samples") = py::none(), py::arg("twists") = py::none(),
        py::arg("tol_res") = 1e-9);

  m.def(
      "eval_F0",
      [](const std::string& input, Complex z, int order, int depth) {
        MahlerSystem s = as_system(parse_input(input));
        EvalOptions opt;
        opt.depth = depth;
        EvalResult r = eval_F0(s, reduce_at_0(s, order), z, opt);
        return py::make_tuple(r.value, r.error_estimate, r.depth);
      },
      py::arg("input"), py::arg("z"), py::arg("order") = 32, py::arg("depth") = -1);

  m.def(
      "dunford",
      [](const CMatrix& a, double tol) {
        DunfordPair d = dunford(a, tol);
        return py::make_tuple(d.s, d.u);
      },
      py::arg("a"), py::arg("tol") = kDunfordTolerance);

  m.def(
      "apply_character",
      [](const std::string& name, Complex z, int p) { return apply_character(character_named(name), z, p); },
      py::arg("name"), py::arg("z"), py::arg("p"));

  m.def(
      "power_twist",
      [](const CMatrix& a, const std::string& name, Complex lambda, int p) {
        return power_twist(a, character_named(name), lambda, p);
      },
      py::arg("a"), py::arg("character"), py::arg("lam"), py::arg("p"));

  m.def(
      "in_orbit",
      [](int p, std::vector<Complex> points, bool inside, double r, double b) {
        OrbitSet e(p, std::move(points), inside ? OrbitSide::Inside : OrbitSide::Outside);
        return orbit_membership(e, CoverPoint(r, b));
      },
      py::arg("p"), py::arg("points"), py::arg("inside"), py::arg("r"), py::arg("b"));

  m.def(
      "hom_dimension", [](const CMatrix& a, const CMatrix& b) { return solve_constant_hom(a, b).size(); },
      py::arg("a"), py::arg("b"));
}
