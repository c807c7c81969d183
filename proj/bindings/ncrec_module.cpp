#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncrec/errors.hpp"
#include "ncrec/experiment.hpp"

namespace py = pybind11;
using namespace ncrec;

namespace {

SemigroupModel model_from(const std::string& family, int d, std::int64_t m) {
  if (family == "lattice") return SemigroupModel::lattice(d);
  if (family == "cone") return SemigroupModel::cone(d);
  if (family == "cyclic") return SemigroupModel::cyclic(m, d);
  if (family == "heisenberg") return SemigroupModel::heisenberg();
  throw std::invalid_argument("unknown family: " + family);
}

std::vector<GroupElement> elements_from(const SemigroupModel& model,
                                        const std::vector<std::vector<std::int64_t>>& coords) {
  std::vector<GroupElement> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(model.element(c));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite *-dynamical systems: GNS construction, mean ergodic averages, recurrence";

  py::register_exception<NetExhausted>(m, "NetExhaustedError", PyExc_RuntimeError);
  py::register_exception<InconsistentDynamics>(m, "InconsistentDynamicsError", PyExc_RuntimeError);
  py::register_exception<PreconditionViolated>(m, "PreconditionViolatedError", PyExc_ValueError);

  py::enum_<Side>(m, "Side").value("left", Side::left).value("right", Side::right);

  py::class_<GroupElement>(m, "GroupElement")
      .def_property_readonly("coords", [](const GroupElement& g) { return g.coords; })
      .def("__repr__",
           [](const GroupElement& g) {
             std::string s = "GroupElement(";
             for (std::size_t i = 0; i < g.coords.size(); ++i) {
               if (i) s += ", ";
               s += std::to_string(g.coords[i]);
             }
             return s + ")";
           })
      .def("__eq__", [](const GroupElement& a, const GroupElement& b) { return a == b; });

  py::class_<SemigroupModel>(m, "SemigroupModel")
      .def_static("lattice", &SemigroupModel::lattice, py::arg("d"))
      .def_static("cone", &SemigroupModel::cone, py::arg("d"))
      .def_static("cyclic", &SemigroupModel::cyclic, py::arg("m"), py::arg("d"))
      .def_static("heisenberg", &SemigroupModel::heisenberg)
      .def_static("make", &model_from, py::arg("family"), py::arg("d") = 1, py::arg("m") = 0)
      .def_property_readonly("abelian", &SemigroupModel::abelian)
      .def_property_readonly("coord_count", &SemigroupModel::coord_count)
      .def("identity", &SemigroupModel::identity)
      .def("element", &SemigroupModel::element, py::arg("coords"))
      .def("generators", [](const SemigroupModel& model) { return model.generators(); })
      .def("contains", &SemigroupModel::contains, py::arg("g"));

  m.def("compose", &compose, py::arg("model"), py::arg("g"), py::arg("h"));
  m.def("power", &power, py::arg("model"), py::arg("g"), py::arg("n"));
  m.def(
      "translate",
      [](const SemigroupModel& model, const std::vector<GroupElement>& elements,
         const GroupElement& h, Side side) { return translate(model, elements, h, side); },
      py::arg("model"), py::arg("elements"), py::arg("h"), py::arg("side") = Side::right);
  m.def(
      "folner_defect",
      [](const SemigroupModel& model, const std::vector<GroupElement>& elements,
         const GroupElement& g) { return folner_defect(model, elements, g); },
      py::arg("model"), py::arg("elements"), py::arg("g"));
  m.def("word_ball", &word_ball, py::arg("model"), py::arg("radius"));

  py::class_<FolnerEntry>(m, "FolnerEntry")
      .def_readonly("n", &FolnerEntry::n)
      .def_readonly("elements", &FolnerEntry::elements)
      .def_property_readonly("size", &FolnerEntry::size);

  py::class_<FolnerNet>(m, "FolnerNet")
      .def_property_readonly("entries", [](const FolnerNet& net) { return net.entries(); });

  m.def(
      "box_folner_net",
      [](const SemigroupModel& model, const std::vector<std::int64_t>& schedule) {
        return box_folner_net(model, schedule);
      },
      py::arg("model"), py::arg("schedule"));

  py::class_<AlgebraDescriptor>(m, "AlgebraDescriptor")
      .def(py::init([](std::vector<int> dims) { return AlgebraDescriptor{std::move(dims)}; }),
           py::arg("block_dims"))
      .def_static("commutative_points", &AlgebraDescriptor::commutative_points, py::arg("m"))
      .def_readonly("block_dims", &AlgebraDescriptor::block_dims)
      .def_property_readonly("coord_dim", &AlgebraDescriptor::coord_dim)
      .def_property_readonly("commutative", &AlgebraDescriptor::commutative);

  py::class_<AlgebraElement>(m, "AlgebraElement")
      .def(py::init<AlgebraDescriptor, std::vector<Mat>>(), py::arg("descriptor"),
           py::arg("blocks"))
      .def_static("zero", &AlgebraElement::zero)
      .def_static("unit", &AlgebraElement::unit)
      .def_static("basis_element", &AlgebraElement::basis_element)
      .def_property_readonly("descriptor", &AlgebraElement::descriptor)
      .def_property_readonly("blocks", [](const AlgebraElement& a) { return a.blocks(); })
      .def_property_readonly("coords", &AlgebraElement::coords);

  m.def("alg_star", &alg_star, py::arg("a"));
  m.def("alg_mul", &alg_mul, py::arg("a"), py::arg("b"));
  m.def("indicator_element", &indicator_element, py::arg("m"), py::arg("subset"));

  py::class_<State>(m, "State")
      .def_static("make", &State::make, py::arg("descriptor"), py::arg("blocks"))
      .def_static("uniform", &State::uniform, py::arg("descriptor"))
      .def_static("from_probabilities", &State::from_probabilities, py::arg("p"))
      .def_property_readonly("blocks", [](const State& s) { return s.blocks(); });

  m.def("state_eval", &state_eval, py::arg("omega"), py::arg("a"));

  py::class_<DynMap>(m, "DynMap")
      .def_readonly("mat", &DynMap::mat)
      .def_readonly("unital", &DynMap::unital)
      .def_readonly("omega_isometric", &DynMap::omega_isometric);

  m.def("koopman_from_map", &koopman_from_map, py::arg("point_map"));
  m.def("conjugation_from_unitary", &conjugation_from_unitary, py::arg("descriptor"),
        py::arg("v_blocks"));

  py::class_<AxiomCheck>(m, "AxiomCheck")
      .def_readonly("name", &AxiomCheck::name)
      .def_readonly("pass_", &AxiomCheck::pass)
      .def_readonly("worst_residual", &AxiomCheck::worst_residual);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("axioms", &ValidationReport::axioms)
      .def_readonly("samples", &ValidationReport::samples)
      .def_readonly("seed", &ValidationReport::seed)
      .def_readonly("omega_isometric", &ValidationReport::omega_isometric)
      .def_readonly("isometry_residual", &ValidationReport::isometry_residual)
      .def("all_pass", &ValidationReport::all_pass);

  py::class_<StarDynamicalSystem>(m, "StarDynamicalSystem")
      .def_readonly("descriptor", &StarDynamicalSystem::descriptor)
      .def_readonly("model", &StarDynamicalSystem::model)
      .def_readonly("validation", &StarDynamicalSystem::validation);

  m.def(
      "make_system",
      [](AlgebraDescriptor desc, State omega, SemigroupModel model, std::vector<DynMap> maps,
         double tol, int samples, std::uint64_t seed) {
        ValidationOptions opts;
        opts.tol = tol;
        opts.samples = samples;
        opts.seed = seed;
        return make_system(std::move(desc), std::move(omega), std::move(model), std::move(maps),
                           opts);
      },
      py::arg("descriptor"), py::arg("omega"), py::arg("model"), py::arg("generator_maps"),
      py::arg("tol") = 1e-10, py::arg("samples") = 32, py::arg("seed") = 1);

  m.def(
      "tau_at",
      [](const StarDynamicalSystem& sys, const GroupElement& g) { return tau_at(sys, g); },
      py::arg("system"), py::arg("g"));
  m.def("validate_system", &validate_system, py::arg("system"), py::arg("tol") = 1e-10,
        py::arg("samples") = 32, py::arg("seed") = 1, py::arg("ball_radius") = 3);
  m.def("apply_map", &apply_map, py::arg("descriptor"), py::arg("map"), py::arg("a"));

  py::class_<GnsRep>(m, "GnsRep")
      .def_readonly("gram", &GnsRep::gram)
      .def_readonly("hdim", &GnsRep::hdim)
      .def_readonly("iota_matrix", &GnsRep::iota_matrix)
      .def_readonly("omega_vec", &GnsRep::omega_vec)
      .def_readonly("u_generators", &GnsRep::u_generators)
      .def_readonly("lift_residuals", &GnsRep::lift_residuals)
      .def_readonly("u_norms", &GnsRep::u_norms);

  m.def("gns_build", &gns_build, py::arg("descriptor"), py::arg("omega"),
        py::arg("rank_tol") = 1e-10);
  m.def("gns_lift", &gns_lift, py::arg("rep"), py::arg("system"));
  m.def("iota", &iota, py::arg("rep"), py::arg("a"));
  m.def("gns_inner", &gns_inner, py::arg("x"), py::arg("y"));
  m.def("u_at", &u_at, py::arg("rep"), py::arg("model"), py::arg("g"));

  py::class_<FixedProjection>(m, "FixedProjection")
      .def_readonly("matrix", &FixedProjection::matrix)
      .def_readonly("basis", &FixedProjection::basis)
      .def_readonly("rank", &FixedProjection::rank);

  m.def("fixed_projection", &fixed_projection, py::arg("rep"));
  m.def(
      "ergodic_avg",
      [](const GnsRep& rep, const SemigroupModel& model, const HVector& x,
         const std::vector<GroupElement>& elements) {
        return ergodic_avg(rep, model, x, elements);
      },
      py::arg("rep"), py::arg("model"), py::arg("x"), py::arg("elements"));

  py::class_<ConvergencePoint>(m, "ConvergencePoint")
      .def_readonly("n", &ConvergencePoint::n)
      .def_readonly("lambda_size", &ConvergencePoint::lambda_size)
      .def_readonly("residual", &ConvergencePoint::residual);

  m.def("convergence_profile", &convergence_profile, py::arg("rep"), py::arg("model"),
        py::arg("x"), py::arg("net"));

  py::class_<RecurrenceRecord>(m, "RecurrenceRecord")
      .def_readonly("h", &RecurrenceRecord::h)
      .def_readonly("window_average", &RecurrenceRecord::window_average)
      .def_readonly("witness", &RecurrenceRecord::witness)
      .def_readonly("attained", &RecurrenceRecord::attained)
      .def_readonly("algebra_value", &RecurrenceRecord::algebra_value);

  py::class_<RecurrenceReport>(m, "RecurrenceReport")
      .def_readonly("epsilon", &RecurrenceReport::epsilon)
      .def_readonly("alpha0_index", &RecurrenceReport::alpha0_index)
      .def_readonly("alpha0_n", &RecurrenceReport::alpha0_n)
      .def_readonly("alpha0_residual", &RecurrenceReport::alpha0_residual)
      .def_readonly("lower_bound", &RecurrenceReport::lower_bound)
      .def_readonly("all_pass", &RecurrenceReport::all_pass)
      .def_readonly("records", &RecurrenceReport::records)
      .def_readonly("corollary_checked", &RecurrenceReport::corollary_checked)
      .def_readonly("corollary_bound", &RecurrenceReport::corollary_bound)
      .def_readonly("corollary_all_pass", &RecurrenceReport::corollary_all_pass);

  m.def(
      "khintchine_window",
      [](const GnsRep& rep, const SemigroupModel& model, const HVector& x, const HVector& y,
         double eps, const FolnerNet& net, const std::vector<GroupElement>& h_set, Side side) {
        return khintchine_window(rep, model, x, y, eps, net, h_set, side);
      },
      py::arg("rep"), py::arg("model"), py::arg("x"), py::arg("y"), py::arg("eps"), py::arg("net"),
      py::arg("h_set"), py::arg("side") = Side::right);
  m.def(
      "khintchine_recurrence",
      [](const StarDynamicalSystem& sys, const GnsRep& rep, const AlgebraElement& a,
         const AlgebraElement& b, double eps, const FolnerNet& net,
         const std::vector<GroupElement>& h_set, Side side) {
        return khintchine_recurrence(sys, rep, a, b, eps, net, h_set, side);
      },
      py::arg("system"), py::arg("rep"), py::arg("a"), py::arg("b"), py::arg("eps"), py::arg("net"),
      py::arg("h_set"), py::arg("side") = Side::right);

  py::class_<ErgodicityReport>(m, "ErgodicityReport")
      .def_readonly("ergodic", &ErgodicityReport::ergodic)
      .def_readonly("rank", &ErgodicityReport::rank)
      .def_readonly("deviation", &ErgodicityReport::deviation);

  m.def("is_ergodic", &is_ergodic, py::arg("rep"), py::arg("tol") = 1e-9);
  m.def(
      "ergodic_bound_report",
      [](const StarDynamicalSystem& sys, const GnsRep& rep, const AlgebraElement& a,
         const AlgebraElement& b, double eps, const FolnerNet& net,
         const std::vector<GroupElement>& h_set, Side side) {
        return ergodic_bound_report(sys, rep, a, b, eps, net, h_set, side);
      },
      py::arg("system"), py::arg("rep"), py::arg("a"), py::arg("b"), py::arg("eps"), py::arg("net"),
      py::arg("h_set"), py::arg("side") = Side::right);

  m.def("tensor_descriptor", &tensor_descriptor);
  m.def("tensor_elements", &tensor_elements);
  m.def("tensor_states", &tensor_states);
  m.def("tensor_systems", &tensor_systems, py::arg("systems"));
  m.def("endo_pullback", &endo_pullback, py::arg("system"), py::arg("n"));

  py::class_<MultiRecord>(m, "MultiRecord")
      .def_readonly("h", &MultiRecord::h)
      .def_readonly("window_average", &MultiRecord::window_average)
      .def_readonly("witness", &MultiRecord::witness)
      .def_readonly("product_modulus", &MultiRecord::product_modulus)
      .def_readonly("factor_values", &MultiRecord::factor_values)
      .def_readonly("factor_algebra_values", &MultiRecord::factor_algebra_values);

  py::class_<MultiRecurrenceReport>(m, "MultiRecurrenceReport")
      .def_readonly("q", &MultiRecurrenceReport::q)
      .def_readonly("exponents", &MultiRecurrenceReport::exponents)
      .def_readonly("epsilon", &MultiRecurrenceReport::epsilon)
      .def_readonly("alpha0_n", &MultiRecurrenceReport::alpha0_n)
      .def_readonly("lower_bound", &MultiRecurrenceReport::lower_bound)
      .def_readonly("limit_value", &MultiRecurrenceReport::limit_value)
      .def_readonly("all_pass", &MultiRecurrenceReport::all_pass)
      .def_readonly("cor43_applicable", &MultiRecurrenceReport::cor43_applicable)
      .def_readonly("cor43_all_pass", &MultiRecurrenceReport::cor43_all_pass)
      .def_readonly("records", &MultiRecurrenceReport::records);

  m.def(
      "multiple_recurrence_search",
      [](const StarDynamicalSystem& sys, const AlgebraElement& a,
         const std::vector<std::int64_t>& exponents, double eps, const FolnerNet& net,
         const std::vector<GroupElement>& h_set) {
        return multiple_recurrence_search(sys, a, exponents, eps, net, h_set);
      },
      py::arg("system"), py::arg("a"), py::arg("exponents"), py::arg("eps"), py::arg("net"),
      py::arg("h_set"));

  m.def("elements_from", &elements_from, py::arg("model"), py::arg("coords"));
  m.def("scenario_names", [] {
    std::vector<std::string> names;
    for (const auto& row : list_scenarios()) names.push_back(row.name);
    return names;
  });
  m.def("run_cli", &run_cli, py::arg("args"));

  m.attr("__version__") = "0.1.0";
}
