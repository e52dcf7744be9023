#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conicfo/auglag.hpp"
#include "conicfo/bench.hpp"
#include "conicfo/io.hpp"
#include "conicfo/nsmooth.hpp"
#include "conicfo/penalty.hpp"

namespace py = pybind11;
using namespace conicfo;

namespace {

py::dict counters_dict(const Counters& c) {
  py::dict d;
  d["proj_U"] = c.proj_U;
  d["proj_K"] = c.proj_K;
  d["proj_Kstar"] = c.proj_Kstar;
  d["matvec_G"] = c.matvec_G;
  d["matvec_Gt"] = c.matvec_Gt;
  d["grad_f"] = c.grad_f;
  return d;
}

InnerPath inner_of(const std::string& s) {
  if (s == "auto") return InnerPath::Auto;
  if (s == "simple") return InnerPath::Simple;
  if (s == "smooth") return InnerPath::Smooth;
  throw ParameterError("inner must be 'auto', 'simple' or 'smooth'");
}

}  // namespace

PYBIND11_MODULE(_conicfo, m) {
  m.doc() = "First-order conic solvers: augmented Lagrangian, smoothing and penalty methods";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_RuntimeError);
  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Cone>(m, "Cone")
      .def_static("zero", &Cone::zero, py::arg("dim"))
      .def_static("nonneg", &Cone::nonneg, py::arg("dim"))
      .def_static("second_order", &Cone::second_order, py::arg("dim"))
      .def_static("product", &Cone::product, py::arg("parts"))
      .def_property_readonly("dim", &Cone::dim)
      .def("project", &Cone::project)
      .def("project_polar", &Cone::project_polar)
      .def("distance", &Cone::distance);

  py::class_<SimpleSet>(m, "SimpleSet")
      .def_static("box", &SimpleSet::box, py::arg("lower"), py::arg("upper"))
      .def_static("ball", &SimpleSet::ball, py::arg("center"), py::arg("radius"))
      .def_static("p_power_epigraph", &SimpleSet::p_power_epigraph, py::arg("p"),
                  py::arg("u1_max") = std::numeric_limits<double>::infinity())
      .def_static("full_space", &SimpleSet::full_space, py::arg("dim"))
      .def_property_readonly("dim", &SimpleSet::dim)
      .def_property_readonly("diameter", &SimpleSet::diameter)
      .def("center", &SimpleSet::center)
      .def("project", &SimpleSet::project)
      .def("contains", &SimpleSet::contains, py::arg("v"), py::arg("tol") = 1e-12);

  py::class_<Objective, std::shared_ptr<Objective>>(m, "Objective")
      .def("value", &Objective::value)
      .def("gradient", &Objective::gradient)
      .def_property_readonly("lipschitz", &Objective::lipschitz);
  py::class_<SeparableQuadratic, Objective, std::shared_ptr<SeparableQuadratic>>(m, "SeparableQuadratic")
      .def(py::init<Vec, Vec, double>(), py::arg("d"), py::arg("c"), py::arg("c0") = 0.0);
  m.def("linear_objective", &SeparableQuadratic::linear, py::arg("c"), py::arg("c0") = 0.0);
  m.def("quadratic_diag_objective", &SeparableQuadratic::quadratic_diag, py::arg("d"), py::arg("c"),
        py::arg("c0") = 0.0);
  m.def("zero_objective", &SeparableQuadratic::zero, py::arg("n"));

  py::class_<ConicProblem>(m, "ConicProblem")
      .def(py::init([](std::shared_ptr<Objective> f, SimpleSet U, Mat G, Vec g, Cone K) {
             return ConicProblem(std::move(f), std::move(U), std::move(G), std::move(g), std::move(K));
           }),
           py::arg("f"), py::arg("U"), py::arg("G"), py::arg("g"), py::arg("K"))
      .def_property_readonly("n", &ConicProblem::n)
      .def_property_readonly("m", &ConicProblem::m)
      .def_property_readonly("norm_G", &ConicProblem::norm_G)
      .def_property_readonly("D_U", &ConicProblem::D_U)
      .def_property_readonly("G", &ConicProblem::G)
      .def_property_readonly("g", &ConicProblem::g)
      .def("objective", [](const ConicProblem& p, const Vec& u) { return p.f().value(u); })
      .def("infeasibility", &ConicProblem::infeasibility);

  py::class_<KnownSolution>(m, "KnownSolution")
      .def(py::init<>())
      .def_readwrite("f_star", &KnownSolution::f_star)
      .def_readwrite("u_star", &KnownSolution::u_star)
      .def_readwrite("x_star", &KnownSolution::x_star)
      .def_readwrite("R_d", &KnownSolution::R_d)
      .def_readwrite("f_lower", &KnownSolution::f_lower)
      .def_property_readonly("delta_star", &KnownSolution::delta_star);

  py::class_<Instance>(m, "Instance")
      .def_readonly("generator", &Instance::generator)
      .def_readonly("seed", &Instance::seed)
      .def_readonly("problem", &Instance::problem)
      .def_readonly("known", &Instance::known);

  m.def("gen_equality_qp", &gen_equality_qp, py::arg("n"), py::arg("seed"));
  m.def("make_equality_qp", &make_equality_qp, py::arg("A"), py::arg("b"), py::arg("q"),
        py::arg("box_bound"));
  m.def("gen_example42", &gen_example42, py::arg("p"), py::arg("B") = 10.0);
  m.def("gen_orthant_lp", &gen_orthant_lp, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("gen_soc_feasibility", &gen_soc_feasibility, py::arg("n"), py::arg("seed"));
  m.def("instance_from_problem", [](const ConicProblem& p, const KnownSolution& k) {
    return Instance{"user", 0, p, k};
  });

  m.def("check_eps_optimal",
        [](const ConicProblem& p, const KnownSolution& k, const Vec& u, double eps, bool one_sided) {
          EpsCheck r = check_eps_optimal(p, k, u, eps,
                                         one_sided ? OptimalityMode::OneSided : OptimalityMode::TwoSided);
          py::dict d;
          d["subopt_gap"] = r.subopt_gap;
          d["infeas"] = r.infeas;
          d["pass"] = r.pass;
          return d;
        },
        py::arg("problem"), py::arg("known"), py::arg("u"), py::arg("eps"), py::arg("one_sided") = false);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("method", &SolveReport::method)
      .def_readonly("u", &SolveReport::u)
      .def_readonly("x", &SolveReport::x)
      .def_readonly("outer_iterations", &SolveReport::outer_iterations)
      .def_readonly("doublings", &SolveReport::doublings)
      .def_readonly("final_param", &SolveReport::final_param)
      .def_readonly("infeas", &SolveReport::infeas)
      .def_readonly("subopt_gap", &SolveReport::subopt_gap)
      .def_readonly("precondition_warning", &SolveReport::precondition_warning)
      .def_property_readonly("counters", [](const SolveReport& r) { return counters_dict(r.counters); })
      .def_property_readonly("history", [](const SolveReport& r) {
        py::list out;
        for (const auto& h : r.history) {
          py::dict d;
          d["k"] = h.k;
          d["infeas"] = h.infeas;
          d["subopt_gap"] = h.subopt_gap;
          d["param"] = h.param;
          d["projections"] = h.counters.projections();
          out.append(d);
        }
        return out;
      });

  m.def("solve",
        [](const Instance& inst, const std::string& method, double eps, std::optional<double> R_d,
           std::optional<double> mu, std::optional<double> delta, std::optional<double> rho,
           double mu_scale, double mu0, double rho0, std::optional<long> kouter, const std::string& inner) {
          SweepParams p;
          p.R_d = R_d;
          p.mu = mu;
          p.delta = delta;
          p.rho = rho;
          p.mu_scale = mu_scale;
          p.mu0 = mu0;
          p.rho0 = rho0;
          p.kouter = kouter;
          p.inner = inner_of(inner);
          return run_method(inst, method, eps, p);
        },
        py::arg("instance"), py::arg("method"), py::arg("eps"), py::arg("R_d") = py::none(),
        py::arg("mu") = py::none(), py::arg("delta") = py::none(), py::arg("rho") = py::none(),
        py::arg("mu_scale") = 1.0, py::arg("mu0") = 1.0, py::arg("rho0") = 1.0,
        py::arg("kouter") = py::none(), py::arg("inner") = "auto");

  m.def("ial",
        [](const ConicProblem& p, double mu, double delta, long outer_budget, bool accelerated,
           std::optional<double> f_star) {
          RunContext ctx(p);
          AugLagConfig c;
          c.mu = mu;
          c.delta = delta;
          c.outer_budget = outer_budget;
          c.schedule = accelerated ? ThetaSchedule::Accelerated : ThetaSchedule::Constant;
          c.f_star = f_star;
          return ial_run(ctx, c);
        },
        py::arg("problem"), py::arg("mu"), py::arg("delta"), py::arg("outer_budget"),
        py::arg("accelerated") = false, py::arg("f_star") = py::none());
  m.def("a_ial",
        [](const ConicProblem& p, double mu0, double eps, std::optional<double> f_star) {
          RunContext ctx(p);
          AialOptions o;
          o.f_star = f_star;
          return a_ial_run(ctx, mu0, eps, o);
        },
        py::arg("problem"), py::arg("mu0"), py::arg("eps"), py::arg("f_star") = py::none());
  m.def("ns",
        [](const ConicProblem& p, double mu, double delta, long K_outer, const std::string& inner,
           std::optional<double> f_star) {
          RunContext ctx(p);
          NsConfig c;
          c.mu = mu;
          c.delta = delta;
          c.K_outer = K_outer;
          c.inner = inner_of(inner);
          c.f_star = f_star;
          return ns_run(ctx, c);
        },
        py::arg("problem"), py::arg("mu"), py::arg("delta"), py::arg("K_outer"),
        py::arg("inner") = "auto", py::arg("f_star") = py::none());
  m.def("penalty",
        [](const ConicProblem& p, const std::string& kind, double rho, double eps,
           std::optional<double> mu_smooth, std::optional<long> max_iterations) {
          if (kind != "D" && kind != "N") throw ParameterError("kind must be 'D' or 'N'");
          RunContext ctx(p);
          PenaltyConfig c;
          c.kind = kind == "N" ? PenaltyKind::N : PenaltyKind::D;
          c.rho = rho;
          c.mu_smooth = mu_smooth.value_or(0.5 * eps);
          c.max_iterations = max_iterations;
          return penalty_run(ctx, c, eps);
        },
        py::arg("problem"), py::arg("kind"), py::arg("rho"), py::arg("eps"),
        py::arg("mu_smooth") = py::none(), py::arg("max_iterations") = py::none());

  m.def("optimal_params_auglag",
        [](const std::string& variant, double eps, double R_d, double L_f, double norm_G) {
          auto v = variant == "fast" ? AugLagVariant::Fast : AugLagVariant::Gradient;
          AugLagParams r = optimal_params_auglag(v, eps, R_d, L_f, norm_G);
          return py::make_tuple(r.mu, r.delta);
        });
  m.def("ns_params", [](long K, double norm_G, double R_d, double D_U, double eps) {
    NsParams r = ns_params(K, norm_G, R_d, D_U, eps);
    return py::make_tuple(r.mu, r.delta, r.n_out);
  });
  m.def("penalty_params", [](const std::string& kind, double eps, double delta_star) {
    PenaltyParams r = penalty_params(kind == "N" ? PenaltyKind::N : PenaltyKind::D, eps, delta_star);
    return py::make_tuple(r.rho, r.mu_smooth, r.precondition_warning);
  });

  py::class_<SweepRecord>(m, "SweepRecord")
      .def_readonly("method", &SweepRecord::method)
      .def_readonly("eps", &SweepRecord::eps)
      .def_readonly("proj_U", &SweepRecord::proj_U)
      .def_readonly("proj_K", &SweepRecord::proj_K)
      .def_readonly("proj_Kstar", &SweepRecord::proj_Kstar)
      .def_readonly("matvec", &SweepRecord::matvec)
      .def_readonly("outer_iters", &SweepRecord::outer_iters)
      .def_readonly("subopt_gap", &SweepRecord::subopt_gap)
      .def_readonly("infeas", &SweepRecord::infeas)
      .def_readonly("wall_ms", &SweepRecord::wall_ms);

  m.def("sweep",
        [](const Instance& inst, const std::string& method, const std::vector<double>& eps_list,
           double mu_scale, const std::string& inner) {
          SweepParams p;
          p.mu_scale = mu_scale;
          p.inner = inner_of(inner);
          return sweep_run(inst, method, eps_list, p);
        },
        py::arg("instance"), py::arg("method"), py::arg("eps_list"), py::arg("mu_scale") = 1.0,
        py::arg("inner") = "auto");
  m.def("fit_slope", [](const std::vector<SweepRecord>& r, const std::string& field) {
    return fit_slope(r, parse_count_field(field));
  }, py::arg("records"), py::arg("field") = "total");
  m.def("emit_csv", &emit_csv, py::arg("records"), py::arg("path"));
  m.def("parse_csv", &parse_csv, py::arg("path"));
  m.def("load_problem", [](const std::string& path) {
    LoadedProblem lp = load_problem_json(path);
    return Instance{"file", 0, std::move(lp.problem), std::move(lp.known)};
  });
}
