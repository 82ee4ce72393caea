// Python bindings for the travelling-wave solver.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fkpp/errors.hpp"
#include "fkpp/problem.hpp"
#include "fkpp/properties.hpp"
#include "fkpp/shoot.hpp"
#include "fkpp/speed.hpp"
#include "fkpp/wave.hpp"

namespace py = pybind11;
using namespace fkpp;

namespace {

std::string outcome_name(ShotOutcome::Kind kind) {
    switch (kind) {
        case ShotOutcome::Kind::Undershoot: return "undershoot";
        case ShotOutcome::Kind::Overshoot: return "overshoot";
        case ShotOutcome::Kind::Converged: return "converged";
    }
    return "converged";
}

std::string finiteness_str(Finiteness f) {
    switch (f) {
        case Finiteness::Finite: return "finite";
        case Finiteness::Infinite: return "infinite";
        case Finiteness::Undetermined: return "undetermined";
    }
    return "undetermined";
}

}  // namespace

PYBIND11_MODULE(_fkpp, m) {
    m.doc() = "Travelling waves for bistable reaction-diffusion problems "
              "with p-Laplacian-type diffusion";

    py::class_<AsymptoticExponents>(m, "AsymptoticExponents")
        .def(py::init([](double gm, double g0m, double gp, double g0p) {
                 return AsymptoticExponents{gm, g0m, gp, g0p,
                                            ExponentSource::UserSupplied, 0, 0};
             }),
             py::arg("gamma_minus"), py::arg("gamma0_minus"),
             py::arg("gamma_plus"), py::arg("gamma0_plus"))
        .def_readonly("gamma_minus", &AsymptoticExponents::gamma_minus)
        .def_readonly("gamma0_minus", &AsymptoticExponents::gamma0_minus)
        .def_readonly("gamma_plus", &AsymptoticExponents::gamma_plus)
        .def_readonly("gamma0_plus", &AsymptoticExponents::gamma0_plus)
        .def_readonly("residual_minus", &AsymptoticExponents::residual_minus)
        .def_readonly("residual_plus", &AsymptoticExponents::residual_plus);

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def_readonly("p", &ProblemSpec::p)
        .def_readonly("p_conj", &ProblemSpec::p_conj)
        .def_readonly("s0", &ProblemSpec::s0)
        .def_readonly("family", &ProblemSpec::family)
        .def_readonly("exponents", &ProblemSpec::exponents)
        .def("g", [](const ProblemSpec& s, double r) { return s.g(r); },
             py::arg("r"))
        .def("G", &potential_G, py::arg("r"), py::arg("abs_tol") = 1e-10);

    m.def("cubic_bistable",
          [](double s0, double p) { return make_cubic_bistable(s0, p); },
          py::arg("s0"), py::arg("p") = 2.0);
    m.def("double_well",
          [](double alpha, double p) { return make_double_well(alpha, p); },
          py::arg("alpha"), py::arg("p") = 2.0);
    m.def("alpha_bistable",
          [](double alpha, double s0, double p) {
              return make_alpha_bistable(alpha, s0, p);
          },
          py::arg("alpha"), py::arg("s0"), py::arg("p") = 2.0);
    m.def("build_problem",
          [](double p, const std::function<double(double)>& d,
             const std::function<double(double)>& f,
             const std::optional<AsymptoticExponents>& exponents) {
              BuildOptions opts;
              opts.exponents = exponents;
              return build_problem(p, d, f, opts);
          },
          py::arg("p"), py::arg("diffusion"), py::arg("reaction"),
          py::arg("exponents") = std::nullopt,
          "Validate the sign hypotheses and assemble a problem from callables");
    m.def("tabulated",
          [](std::vector<double> s, std::vector<double> g, double p) {
              return make_tabulated(std::move(s), std::move(g), p);
          },
          py::arg("s"), py::arg("g"), py::arg("p") = 2.0);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("c", &Trajectory::c)
        .def_readonly("nodes", &Trajectory::nodes)
        .def_readonly("values", &Trajectory::values)
        .def_property_readonly("outcome",
                               [](const Trajectory& t) {
                                   return outcome_name(t.outcome.kind);
                               })
        .def_property_readonly("r0",
                               [](const Trajectory& t) { return t.outcome.r0; })
        .def_property_readonly("y1",
                               [](const Trajectory& t) { return t.outcome.y1; })
        .def("__call__", [](const Trajectory& t, double r) { return t(r); },
             py::arg("r"));

    m.def("shoot",
          [](const ProblemSpec& spec, double c, double tol) {
              return shoot(spec, c, tol);
          },
          py::arg("spec"), py::arg("c"), py::arg("tol") = 1e-10);

    py::class_<CStarResult>(m, "CStarResult")
        .def_readonly("c_star", &CStarResult::c_star)
        .def_readonly("profile", &CStarResult::profile)
        .def_readonly("terminal_residual", &CStarResult::terminal_residual)
        .def_readonly("iterations", &CStarResult::iterations)
        .def_readonly("a_priori_cap", &CStarResult::a_priori_cap)
        .def_property_readonly("branch", [](const CStarResult& r) {
            return r.branch == Branch::Stationary ? "stationary"
                                                  : "travelling_wave";
        });

    m.def("solve_cstar",
          [](const ProblemSpec& spec, double tol_c, double tol_ode) {
              return solve_cstar(spec, tol_c, tol_ode);
          },
          py::arg("spec"), py::arg("tol_c") = 1e-10, py::arg("tol_ode") = 1e-10,
          "Bisection on the overshoot/undershoot predicate for the unique "
          "wave speed");

    py::class_<WaveProfile>(m, "WaveProfile")
        .def_readonly("xi", &WaveProfile::xi)
        .def_readonly("u", &WaveProfile::u)
        .def_readonly("du", &WaveProfile::du)
        .def_readonly("x0", &WaveProfile::x0)
        .def_readonly("x1", &WaveProfile::x1)
        .def_readonly("x_minus1", &WaveProfile::x_minus1)
        .def_readonly("c_star", &WaveProfile::c_star)
        .def_property_readonly("left_class",
                               [](const WaveProfile& p) {
                                   return finiteness_str(p.iface.left);
                               })
        .def_property_readonly("right_class",
                               [](const WaveProfile& p) {
                                   return finiteness_str(p.iface.right);
                               })
        .def("__call__",
             [](const WaveProfile& p, double xi) { return evaluate(p, xi); },
             py::arg("xi"), "Returns (u, du) at the given wave coordinate");

    m.def("reconstruct",
          [](const ProblemSpec& spec, const CStarResult& result, double x0,
             int n) { return reconstruct(spec, result, x0, n); },
          py::arg("spec"), py::arg("result"), py::arg("x0") = 0.0,
          py::arg("n") = 2048);

    m.def("classify_interfaces",
          [](const AsymptoticExponents& e, double p) {
              const auto cls = classify_interfaces(e, p);
              return std::make_pair(finiteness_str(cls.left),
                                    finiteness_str(cls.right));
          },
          py::arg("exponents"), py::arg("p"));

    py::class_<ManufacturedProblem>(m, "ManufacturedProblem")
        .def_readonly("spec", &ManufacturedProblem::spec)
        .def_readonly("c_target", &ManufacturedProblem::c_target)
        .def("y_star", &ManufacturedProblem::y_star, py::arg("r"));

    m.def("manufactured_problem", &manufactured_problem, py::arg("kappa"),
          py::arg("a"), py::arg("b"), py::arg("c"), py::arg("p"));

    py::register_exception<Error>(m, "FkppError");
}
