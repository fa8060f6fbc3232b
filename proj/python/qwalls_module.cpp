// pybind11 bindings for the qwalls core: boundary conditions, spectra, theta
// dynamics, form composition, moving walls and the alternating-evolution
// experiments.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwalls/carpet.hpp"
#include "qwalls/expr.hpp"
#include "qwalls/movingwalls.hpp"
#include "qwalls/spectral.hpp"
#include "qwalls/trotter.hpp"
#include "qwalls/version.hpp"

namespace py = pybind11;
using namespace qwalls;

namespace {

py::list mat2_to_list(const Mat2& m) {
    py::list rows;
    py::list r0, r1;
    r0.append(m.a);
    r0.append(m.b);
    r1.append(m.c);
    r1.append(m.d);
    rows.append(r0);
    rows.append(r1);
    return rows;
}

Mat2 mat2_from_seq(const std::vector<std::vector<cplx>>& rows) {
    if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2)
        throw std::invalid_argument("expected a 2x2 matrix");
    return {rows[0][0], rows[0][1], rows[1][0], rows[1][1]};
}

}  // namespace

PYBIND11_MODULE(_qwalls, m) {
    m.doc() = "quantum box dynamics under U(2) boundary conditions";
    m.attr("__version__") = kVersion;

    py::class_<PhysicalConfig>(m, "PhysicalConfig")
        .def(py::init<>())
        .def(py::init([](double hbar, double mass, double l0) {
                 PhysicalConfig c{hbar, mass, l0};
                 c.validate();
                 return c;
             }),
             py::arg("hbar") = 1.0, py::arg("mass") = 0.5, py::arg("l0") = 1.0)
        .def_readonly("hbar", &PhysicalConfig::hbar)
        .def_readonly("mass", &PhysicalConfig::mass)
        .def_readonly("l0", &PhysicalConfig::l0)
        .def("kinetic_scale", &PhysicalConfig::kinetic_scale);

    py::class_<Interval>(m, "Interval")
        .def(py::init([](double a, double b) {
                 Interval iv{a, b};
                 iv.validate();
                 return iv;
             }),
             py::arg("a"), py::arg("b"))
        .def_readonly("a", &Interval::a)
        .def_readonly("b", &Interval::b)
        .def("width", &Interval::width)
        .def("mid", &Interval::mid);

    py::class_<BoundaryUnitary>(m, "BoundaryUnitary")
        .def_static("from_matrix",
                    [](const std::vector<std::vector<cplx>>& rows, double tol) {
                        return BoundaryUnitary::from_matrix(mat2_from_seq(rows), tol);
                    },
                    py::arg("matrix"), py::arg("tol") = 1e-10)
        .def_property_readonly("matrix", [](const BoundaryUnitary& u) { return mat2_to_list(u.u); })
        .def_readonly("family", &BoundaryUnitary::family)
        .def_readonly("params", &BoundaryUnitary::params)
        .def("unitarity_defect", &BoundaryUnitary::unitarity_defect)
        .def("to_json", [](const BoundaryUnitary& u) { return boundary_to_json(u); })
        .def("__repr__", [](const BoundaryUnitary& u) {
            return "<BoundaryUnitary " + (u.family.empty() ? std::string("custom") : u.family) + ">";
        });

    m.def("make_dirichlet", &make_dirichlet);
    m.def("make_neumann", &make_neumann);
    m.def("make_robin", &make_robin, py::arg("alpha"));
    m.def("make_pseudo_periodic", &make_pseudo_periodic, py::arg("alpha"));
    m.def("make_local", &make_local, py::arg("alpha1"), py::arg("alpha2"));
    m.def("parse_boundary", &parse_boundary, py::arg("spec"));
    m.def("boundary_from_json", &boundary_from_json, py::arg("text"));
    m.def("reflection_phase", &reflection_phase, py::arg("alpha"), py::arg("k"), py::arg("l0") = 1.0);

    m.def(
        "classify_minus_one",
        [](const BoundaryUnitary& u, double tol) {
            const MinusOneStructure s = classify_minus_one(u, tol);
            py::dict d;
            d["count"] = s.count;
            if (s.xi) d["xi"] = py::make_tuple(s.xi->x, s.xi->y);
            if (s.xi_perp) d["xi_perp"] = py::make_tuple(s.xi_perp->x, s.xi_perp->y);
            if (s.u2) d["u2"] = *s.u2;
            return d;
        },
        py::arg("u"), py::arg("tol") = 1e-9);

    py::enum_<Branch>(m, "Branch")
        .value("oscillatory", Branch::oscillatory)
        .value("linear", Branch::linear)
        .value("evanescent", Branch::evanescent);

    py::class_<EigenMode>(m, "EigenMode")
        .def_readonly("branch", &EigenMode::branch)
        .def_readonly("k_or_kappa", &EigenMode::k_or_kappa)
        .def_readonly("energy", &EigenMode::energy)
        .def_readonly("c1", &EigenMode::c1)
        .def_readonly("c2", &EigenMode::c2)
        .def("__call__", [](const EigenMode& mode, double x) { return mode.fun.eval(x); })
        .def("__repr__", [](const EigenMode& mode) {
            return std::string("<EigenMode ") + branch_name(mode.branch) +
                   " E=" + std::to_string(mode.energy) + ">";
        });

    m.def("solve_spectrum",
          [](const BoundaryUnitary& u, const Interval& iv, const PhysicalConfig& cfg, double e_max) {
              return solve_spectrum(u, iv, cfg, e_max);
          },
          py::arg("u"), py::arg("interval"), py::arg("config"), py::arg("e_max"));
    m.def("dispersion_determinant", &dispersion_determinant, py::arg("u"), py::arg("interval"),
          py::arg("config"), py::arg("branch"), py::arg("k"));

    m.def("airy_quantization", &airy_quantization, py::arg("eps"));
    m.def("solve_airy_levels", &solve_airy_levels, py::arg("n_levels"));

    py::class_<CarpetSeries>(m, "CarpetSeries")
        .def(py::init([](int n_max, double l) { return CarpetSeries::make(n_max, l); }),
             py::arg("n_max") = 2048, py::arg("l") = 1.0)
        .def_readonly("n_max", &CarpetSeries::n_max)
        .def_readonly("l", &CarpetSeries::l)
        .def("coeff", &CarpetSeries::coeff, py::arg("n"))
        .def("tail_bound", &CarpetSeries::tail_bound);

    m.def("expansion_coefficient_c", &expansion_coefficient_c, py::arg("n"));
    m.def("theta", &theta, py::arg("series"), py::arg("xi"), py::arg("tau"));
    m.def("revival_fidelity", &revival_fidelity, py::arg("series"), py::arg("tau"));
    m.def(
        "profile",
        [](const CarpetSeries& s, double tau, int n_points) {
            const GridState g = profile(s, tau, n_points);
            std::vector<double> xs(g.n()), ys(g.n());
            for (int i = 0; i < g.n(); ++i) {
                xs[i] = g.x_at(i);
                ys[i] = g.samples[i].real();
            }
            return py::make_tuple(xs, ys);
        },
        py::arg("series"), py::arg("tau"), py::arg("n_points"));
    m.def(
        "box_counting_dimension",
        [](const std::vector<double>& values, int min_scale, int max_scale) {
            GridState g;
            g.interval = {0.0, 1.0};
            g.samples.assign(values.begin(), values.end());
            const BoxCountResult r = box_counting_dimension(g, min_scale, max_scale);
            py::dict d;
            d["dimension"] = r.dimension;
            d["flat"] = r.flat;
            d["points"] = r.points;
            return d;
        },
        py::arg("values"), py::arg("min_scale"), py::arg("max_scale"));
    m.def(
        "plateau_stats",
        [](const CarpetSeries& s, int p, int q, int n_points) {
            const PlateauStats st = plateau_stats(s, p, q, n_points);
            py::dict d;
            d["within"] = st.within;
            d["between"] = st.between;
            d["ratio"] = st.ratio;
            return d;
        },
        py::arg("series"), py::arg("p"), py::arg("q"), py::arg("n_points"));

    py::class_<FormDescriptor>(m, "FormDescriptor")
        .def_readonly("constraint_dim", &FormDescriptor::constraint_dim)
        .def_readonly("l0", &FormDescriptor::l0);
    m.def("form_descriptor", &form_descriptor, py::arg("u"), py::arg("l0") = 1.0,
          py::arg("tol") = 1e-9);
    m.def(
        "gamma_value",
        [](const FormDescriptor& d, cplx psi_a, cplx psi_b, double tol) {
            return gamma_value(d, Vec2{psi_a, psi_b}, tol);
        },
        py::arg("descriptor"), py::arg("psi_a"), py::arg("psi_b"), py::arg("tol") = 1e-8);
    m.def("star", &star, py::arg("u"), py::arg("v"), py::arg("l0") = 1.0, py::arg("tol") = 1e-9);

    py::class_<GalerkinOperators>(m, "GalerkinOperators")
        .def_readonly("n_modes", &GalerkinOperators::n_modes)
        .def_property_readonly("kin_diag",
                               [](const GalerkinOperators& g) { return g.kin_diag; });
    m.def("build_galerkin", &build_galerkin, py::arg("config"), py::arg("n_modes"));

    py::class_<WallTrajectory>(m, "WallTrajectory")
        .def(py::init([](const std::string& l_expr, const std::string& d_expr) {
                 WallTrajectory t;
                 const Expr le = Expr::parse(l_expr);
                 const Expr de = Expr::parse(d_expr);
                 t.l = [le](double tt) { return le.eval(tt); };
                 t.d = [de](double tt) { return de.eval(tt); };
                 return t;
             }),
             py::arg("l"), py::arg("d") = "0")
        .def("width", &WallTrajectory::width, py::arg("t"))
        .def("center", &WallTrajectory::center, py::arg("t"))
        .def("width_rate", &WallTrajectory::width_rate, py::arg("t"))
        .def("center_rate", &WallTrajectory::center_rate, py::arg("t"));

    py::class_<SpectralState>(m, "SpectralState")
        .def(py::init([](std::vector<cplx> coeffs) {
                 SpectralState s;
                 s.basis_tag = "dirichlet_sine";
                 s.coeffs = std::move(coeffs);
                 return s;
             }),
             py::arg("coeffs"))
        .def_readonly("coeffs", &SpectralState::coeffs)
        .def("norm", &SpectralState::norm);

    m.def("step_crank_nicolson", &step_crank_nicolson, py::arg("ops"), py::arg("trajectory"),
          py::arg("state"), py::arg("t"), py::arg("dt"));
    m.def("kinetic_energy", &kinetic_energy, py::arg("ops"), py::arg("state"), py::arg("l"));
    m.def(
        "energy_rate_check",
        [](const GalerkinOperators& ops, const WallTrajectory& traj, const SpectralState& st,
           double t, double fd_delta) {
            const auto [lhs, rhs] = energy_rate_check(ops, traj, st, t, fd_delta);
            return py::make_tuple(lhs, rhs);
        },
        py::arg("ops"), py::arg("trajectory"), py::arg("state"), py::arg("t"),
        py::arg("fd_delta") = 1e-4);

    py::class_<PropagatorBundle>(m, "PropagatorBundle")
        .def_property_readonly("modes", [](const PropagatorBundle& b) { return b.modes; })
        .def("size", &PropagatorBundle::size);
    m.def("build_bundle",
          [](const BoundaryUnitary& u, const Interval& iv, const PhysicalConfig& cfg, int n_modes) {
              return build_bundle(u, iv, cfg, n_modes);
          },
          py::arg("u"), py::arg("interval"), py::arg("config"), py::arg("n_modes"));
    m.def(
        "alternating_run",
        [](const PropagatorBundle& bu, const PropagatorBundle& bv, double t_total, int n_pairs,
           const std::vector<cplx>& coeffs, const PhysicalConfig& cfg) {
            const EvolveResult r = alternating_run(bu, bv, t_total, n_pairs, coeffs, cfg);
            return py::make_tuple(r.coeffs, r.norm_deficit);
        },
        py::arg("bundle_u"), py::arg("bundle_v"), py::arg("t_total"), py::arg("n_pairs"),
        py::arg("coeffs"), py::arg("config"));
    m.def(
        "convergence_report",
        [](const BoundaryUnitary& u, const BoundaryUnitary& v, const Interval& iv,
           const PhysicalConfig& cfg, double t_total, const std::vector<int>& n_list, int n_modes) {
            const auto coeffs = smooth_bump_coeffs(iv, n_modes);
            const ConvergenceReport rep =
                convergence_report(u, v, iv, cfg, t_total, n_list, coeffs, n_modes);
            py::list rows;
            for (const auto& r : rep.rows)
                rows.append(py::make_tuple(r.n_pairs, r.error, r.norm_deficit));
            py::dict d;
            d["rows"] = rows;
            d["fitted_order"] = rep.fitted_order;
            d["composed_w"] = rep.composed;
            return d;
        },
        py::arg("u"), py::arg("v"), py::arg("interval"), py::arg("config"), py::arg("t_total"),
        py::arg("n_list"), py::arg("n_modes"));
    m.def("smooth_bump_coeffs", &smooth_bump_coeffs, py::arg("interval"), py::arg("n_modes"));
}
