// Python bindings for the main operations.

#include <algorithm>

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracmp/commands.hpp"
#include "fracmp/energy.hpp"
#include "fracmp/errors.hpp"
#include "fracmp/grid_spectral.hpp"
#include "fracmp/model.hpp"
#include "fracmp/moser.hpp"
#include "fracmp/solvers.hpp"

namespace py = pybind11;
using namespace fracmp;

namespace {

Field field_from_array(const Grid1D& g, py::array_t<double, py::array::c_style> a) {
    if (a.ndim() != 1 || a.shape(0) != g.n_points)
        throw DomainError("values must be a 1-d array of length grid.n_points");
    std::vector<double> v(a.data(), a.data() + a.shape(0));
    return Field(g, std::move(v));
}

py::array_t<double> make_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<double> array_from_field(const Field& u) { return make_array(u.values); }

py::dict solve_report_dict(const SolveReport& r) {
    py::dict d;
    d["solution"] = array_from_field(r.solution);
    d["energy"] = r.energy;
    d["dual_norm"] = r.dual_norm;
    d["weak_residual"] = r.weak_res;
    d["mp_level"] = r.mp_level;
    d["nehari_level"] = r.nehari_level;
    d["norm_limit"] = r.norm_limit;
    d["min_value"] = r.min_value;
    d["iterations"] = r.iterations;
    d["clipped"] = r.clipped;
    d["claim1_gap"] = r.claim1_gap;
    d["notes"] = r.notes;
    return d;
}

}  // namespace

PYBIND11_MODULE(_fracmp, m) {
    m.doc() = "Pseudo-spectral half-Laplacian toolkit: fractional operators, "
              "critical-level experiments, and ground-state solvers.";

    py::register_exception<ConfigError>(m, "ConfigurationError");
    py::register_exception<Error>(m, "NumericalError");

    py::class_<Grid1D>(m, "Grid1D")
        .def(py::init<double, int>(), py::arg("half_length"), py::arg("n_points"))
        .def_readonly("half_length", &Grid1D::half_length)
        .def_readonly("n_points", &Grid1D::n_points)
        .def_readonly("dx", &Grid1D::dx)
        .def("points", [](const Grid1D& g) { return make_array(g.points()); })
        .def("wavenumber", &Grid1D::wavenumber);

    py::class_<Field>(m, "Field")
        .def(py::init(&field_from_array), py::arg("grid"), py::arg("values"))
        .def_readonly("grid", &Field::grid)
        .def_property_readonly("values", &array_from_field);

    m.def("frac_laplacian",
          [](const Field& u, double s) { return frac_laplacian(u, s); }, py::arg("u"),
          py::arg("s"));
    m.def("integrate", &integrate);
    m.def("singular_integral_oracle",
          [](const Field& u, double x, double abs_tol) {
              OracleOptions o;
              o.abs_tol = abs_tol;
              return singular_integral_oracle(u, x, o);
          },
          py::arg("u"), py::arg("x"), py::arg("abs_tol") = 1e-9);
    m.def("extension_dtn_check", &extension_dtn_check);

    py::enum_<NonlinearityMode>(m, "NonlinearityMode")
        .value("H", NonlinearityMode::H)
        .value("F", NonlinearityMode::F);

    py::class_<ModelSpec>(m, "ModelSpec")
        .def_readonly("name", &ModelSpec::name)
        .def("validate", &ModelSpec::validate);
    m.def("catalog", &catalog);
    m.def("catalog_model", &catalog_model);
    m.def("eval_h", [](const ModelSpec& mdl, double t) { return eval_h(mdl.nonlinearity, t); });
    m.def("eval_H", [](const ModelSpec& mdl, double t) { return eval_H(mdl.nonlinearity, t); });
    m.def("eval_m", [](const ModelSpec& mdl, double t) {
        if (!mdl.kirchhoff) throw DomainError("model has no Kirchhoff term");
        return eval_m(*mdl.kirchhoff, t);
    });
    m.def("eval_M", [](const ModelSpec& mdl, double t) {
        if (!mdl.kirchhoff) throw DomainError("model has no Kirchhoff term");
        return eval_M(*mdl.kirchhoff, t);
    });
    m.def("validate_assumptions", [](const ModelSpec& mdl, double t_max) {
        ValidationOptions o;
        o.t_max = t_max;
        const ValidationReport r = validate_assumptions(mdl, o);
        py::list checks;
        for (const auto& c : r.checks) {
            py::dict d;
            d["name"] = c.name;
            d["pass"] = c.pass;
            d["worst_margin"] = c.worst_margin;
            d["location"] = c.location;
            checks.append(d);
        }
        py::dict d;
        d["checks"] = checks;
        d["all_pass"] = r.all_pass();
        return d;
    }, py::arg("model"), py::arg("t_max") = 12.0);

    py::enum_<Functional>(m, "Functional").value("I", Functional::I).value("J", Functional::J);

    py::class_<EnergyContext>(m, "EnergyContext")
        .def(py::init<const Grid1D&, const ModelSpec&>(), py::arg("grid"), py::arg("model"));
    m.def("v_norm_sq", &v_norm_sq);
    m.def("lambda_1", [](const EnergyContext& ctx) {
        const EigenResult r = lambda_1(ctx);
        return py::make_tuple(r.value, array_from_field(r.eigenfield));
    });
    m.def("energy_I", &energy_I);
    m.def("energy_J", &energy_J);
    m.def("gradient", [](const EnergyContext& ctx, const Field& u, Functional w) {
        const GradientReport r = gradient(ctx, u, w);
        py::dict d;
        d["gradient"] = array_from_field(r.gradient);
        d["dual_norm"] = r.dual_norm;
        d["energy"] = r.energy;
        return d;
    });
    m.def("weak_residual", &weak_residual);

    py::class_<MoserFamily>(m, "MoserFamily")
        .def(py::init<int, std::function<double(double)>>(), py::arg("k"), py::arg("potential"))
        .def("psi", &MoserFamily::psi)
        .def("psi_norm_sq", &MoserFamily::psi_norm_sq)
        .def("center_sq", &MoserFamily::center_sq)
        .def("trace_field", &MoserFamily::trace_field)
        .def("normalized_trace_field", &MoserFamily::normalized_trace_field);
    m.def("moser_energy_2d", [](int k) {
        const MoserEnergy2D e = moser_energy_2d(k);
        return py::make_tuple(e.dirichlet_full_plane, e.dirichlet_half_plane, e.l2_mass);
    });
    m.def("mt_functional", &mt_functional);
    m.def("ozawa_ratio", &ozawa_ratio);

    m.def("ray_max", [](const EnergyContext& ctx, const Field& phi, Functional w) {
        const RayMaxResult r = ray_max(ctx, phi, w);
        return py::make_tuple(r.t_star, r.value, r.derivative_residual);
    });
    m.def("critical_level_verdict",
          [](const EnergyContext& ctx, const std::vector<int>& ks, Functional w) {
              const CriticalLevelReport r = critical_level_verdict(ctx, ks, w);
              py::list rows;
              for (const auto& row : r.rows) {
                  py::dict d;
                  d["k"] = row.k;
                  d["t_star"] = row.t_star;
                  d["value"] = row.value;
                  d["threshold"] = row.threshold;
                  d["margin"] = row.margin;
                  rows.append(d);
              }
              return py::make_tuple(r.verdict, rows);
          });
    m.def("nehari_scale", [](const EnergyContext& ctx, const Field& u, Functional w) {
        return nehari_scale(ctx, u, w);
    });
    m.def("nehari_minimize", [](const EnergyContext& ctx, Functional w, int restarts) {
        SolveOptions o;
        o.restarts = restarts;
        return solve_report_dict(nehari_minimize(ctx, w, o));
    }, py::arg("ctx"), py::arg("which"), py::arg("restarts") = 2);
    m.def("mountain_pass", [](const EnergyContext& ctx, Functional w, const Field& e) {
        return solve_report_dict(mountain_pass(ctx, w, e));
    });
    m.def("descend_to_solution", [](const EnergyContext& ctx, const Field& seed, Functional w) {
        return solve_report_dict(descend_to_solution(ctx, seed, w));
    });
    m.def("find_negative_endpoint", &find_negative_endpoint);
    m.def("lions_exponent", &lions_exponent);

    m.def("run_command", [](const std::string& name, const std::string& config_text,
                            const std::string& out_dir) {
        RunConfig cfg = config_text.empty() ? RunConfig{} : parse_config(config_text);
        if (!out_dir.empty()) cfg.output.directory = out_dir;
        if (name == "operator-check") return cmd_operator_check(cfg);
        if (name == "validate-model") return cmd_validate_model(cfg);
        if (name == "critical-level") return cmd_critical_level(cfg);
        if (name == "solve-P") return cmd_solve(cfg, 'P');
        if (name == "solve-Q") return cmd_solve(cfg, 'Q');
        throw DomainError("unknown command: " + name);
    }, py::arg("name"), py::arg("config_text") = "", py::arg("out_dir") = "");
}
