// Python bindings for the core operations. Results with several fields come back as plain dicts.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wcop/commands.hpp"
#include "wcop/config.hpp"
#include "wcop/norms.hpp"
#include "wcop/operators.hpp"
#include "wcop/spectra.hpp"

namespace py = pybind11;
using namespace wcop;

namespace {

py::dict classification_dict(const AutomorphismClass& c) {
    py::list fixed;
    for (const auto& f : c.fixed_points) fixed.append(py::make_tuple(f.location, f.derivative));
    py::dict d;
    d["kind"] = std::string(to_string(c.kind));
    d["fixed_points"] = fixed;
    d["unstable"] = c.unstable;
    d["diagnostic"] = c.diagnostic;
    if (c.kind == AutomorphismKind::Hyperbolic) {
        d["attractive"] = c.attractive;
        d["repulsive"] = c.repulsive;
        d["multiplier"] = c.multiplier;
    }
    return d;
}

py::dict prediction_dict(const SpectrumPrediction& p) {
    py::dict d;
    d["shape"] = std::string(to_string(p.shape));
    d["provenance"] = std::string(to_string(p.provenance));
    switch (p.shape) {
        case SpectrumShape::Circle: d["radius"] = p.radius; break;
        case SpectrumShape::Annulus:
            d["r_min"] = p.r_min;
            d["r_max"] = p.r_max;
            d["exact"] = p.exact;
            break;
        case SpectrumShape::RootSetClosure:
            d["period"] = p.period;
            d["points"] = p.points;
            if (p.refinement_hausdorff) d["refinement_hausdorff"] = *p.refinement_hausdorff;
            break;
    }
    py::dict assumptions;
    for (const auto& [name, ok] : p.assumptions_checked) assumptions[py::str(name)] = ok;
    d["assumptions_checked"] = assumptions;
    d["note"] = p.note;
    return d;
}

py::dict verdict_dict(const BoundednessVerdict& v) {
    py::list witnesses;
    for (const auto& w : v.witnesses) {
        py::dict wd;
        wd["name"] = w.name;
        wd["value"] = w.estimate.value;
        wd["history"] = w.history;
        witnesses.append(wd);
    }
    py::dict d;
    d["verdict"] = std::string(to_string(v.verdict));
    d["witnesses"] = witnesses;
    d["reason"] = v.reason;
    return d;
}

DiscGrid grid_of(int levels) {
    GridParams params;
    params.radial_levels = levels;
    return DiscGrid(params);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weighted composition operators on the Bloch and Dirichlet spaces";
    m.attr("__version__") = tool_version;

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<Space>(m, "Space").value("BLOCH", Space::Bloch).value("DIRICHLET", Space::Dirichlet);

    py::class_<MoebiusTransform>(m, "Moebius")
        .def_static("from_coefficients", &MoebiusTransform::from_coefficients, py::arg("a"), py::arg("b"),
                    py::arg("c"), py::arg("d"))
        .def_static("disc_automorphism", &build_disc_automorphism, py::arg("theta"), py::arg("p"))
        .def_static("rotation", &build_rotation, py::arg("theta"))
        .def_static("canonical_hyperbolic", &build_canonical_hyperbolic, py::arg("mu"))
        .def_static("parabolic_cayley", &build_parabolic_cayley, py::arg("t"))
        .def_property_readonly("coefficients", [](const MoebiusTransform& t) { return py::make_tuple(t.a(), t.b(), t.c(), t.d()); })
        .def("__call__", [](const MoebiusTransform& t, Complex z) { return t(z); })
        .def("derivative", &MoebiusTransform::derivative)
        .def("__matmul__", &MoebiusTransform::compose, "composition: (f @ g)(z) = f(g(z))")
        .def("inverse", &MoebiusTransform::inverse)
        .def("iterate", [](const MoebiusTransform& t, long long n) { return iterate(t, n); })
        .def("is_disc_automorphism", &MoebiusTransform::is_disc_automorphism, py::arg("tol") = 1e-9);

    py::class_<BlaschkeProduct>(m, "Blaschke")
        .def(py::init<std::vector<Complex>, Complex>(), py::arg("zeros"), py::arg("factor") = Complex{1.0})
        .def("__call__", &BlaschkeProduct::value)
        .def("derivative", &BlaschkeProduct::derivative)
        .def_property_readonly("zeros", &BlaschkeProduct::zeros);

    py::class_<RationalSymbol>(m, "Symbol")
        .def(py::init([](std::vector<Complex> num, std::vector<Complex> den) {
                 return RationalSymbol(Polynomial(std::move(num)), Polynomial(std::move(den)));
             }),
             py::arg("numerator"), py::arg("denominator") = std::vector<Complex>{Complex{1.0}},
             "u = numerator / denominator, coefficients in ascending powers")
        .def("__call__", &RationalSymbol::value)
        .def("reciprocal", &RationalSymbol::reciprocal)
        .def("__repr__", &RationalSymbol::describe);

    py::class_<SelfMap>(m, "SelfMap")
        .def(py::init<MoebiusTransform>())
        .def(py::init<BlaschkeProduct>())
        .def("__call__", &SelfMap::value)
        .def("__repr__", &SelfMap::describe);
    py::implicitly_convertible<MoebiusTransform, SelfMap>();
    py::implicitly_convertible<BlaschkeProduct, SelfMap>();

    py::class_<WeightedCompositionOp>(m, "Operator")
        .def(py::init<RationalSymbol, SelfMap, Space>(), py::arg("u"), py::arg("phi"), py::arg("space") = Space::Bloch)
        .def("apply_to_polynomial",
             [](const WeightedCompositionOp& op, std::vector<Complex> coeffs, Complex z) {
                 return wcomp_apply(op, make_function(Polynomial(std::move(coeffs))), z);
             },
             py::arg("coefficients"), py::arg("z"))
        .def("__repr__", &WeightedCompositionOp::describe);

    m.def("classify", [](const MoebiusTransform& phi) { return classification_dict(classify(phi)); });
    m.def("hyperbolic_distance", &hyperbolic_distance);
    m.def("denjoy_wolff_sequence", &dw_limit_sequence, py::arg("phi"), py::arg("count"),
          "(1 - |phi_n(0)|)^(1/n) for n = 1 .. count");

    m.def("predict_spectrum",
          [](const WeightedCompositionOp& op, int levels) { return prediction_dict(predict_spectrum(op, grid_of(levels))); },
          py::arg("op"), py::arg("grid_levels") = 12);
    m.def(
        "spectral_radius_estimate",
        [](const WeightedCompositionOp& op, std::vector<int> schedule, int levels) {
            const auto e = spectral_radius_estimate(op, schedule, grid_of(levels));
            py::dict d;
            d["schedule"] = e.schedule;
            d["sequence"] = e.sequence;
            d["extrapolated"] = e.extrapolated;
            d["predicted"] = e.predicted;
            d["relative_gap"] = e.relative_gap;
            d["note"] = e.note;
            return d;
        },
        py::arg("op"), py::arg("schedule") = std::vector<int>{25, 50, 100}, py::arg("grid_levels") = 12);
    m.def("check_bounded",
          [](const WeightedCompositionOp& op, int levels) { return verdict_dict(check_bounded(op, grid_of(levels))); },
          py::arg("op"), py::arg("grid_levels") = 8);
    m.def(
        "check_invertible",
        [](const WeightedCompositionOp& op, int levels, double threshold) {
            const auto grid = grid_of(levels);
            const auto r = check_invertible(op.certify(grid), grid, threshold);
            py::dict d;
            d["invertible"] = r.invertible;
            d["inf_modulus"] = r.inf_modulus;
            d["reason"] = r.reason;
            d["inverse"] = r.inverse ? py::cast(*r.inverse) : py::none();
            return d;
        },
        py::arg("op"), py::arg("grid_levels") = 8, py::arg("threshold") = 1e-6);
    m.def("composition_norm_bound", &composition_norm_bound, py::arg("phi"), py::arg("n"), py::arg("space"));
    m.def("truncation_eigenvalues",
          [](const WeightedCompositionOp& op, int n) { return truncation_eigenvalues(taylor_truncation(op, n)); },
          py::arg("op"), py::arg("n"));
    m.def("hausdorff_distance", &hausdorff_distance);

    m.def(
        "bloch_norm",
        [](std::vector<Complex> coeffs, int levels) {
            return bloch_norm(make_function(Polynomial(std::move(coeffs))), grid_of(levels)).value;
        },
        py::arg("coefficients"), py::arg("grid_levels") = 12, "grid estimate of the Bloch norm of a polynomial");
    m.def(
        "dirichlet_norm",
        [](std::vector<Complex> coeffs) { return dirichlet_norm(make_function(Polynomial(std::move(coeffs))), QuadratureRule()).value; },
        py::arg("coefficients"), "quadrature value of the Dirichlet norm of a polynomial");

    m.def("default_config", [] { return emit_config(ExperimentConfig{}); }, "canonical JSON of the built-in defaults");
    m.def("command_names", &command_names);
    m.def(
        "run_command_json",
        [](const std::string& name, const std::string& config_json) {
            CommandOutput out;
            {
                py::gil_scoped_release release;
                out = run_command(name, parse_config(config_json));
            }
            py::dict artifacts;
            for (const auto& [file, text] : out.artifacts) artifacts[py::str(file)] = text;
            return py::make_tuple(out.report_json, out.timing_json, artifacts, out.checks_passed);
        },
        py::arg("name"), py::arg("config_json"));
}
