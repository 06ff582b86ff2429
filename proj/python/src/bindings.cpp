#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qradar/channel.hpp"
#include "qradar/criteria.hpp"
#include "qradar/eom_converter.hpp"
#include "qradar/error.hpp"
#include "qradar/jpa.hpp"
#include "qradar/oe_converter.hpp"
#include "qradar/presets.hpp"
#include "qradar/receiver.hpp"
#include "qradar/scenario.hpp"

namespace py = pybind11;
using namespace qradar;

namespace {

py::dict report_dict(const CriteriaReport& r) {
    py::dict d;
    d["lambda_sph"] = r.lambda_sph;
    d["two_eta"] = r.two_eta;
    d["discord"] = r.discord;
    d["classical_corr"] = r.classical_corr;
    d["mutual_info"] = r.mutual_info;
    d["entangled_by_sph"] = r.entangled_by_sph;
    d["entangled_by_ppt"] = r.entangled_by_ppt;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gaussian-state tools for microwave quantum radar";

    auto base = py::register_exception<Error>(m, "QradarError", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    m.def("tmsv_cov", [](double r) { return tmsv_cm(r).cov(); }, py::arg("r"));
    m.def("symplectic_eigenvalues", [](const MatrixXd& v) { return symplectic_eigenvalues(v); }, py::arg("cov"));
    m.def("lambda_sph", [](const MatrixXd& v) { return lambda_sph(BipartiteBlocks::from_cov(v)); }, py::arg("cov4"));
    m.def("two_eta", [](const MatrixXd& v) { return two_eta(BipartiteBlocks::from_cov(v)); }, py::arg("cov4"));
    m.def("evaluate", [](const MatrixXd& v) { return report_dict(evaluate(BipartiteBlocks::from_cov(v))); },
          py::arg("cov4"), "All criteria for a 4x4 two-mode covariance, as a dict.");

    m.def(
        "n_eff",
        [](double n_in, double n_out, double mu_in, double mu_out, double L0, double L) {
            return n_eff_closed({n_in, n_out, mu_in, mu_out, L0, L});
        },
        py::arg("n_in"), py::arg("n_out"), py::arg("mu_in"), py::arg("mu_out"), py::arg("L0"), py::arg("L"));

    m.def("scattering_matrix", &scattering_matrix, py::arg("kappa"), py::arg("delta0"), py::arg("lambda1"),
          py::arg("omega"));

    m.def(
        "eom_threshold_temperature", [](double t_max, double resolution) {
            return qradar::threshold_temperature(EomParams::reference(), t_max, resolution);
        },
        py::arg("t_max") = 5.0, py::arg("resolution") = 1e-3, "Reference electro-optomechanical converter.");
    m.def(
        "oe_threshold_temperature", [](double t_max, double resolution) {
            return qradar::threshold_temperature(OeParams::reference(), t_max, resolution);
        },
        py::arg("t_max") = 10.0, py::arg("resolution") = 1e-3, "Reference opto-electronic converter.");

    m.def("preset_names", &preset_names);
    m.def("preset_text", [](const std::string& name) {
        const auto t = preset_text(name);
        if (!t) throw ValidationError("unknown preset '" + name + "'");
        return *t;
    });
    m.def("validate_config", &validate_config, py::arg("text"));
    m.def(
        "run_config",
        [](const std::string& text, const std::string& output_dir, int parallelism) {
            RunOptions o;
            o.output_dir = output_dir;
            o.parallelism = parallelism;
            RunOutcome r;
            {
                py::gil_scoped_release release;
                r = run_config(text, o);
            }
            py::dict d;
            d["exit_code"] = r.exit_code;
            d["status"] = r.status;
            d["error"] = r.error;
            d["output_dir"] = r.output_dir;
            d["files"] = r.files;
            return d;
        },
        py::arg("text"), py::arg("output_dir") = "", py::arg("parallelism") = 0);
}
