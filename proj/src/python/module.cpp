#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "kwp/report.hpp"

namespace py = pybind11;

namespace {

// Parameter values may be ints, "p/q" strings, or decimal strings; decimals
// are read exactly (e.g. "1.5" becomes 3/2).
kwp::ParamMap to_params(const py::dict& params) {
    kwp::ParamMap out;
    for (auto item : params) {
        std::string name = py::cast<std::string>(item.first);
        if (py::isinstance<py::int_>(item.second))
            out[name] = kwp::Rat(py::cast<long>(item.second));
        else
            out[name] = kwp::rat_parse(py::cast<std::string>(py::str(item.second)));
    }
    return out;
}

kwp::RunConfig make_cfg(const std::string& family, const py::dict& params, int nmax,
                        int precision, double tol) {
    kwp::RunConfig cfg;
    cfg.family = family;
    cfg.params = to_params(params);
    cfg.nmax = nmax;
    cfg.digits = precision;
    cfg.tol = tol;
    return cfg;
}

py::object to_py(const kwp::Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

kwp::Json from_py(const py::object& obj) {
    std::string text = py::cast<std::string>(py::module_::import("json").attr("dumps")(obj));
    return kwp::Json::parse(text);
}

}  // namespace

PYBIND11_MODULE(_kwpearson, m) {
    m.doc() = "Exact Pearson systems, operator classification, and quadrature checks "
              "for bivariate orthogonal polynomial families";
    m.attr("__version__") = kwp::kToolVersion;

    m.def("families", [] {
        py::list out;
        for (const auto& d : kwp::family_catalog()) {
            py::dict f;
            f["name"] = d.name;
            f["params"] = d.params;
            f["constraints"] = d.constraints;
            f["weight"] = d.weight;
            f["domain"] = d.domain;
            f["rho"] = d.rho;
            out.append(std::move(f));
        }
        return out;
    }, "Describe the built-in weight families.");

    m.def("build",
          [](const std::string& family, const py::dict& params, int nmax) {
              return to_py(kwp::cmd_build(make_cfg(family, params, nmax, 34, 1e-10)));
          },
          py::arg("family"), py::arg("params") = py::dict(), py::arg("nmax") = 4,
          "Construct the monic orthogonal basis up to total degree nmax.");

    m.def("pearson_derive",
          [](const std::string& family, const py::dict& params, int nmax) {
              return to_py(kwp::cmd_pearson_derive(make_cfg(family, params, nmax, 34, 1e-10)));
          },
          py::arg("family"), py::arg("params") = py::dict(), py::arg("nmax") = 4,
          "Derive the raw first-order system and the candidate Pearson pairs.");

    m.def("pearson_verify",
          [](const std::string& family, const py::object& claim, const py::dict& params,
             int nmax) {
              return to_py(kwp::cmd_pearson_verify(make_cfg(family, params, nmax, 34, 1e-10),
                                                   from_py(claim)));
          },
          py::arg("family"), py::arg("claim"), py::arg("params") = py::dict(),
          py::arg("nmax") = 4,
          "Check a claimed Pearson pair or first-order identity exactly.");

    m.def("operator_classify",
          [](const std::string& family, const py::dict& params, int nmax) {
              return to_py(kwp::cmd_classify(make_cfg(family, params, nmax, 34, 1e-10)));
          },
          py::arg("family"), py::arg("params") = py::dict(), py::arg("nmax") = 4,
          "Expand the second-order operator in the basis and classify its action.");

    m.def("orthocheck",
          [](const std::string& family, const py::dict& params, int nmax, int precision,
             double tol) {
              return to_py(kwp::cmd_orthocheck(make_cfg(family, params, nmax, precision, tol)));
          },
          py::arg("family"), py::arg("params") = py::dict(), py::arg("nmax") = 4,
          py::arg("precision") = 34, py::arg("tol") = 1e-10,
          "Cross-validate orthogonality numerically with Gauss rules.");

    m.def("report_all",
          [](const std::string& family, const py::dict& params, int nmax, int precision,
             double tol) {
              return to_py(kwp::cmd_report_all(make_cfg(family, params, nmax, precision, tol)));
          },
          py::arg("family"), py::arg("params") = py::dict(), py::arg("nmax") = 4,
          py::arg("precision") = 34, py::arg("tol") = 1e-10,
          "Run every stage and return the combined report.");

    m.def("render_markdown",
          [](const py::object& report) { return kwp::render_markdown(from_py(report)); },
          py::arg("report"), "Render any report dict as a markdown document.");
}
