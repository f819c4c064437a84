#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fdrsense/calibration.hpp"
#include "fdrsense/circuit.hpp"
#include "fdrsense/cli.hpp"
#include "fdrsense/error.hpp"
#include "fdrsense/microstrip.hpp"
#include "fdrsense/modes.hpp"
#include "fdrsense/netlist.hpp"
#include "fdrsense/sweep.hpp"

namespace py = pybind11;
using namespace fdrsense;

namespace {

FormulaFidelity fidelity_of(const std::string& s) {
  if (s == "standard") return FormulaFidelity::Standard;
  if (s == "paper-literal") return FormulaFidelity::PaperLiteral;
  throw py::value_error("fidelity must be 'standard' or 'paper-literal'");
}

ResonanceMethod method_of(const std::string& s) {
  if (s == "reactance") return ResonanceMethod::ReactanceZero;
  if (s == "dip") return ResonanceMethod::ReflectionDip;
  throw py::value_error("method must be 'reactance' or 'dip'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Circuit modelling, S11 analysis and FDR soil sensing";

  static py::exception<Error> error(m, "FdrsenseError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  // Microstrip ---------------------------------------------------------------
  py::class_<Substrate>(m, "Substrate")
      .def(py::init<double, double, double>(), py::arg("eps_r") = 3.55, py::arg("tan_delta") = 0.0027,
           py::arg("height_mm") = 1.6)
      .def_readwrite("eps_r", &Substrate::eps_r)
      .def_readwrite("tan_delta", &Substrate::tan_delta)
      .def_readwrite("height_mm", &Substrate::height_mm);

  py::class_<MicrostripLine>(m, "MicrostripLine")
      .def(py::init<Substrate, double, double>(), py::arg("substrate"), py::arg("width_mm"),
           py::arg("length_mm"))
      .def_readwrite("substrate", &MicrostripLine::substrate)
      .def_readwrite("width_mm", &MicrostripLine::width_mm)
      .def_readwrite("length_mm", &MicrostripLine::length_mm);

  py::class_<LineParams>(m, "LineParams")
      .def_readonly("eps_eff", &LineParams::eps_eff)
      .def_readonly("z0_ohm", &LineParams::z0_ohm)
      .def_readonly("inductance_nH", &LineParams::inductance_nH);

  m.def(
      "analyze_line",
      [](const MicrostripLine& line, const std::string& fidelity) { return analyze(line, fidelity_of(fidelity)); },
      py::arg("line"), py::arg("fidelity") = "standard");

  // Circuits -----------------------------------------------------------------
  py::class_<Element>(m, "Element")
      .def_static("resistor", &Element::resistor, py::arg("ohms"))
      .def_static("inductor", &Element::inductor, py::arg("nH"))
      .def_static("capacitor", &Element::capacitor, py::arg("pF"))
      .def_static("series", &Element::series, py::arg("parts"))
      .def_static("parallel", &Element::parallel, py::arg("parts"))
      .def_static("line", &Element::line, py::arg("segment"))
      .def_property_readonly("children", &Element::children)
      .def("__eq__", [](const Element& a, const Element& b) { return a == b; })
      .def("__repr__", [](const Element& e) { return "<Element " + format_netlist(e) + ">"; });

  m.def("parse_netlist", &parse_netlist, py::arg("text"));
  m.def("format_netlist", &format_netlist, py::arg("net"));
  m.def(
      "impedance", [](const Element& n, double f, const std::string& fid) { return impedance(n, f, fidelity_of(fid)); },
      py::arg("net"), py::arg("f_GHz"), py::arg("fidelity") = "standard");
  m.def(
      "reflection",
      [](const Element& n, double f, double z, const std::string& fid) { return reflection(n, f, z, fidelity_of(fid)); },
      py::arg("net"), py::arg("f_GHz"), py::arg("z_ref_ohm") = 50.0, py::arg("fidelity") = "standard");
  m.def(
      "find_resonances",
      [](const Element& net, double lo, double hi, int points, const std::string& method, double z_ref,
         double threshold) {
        ResonanceOptions opt;
        opt.z_ref_ohm = z_ref;
        opt.threshold_dB = threshold;
        return find_resonances(net, lo, hi, points, method_of(method), opt).frequencies_GHz;
      },
      py::arg("net"), py::arg("lo_GHz"), py::arg("hi_GHz"), py::arg("points") = 2001,
      py::arg("method") = "reactance", py::arg("z_ref_ohm") = 50.0, py::arg("threshold_dB") = -10.0);
  m.def("build_3csr", &build_3csr, py::arg("l0_nH"), py::arg("cc_pF"));

  py::class_<JcasaParams>(m, "JcasaParams")
      .def_readwrite("l0_nH", &JcasaParams::l0_nH)
      .def_readwrite("cc_pF", &JcasaParams::cc_pF)
      .def_readwrite("load_ohm", &JcasaParams::load_ohm)
      .def_readwrite("patch", &JcasaParams::patch);
  m.def("parse_jcasa_params", &parse_jcasa_params, py::arg("text"));
  m.def(
      "build_jcasa_model",
      [](const JcasaParams& p, const std::string& state) {
        const ModeState mode = resolve(state);
        return build_jcasa_model(p, mode.d2, mode.d1);
      },
      py::arg("params"), py::arg("state") = "00");

  // Sweeps -------------------------------------------------------------------
  py::class_<FrequencySweep>(m, "FrequencySweep")
      .def_property_readonly("frequencies_GHz", &FrequencySweep::frequencies)
      .def_property_readonly("magnitude_dB", &FrequencySweep::magnitude_dB)
      .def_property_readonly("gamma",
                             [](const FrequencySweep& s) {
                               std::vector<Complex> g;
                               for (const auto& p : s.points) g.push_back(p.gamma);
                               return g;
                             })
      .def_property_readonly("format", [](const FrequencySweep& s) { return std::string(to_string(s.source_format)); })
      .def_readonly("reference_ohm", &FrequencySweep::reference_ohm)
      .def("__len__", [](const FrequencySweep& s) { return s.points.size(); });

  py::class_<Dip>(m, "Dip")
      .def_readonly("f0_GHz", &Dip::f0_GHz)
      .def_readonly("depth_dB", &Dip::depth_dB)
      .def_readonly("band_lo_GHz", &Dip::band_lo_GHz)
      .def_readonly("band_hi_GHz", &Dip::band_hi_GHz)
      .def("__repr__", [](const Dip& d) {
        std::ostringstream s;
        s << "<Dip f0=" << d.f0_GHz << " GHz depth=" << d.depth_dB << " dB>";
        return s.str();
      });

  m.def("parse_sweep", &parse_sweep, py::arg("text"), py::arg("filename_hint") = "");
  m.def("load_sweep", &load_sweep, py::arg("path"));
  m.def(
      "write_touchstone",
      [](const FrequencySweep& s, const std::string& fmt) {
        if (fmt == "ri") return write_touchstone(s, SweepFormat::TouchstoneRI);
        if (fmt == "ma") return write_touchstone(s, SweepFormat::TouchstoneMA);
        if (fmt == "db") return write_touchstone(s, SweepFormat::TouchstoneDB);
        throw py::value_error("format must be 'ri', 'ma' or 'db'");
      },
      py::arg("sweep"), py::arg("format") = "ri");
  m.def("sweep_from_network", &sweep_from_network, py::arg("net"), py::arg("lo_GHz"), py::arg("hi_GHz"),
        py::arg("points"), py::arg("z_ref_ohm") = 50.0);
  m.def(
      "detect_dips", [](const FrequencySweep& s, double t) { return detect_dips(s, t).dips; }, py::arg("sweep"),
      py::arg("threshold_dB") = -10.0);
  m.def("band_at_threshold", &band_at_threshold, py::arg("sweep"), py::arg("dip_f0_GHz"),
        py::arg("threshold_dB") = -10.0);

  // Calibration --------------------------------------------------------------
  py::class_<CalibrationModel>(m, "CalibrationModel")
      .def(py::init<double, double, double, double>(), py::arg("f_u_GHz"), py::arg("slope"), py::arg("intercept"),
           py::arg("fit_residual") = 0.0)
      .def_readwrite("f_u_GHz", &CalibrationModel::f_u_GHz)
      .def_readwrite("slope", &CalibrationModel::slope)
      .def_readwrite("intercept", &CalibrationModel::intercept)
      .def_readonly("fit_residual", &CalibrationModel::fit_residual)
      .def("permittivity", &CalibrationModel::permittivity, py::arg("delta_f_GHz"));

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("delta_f_GHz", &Estimate::delta_f_GHz)
      .def_readonly("eps_r_real", &Estimate::eps_r_real)
      .def_readonly("vwc_percent", &Estimate::vwc_percent)
      .def_readonly("extrapolated", &Estimate::extrapolated);

  m.def("default_calibration_model", &default_calibration_model);
  m.def("fit_linear", &fit_linear, py::arg("points"), py::arg("f_u_GHz") = 0.96);
  m.def(
      "estimate", [](double fm, const CalibrationModel& model) { return estimate(fm, model); }, py::arg("f_m_GHz"),
      py::arg("model") = default_calibration_model());
  m.def(
      "vwc_at", [](double eps) { return default_soil_table().vwc_at(eps); }, py::arg("eps_r_real"));
  m.def(
      "permittivity_at", [](double vwc) { return default_soil_table().permittivity_at(vwc); },
      py::arg("vwc_percent"));
  m.def("sensitivity", &sensitivity, py::arg("f1_GHz"), py::arg("f2_GHz"), py::arg("eps1"), py::arg("eps2"),
        py::arg("f_u_GHz"));
  m.def("shift_for_sensitivity", &shift_for_sensitivity, py::arg("percent"), py::arg("f_u_GHz"),
        py::arg("delta_eps"));

  // Modes --------------------------------------------------------------------
  py::class_<ModeState>(m, "ModeState")
      .def_readonly("mode_index", &ModeState::mode_index)
      .def_readonly("application", &ModeState::application)
      .def_property_readonly("state", &ModeState::state_code)
      .def_property_readonly("bands",
                             [](const ModeState& s) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& b : s.bands) out.emplace_back(b.lo_GHz, b.hi_GHz);
                               return out;
                             })
      .def_property_readonly("sensing", [](const ModeState& s) { return s.offers(Service::Sensing); });

  m.def("resolve_mode", py::overload_cast<std::string_view>(&resolve), py::arg("state"));
  m.def("mode_table", &format_mode_table);

  // CLI ----------------------------------------------------------------------
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::dispatch(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run one fdrsense command line; returns (exit_code, stdout, stderr).");
}
