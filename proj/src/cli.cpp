#include "fdrsense/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

#include "fdrsense/calibration.hpp"
#include "fdrsense/circuit.hpp"
#include "fdrsense/error.hpp"
#include "fdrsense/microstrip.hpp"
#include "fdrsense/modes.hpp"
#include "fdrsense/netlist.hpp"
#include "fdrsense/sweep.hpp"
#include "json_io.hpp"
#include "svg_plot.hpp"
#include "text_util.hpp"

namespace fdrsense::cli {
namespace {

constexpr const char* kConfigEnv = "FDR_SENSE_CONFIG";

// Bad flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An error tied to one input file; the file name leads the message.
struct FileError {
  std::string path;
  Error error;
};

std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string row(std::string_view key, const std::string& value) {
  std::string s(key);
  if (s.size() < 15) s.resize(15, ' ');
  else s += ' ';
  return s + value + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "failed reading '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

Band parse_range(const std::string& spec, const char* flag) {
  const auto parts = text::split_char(spec, ':');
  std::optional<double> lo;
  std::optional<double> hi;
  if (parts.size() == 2 || (parts.size() == 3 && text::lower(text::trim(parts[2])) == "ghz")) {
    lo = text::parse_double(text::trim(parts[0]));
    hi = text::parse_double(text::trim(parts[1]));
  }
  if (!lo || !hi || !std::isfinite(*lo) || !std::isfinite(*hi) || !(*lo > 0.0) || !(*hi > *lo)) {
    throw UsageError(std::string(flag) + " expects lo:hi in GHz with 0 < lo < hi, got '" + spec + "'");
  }
  return {*lo, *hi};
}

Json header(std::string_view command) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}};
}

ModeState parse_state(const std::string& code) { return resolve(code); }

std::string range_text(const Band& b) { return fixed(b.lo_GHz, 2) + "–" + fixed(b.hi_GHz, 2); }

std::string dip_line(std::size_t i, const Dip& d) {
  std::string s = "dip " + std::to_string(i + 1) + "  f0 " + fixed(d.f0_GHz, 6) + " GHz  depth " +
                  fixed(d.depth_dB, 2) + " dB  band ";
  s += d.band_lo_GHz ? fixed(*d.band_lo_GHz, 6) : std::string("open");
  s += " .. ";
  s += d.band_hi_GHz ? fixed(*d.band_hi_GHz, 6) : std::string("open");
  return s + " GHz\n";
}

template <typename T, typename F>
std::vector<T> parallel_over(const std::vector<std::string>& paths, F&& work) {
  std::vector<std::future<T>> jobs;
  jobs.reserve(paths.size());
  for (const auto& p : paths) jobs.push_back(std::async(std::launch::async, work, p));
  std::vector<T> results;
  std::optional<FileError> first_error;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      results.push_back(jobs[i].get());
    } catch (const Error& e) {
      if (!first_error) first_error = FileError{paths[i], e};
    }
  }
  if (first_error) throw *first_error;
  return results;
}

// ---------------------------------------------------------------------------

struct Common {
  bool json = false;
};

struct LineArgs : Common {
  double width_mm = 1.0;
  double height_mm = kRo4003c.height_mm;
  double eps_r = kRo4003c.eps_r;
  double tan_delta = kRo4003c.tan_delta;
  double length_mm = 125.0;
  std::string fidelity = "standard";
};

FormulaFidelity fidelity_of(const std::string& s) {
  return s == "paper-literal" ? FormulaFidelity::PaperLiteral : FormulaFidelity::Standard;
}

std::string run_line(const LineArgs& a) {
  const MicrostripLine line{{a.eps_r, a.tan_delta, a.height_mm}, a.width_mm, a.length_mm};
  const LineParams p = analyze(line, fidelity_of(a.fidelity));
  if (a.json) {
    Json j = header("line");
    j["input"] = line;
    j["fidelity"] = a.fidelity;
    j["result"] = p;
    return dump(j);
  }
  return row("eps_eff", fixed(p.eps_eff, 6)) + row("z0_ohm", fixed(p.z0_ohm, 6)) +
         row("inductance_nH", fixed(p.inductance_nH, 6)) + row("fidelity", a.fidelity);
}

struct ResonateArgs : Common {
  std::string netlist;
  std::string span = "0.5:2.0";
  int points = 2001;
  std::string method = "reactance";
  double z_ref = 50.0;
  double threshold_db = -10.0;
  std::string fidelity = "standard";
};

std::string run_resonate(const ResonateArgs& a) {
  const Band span = parse_range(a.span, "--span");
  const Element net = parse_netlist(read_file(a.netlist));
  ResonanceOptions opt;
  opt.z_ref_ohm = a.z_ref;
  opt.threshold_dB = a.threshold_db;
  opt.fidelity = fidelity_of(a.fidelity);
  const auto method = a.method == "dip" ? ResonanceMethod::ReflectionDip : ResonanceMethod::ReactanceZero;
  const ResonanceReport r = find_resonances(net, span.lo_GHz, span.hi_GHz, a.points, method, opt);
  if (a.json) {
    Json j = header("resonate");
    j["span_GHz"] = Band{span.lo_GHz, span.hi_GHz};
    j["result"] = r;
    return dump(j);
  }
  std::string s = "method " + a.method + ", reference " + fixed(r.reference_ohm, 1) + " ohm\n";
  for (std::size_t i = 0; i < r.frequencies_GHz.size(); ++i) {
    s += "resonance " + std::to_string(i + 1) + "  " + fixed(r.frequencies_GHz[i], 6) + " GHz\n";
  }
  return s;
}

struct JcasaArgs : Common {
  std::string params;
  std::string state = "00";
  std::string span = "0.5:2.0";
  int points = 1501;
  double threshold_db = -10.0;
  std::string plot;
  std::string exported;
};

std::string run_jcasa(const JcasaArgs& a) {
  const Band span = parse_range(a.span, "--span");
  if (a.points < 16) throw UsageError("--points must be at least 16");
  const ModeState mode = parse_state(a.state);
  const JcasaParams params = parse_jcasa_params(read_file(a.params));
  const Element net = build_jcasa_model(params, mode.d2, mode.d1);
  const FrequencySweep sweep = sweep_from_network(net, span.lo_GHz, span.hi_GHz, a.points);
  const DipReport dips = detect_dips(sweep, a.threshold_db);

  if (!a.plot.empty()) {
    write_file(a.plot, render_svg({trace_of("state " + mode.state_code(), sweep, &dips)}, a.threshold_db));
  }
  if (!a.exported.empty()) write_file(a.exported, write_touchstone(sweep));

  if (a.json) {
    Json j = header("jcasa");
    j["mode"] = mode;
    j["result"] = dips;
    return dump(j);
  }
  std::string s = "state " + mode.state_code() + "  mode " + std::to_string(mode.mode_index) + "  " +
                  mode.application + "\n";
  for (std::size_t i = 0; i < dips.dips.size(); ++i) s += dip_line(i, dips.dips[i]);
  return s;
}

struct AnalyzeArgs : Common {
  std::vector<std::string> inputs;
  double threshold_db = -10.0;
  double repeatability_mhz = 10.0;
  std::string plot;
};

struct Analysed {
  FrequencySweep sweep;
  DipReport dips;
};

std::string run_analyze(const AnalyzeArgs& a) {
  const auto results = parallel_over<Analysed>(a.inputs, [&](const std::string& path) {
    FrequencySweep s = load_sweep(path);
    DipReport d = detect_dips(s, a.threshold_db);
    return Analysed{std::move(s), std::move(d)};
  });

  std::vector<std::vector<RepeatabilityEntry>> repeats;
  for (std::size_t i = 1; i < results.size(); ++i) {
    repeats.push_back(compare_repeatability(results[0].dips, results[i].dips, a.repeatability_mhz));
  }

  if (!a.plot.empty()) {
    std::vector<PlotTrace> traces;
    for (std::size_t i = 0; i < results.size(); ++i) {
      traces.push_back(trace_of(a.inputs[i], results[i].sweep, &results[i].dips));
    }
    write_file(a.plot, render_svg(traces, a.threshold_db));
  }

  if (a.json) {
    Json j = header("analyze");
    j["threshold_dB"] = a.threshold_db;
    j["repeatability_MHz"] = a.repeatability_mhz;
    Json files = Json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      files.push_back(Json{{"path", a.inputs[i]},
                           {"format", to_string(results[i].sweep.source_format)},
                           {"points", results[i].sweep.points.size()},
                           {"result", results[i].dips}});
    }
    j["files"] = files;
    Json rep = Json::array();
    for (std::size_t i = 0; i < repeats.size(); ++i) {
      rep.push_back(Json{{"reference", a.inputs[0]}, {"repeat", a.inputs[i + 1]}, {"entries", repeats[i]}});
    }
    j["repeatability"] = rep;
    return dump(j);
  }

  std::string s;
  for (std::size_t i = 0; i < results.size(); ++i) {
    s += a.inputs[i] + "  (" + std::string(to_string(results[i].sweep.source_format)) + ", " +
         std::to_string(results[i].sweep.points.size()) + " points)\n";
    for (std::size_t k = 0; k < results[i].dips.dips.size(); ++k) s += "  " + dip_line(k, results[i].dips.dips[k]);
  }
  for (std::size_t i = 0; i < repeats.size(); ++i) {
    for (const auto& e : repeats[i]) {
      if (!e.exceeds) continue;
      s += "warning: " + a.inputs[i + 1] + " dip near " + fixed(e.f_reference_GHz, 6) + " GHz moved " +
           fixed(e.difference_MHz, 3) + " MHz (limit " + fixed(a.repeatability_mhz, 3) + " MHz)\n";
    }
  }
  return s;
}

struct CalibrateArgs : Common {
  std::string points;
  double fu_ghz = 0.96;
  std::string out;
};

std::string run_calibrate(const CalibrateArgs& a) {
  const CalibrationModel m = fit_linear(parse_calibration_points(read_file(a.points)), a.fu_ghz);
  if (!a.out.empty()) write_file(a.out, model_to_json_text(m));
  if (a.json) {
    Json j = header("calibrate");
    j["model"] = m;
    return dump(j);
  }
  std::string s = row("f_u_GHz", fixed(m.f_u_GHz, 6)) + row("slope", fixed(m.slope, 6)) +
                  row("intercept", fixed(m.intercept, 6)) + row("fit_residual", fixed(m.fit_residual, 6));
  if (!a.out.empty()) s += "model written to " + a.out + "\n";
  return s;
}

CalibrationModel load_model(const std::string& path, std::optional<double> fu_override) {
  CalibrationModel m = path.empty() ? default_calibration_model() : model_from_json_text(read_file(path));
  if (fu_override) m.f_u_GHz = *fu_override;
  m.validate();
  return m;
}

SoilTable load_table(const std::string& path) {
  return path.empty() ? default_soil_table() : parse_soil_table(read_file(path));
}

std::string estimate_rows(const Estimate& e) {
  return row("delta_f_GHz", fixed(e.delta_f_GHz, 6)) + row("eps_r_real", fixed(e.eps_r_real, 4)) +
         row("vwc_percent", fixed(e.vwc_percent, 3)) + row("extrapolated", e.extrapolated ? "yes" : "no");
}

struct EstimateArgs : Common {
  std::string model;
  double fm_ghz = 0.0;
  std::optional<double> fu_ghz;
  std::string soil_table;
};

std::string run_estimate(const EstimateArgs& a) {
  const CalibrationModel m = load_model(a.model, a.fu_ghz);
  const Estimate e = estimate(a.fm_ghz, m, load_table(a.soil_table));
  if (a.json) {
    Json j = header("estimate");
    j["model"] = m;
    j["result"] = e;
    return dump(j);
  }
  return estimate_rows(e);
}

struct SensitivityArgs : Common {
  std::string readings;
  double fu_ghz = 0.96;
  std::optional<double> target_percent;
  std::optional<double> delta_eps;
};

std::string run_sensitivity(const SensitivityArgs& a) {
  if (a.readings.empty() && !a.target_percent) {
    throw UsageError("sensitivity needs --readings or --target-percent with --delta-eps");
  }
  if (a.target_percent.has_value() != a.delta_eps.has_value()) {
    throw UsageError("--target-percent and --delta-eps go together");
  }
  std::vector<double> profile;
  if (!a.readings.empty()) profile = sensitivity_profile(parse_readings(read_file(a.readings)), a.fu_ghz);
  std::optional<double> shift;
  if (a.target_percent) shift = shift_for_sensitivity(*a.target_percent, a.fu_ghz, *a.delta_eps);

  if (a.json) {
    Json j = header("sensitivity");
    j["f_u_GHz"] = a.fu_ghz;
    j["steps_percent"] = profile;
    j["at_max_percent"] = profile.empty() ? Json(nullptr) : Json(profile.back());
    j["required_shift_GHz"] = shift ? Json(*shift) : Json(nullptr);
    return dump(j);
  }
  std::string s;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    s += row("step " + std::to_string(i + 1), fixed(profile[i], 4) + " %");
  }
  if (!profile.empty()) s += row("at max eps_r", fixed(profile.back(), 4) + " %");
  if (shift) s += row("required shift", fixed(*shift, 6) + " GHz");
  return s;
}

struct ModeArgs : Common {
  std::string state;
  std::string classify;
  bool table = false;
  double threshold_db = -10.0;
  std::string low_window = "0.80:1.00";
  std::string high_window = "1.30:1.60";
};

std::string mode_text(const ModeState& m) {
  std::string s = row("state", m.state_code()) + row("mode", std::to_string(m.mode_index)) +
                  row("application", m.application);
  for (std::size_t i = 0; i < m.bands.size(); ++i) {
    s += row("band " + std::to_string(i + 1), range_text(m.bands[i]) + " GHz");
  }
  std::string services;
  for (Service v : m.services) services += (services.empty() ? "" : ", ") + std::string(to_string(v));
  return s + row("services", services);
}

std::string run_mode(const ModeArgs& a) {
  if (a.table) {
    if (a.json) {
      Json j = header("mode");
      j["modes"] = all_modes();
      return dump(j);
    }
    return format_mode_table();
  }
  if (a.state.empty()) throw UsageError("mode needs --state or --table");
  const ClassifyWindows windows{parse_range(a.low_window, "--low-window"),
                                parse_range(a.high_window, "--high-window")};
  const ModeState m = parse_state(a.state);
  std::optional<std::vector<ClassifiedDip>> labels;
  if (!a.classify.empty()) {
    FrequencySweep sweep;
    try {
      sweep = load_sweep(a.classify);
      labels = classify_dips(m, detect_dips(sweep, a.threshold_db), windows);
    } catch (const Error& e) {
      throw FileError{a.classify, e};
    }
  }
  if (a.json) {
    Json j = header("mode");
    j["mode"] = m;
    if (labels) j["classified"] = *labels;
    return dump(j);
  }
  std::string s = mode_text(m);
  if (labels) {
    for (const auto& d : *labels) s += row("dip " + fixed(d.f0_GHz, 6), std::string(to_string(d.role)));
  }
  return s;
}

struct SenseArgs : Common {
  std::vector<std::string> inputs;
  std::vector<std::string> repeats;
  std::string model;
  std::string soil_table;
  std::string state = "00";
  std::optional<double> fu_ghz;
  double threshold_db = -10.0;
  double repeatability_mhz = 10.0;
  std::string low_window = "0.80:1.00";
  std::string high_window = "1.30:1.60";
};

struct Sensed {
  Dip dip;
  std::vector<ClassifiedDip> labels;
  Estimate estimate;
  std::optional<RepeatabilityEntry> repeat;
};

Dip sensing_dip(const ModeState& mode, const DipReport& dips, const ClassifyWindows& windows) {
  const auto labels = classify_dips(mode, dips, windows);
  std::optional<Dip> best;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].role != DipRole::Sensing) continue;
    if (!best || dips.dips[i].depth_dB < best->depth_dB) best = dips.dips[i];
  }
  if (!best) throw Error(ErrorCode::NoDipFound, "no dip inside the sensing window");
  return *best;
}

std::string run_sense(const SenseArgs& a) {
  const ModeState mode = parse_state(a.state);
  const SensingDecision decision = guard_sensing(mode);
  if (!decision.permitted) throw Error(ErrorCode::SensingDenied, decision.reason);
  if (!a.repeats.empty() && a.repeats.size() != a.inputs.size()) {
    throw UsageError("--repeat needs one file per --input");
  }
  const ClassifyWindows windows{parse_range(a.low_window, "--low-window"),
                                parse_range(a.high_window, "--high-window")};
  const CalibrationModel model = load_model(a.model, a.fu_ghz);
  const SoilTable table = load_table(a.soil_table);

  const auto analyse = [&](const std::string& path) {
    const DipReport dips = detect_dips(load_sweep(path), a.threshold_db);
    return std::make_pair(dips, sensing_dip(mode, dips, windows));
  };
  std::vector<std::string> all = a.inputs;
  all.insert(all.end(), a.repeats.begin(), a.repeats.end());
  const auto analysed = parallel_over<std::pair<DipReport, Dip>>(all, analyse);

  std::vector<Sensed> results;
  for (std::size_t i = 0; i < a.inputs.size(); ++i) {
    Sensed s;
    s.dip = analysed[i].second;
    s.labels = classify_dips(mode, analysed[i].first, windows);
    s.estimate = estimate(s.dip.f0_GHz, model, table);
    if (!a.repeats.empty()) {
      const Dip& other = analysed[a.inputs.size() + i].second;
      s.repeat = compare_repeatability(DipReport{{s.dip}, a.threshold_db},
                                       DipReport{{other}, a.threshold_db}, a.repeatability_mhz)
                     .front();
    }
    results.push_back(std::move(s));
  }

  if (a.json) {
    Json j = header("sense");
    j["mode"] = mode;
    j["model"] = model;
    Json arr = Json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      Json item{{"path", a.inputs[i]}, {"dip", r.dip}, {"classified", r.labels}, {"estimate", r.estimate}};
      if (r.repeat) {
        item["repeat_path"] = a.repeats[i];
        item["repeatability"] = *r.repeat;
        item["repeatability_warning"] = r.repeat->exceeds;
      }
      arr.push_back(item);
    }
    j["results"] = arr;
    return dump(j);
  }
  std::string s;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    s += row("input", a.inputs[i]) + row("f0_GHz", fixed(r.dip.f0_GHz, 6)) + estimate_rows(r.estimate);
    if (r.repeat) {
      s += row("repeat_f0_GHz", fixed(r.repeat->f_repeat_GHz, 6));
      if (r.repeat->exceeds) {
        s += "warning: repeat measurement differs by " + fixed(r.repeat->difference_MHz, 3) +
             " MHz (limit " + fixed(a.repeatability_mhz, 3) + " MHz)\n";
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

const char* kNonPaper = " [non-paper default]";

void add_json(CLI::App* sub, Common& c) { sub->add_flag("--json", c.json, "Emit one JSON object"); }

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivalent-circuit modelling, S11 analysis and FDR soil sensing", "fdrsense"};
  app.set_version_flag("--version", FDRSENSE_VERSION);
  app.require_subcommand(1);

  const char* env = std::getenv(kConfigEnv);
  const std::string config_path = env ? env : "";
  app.set_config("--config", config_path,
                 "INI/TOML defaults; flags override it (default: $FDR_SENSE_CONFIG)",
                 !config_path.empty());

  LineArgs la;
  auto* line = app.add_subcommand("line", "Microstrip eps_eff, Z0 and inductance");
  line->add_option("--width-mm", la.width_mm, "Conductor width W")->capture_default_str()->check(CLI::PositiveNumber);
  line->add_option("--height-mm", la.height_mm, "Substrate height h")->capture_default_str()->check(CLI::PositiveNumber);
  line->add_option("--eps-r", la.eps_r, "Substrate relative permittivity")->capture_default_str()->check(CLI::Range(1.0, 1e6));
  line->add_option("--tan-delta", la.tan_delta, "Loss tangent (not used by the lossless model)")->capture_default_str()->check(CLI::NonNegativeNumber);
  line->add_option("--length-mm", la.length_mm, "Physical length l")->capture_default_str()->check(CLI::NonNegativeNumber);
  line->add_option("--fidelity", la.fidelity, "Impedance formula variant")->capture_default_str()->check(CLI::IsMember({"standard", "paper-literal"}));
  add_json(line, la);

  ResonateArgs ra;
  auto* resonate = app.add_subcommand("resonate", "Resonances of a text netlist");
  resonate->add_option("--netlist", ra.netlist, "Netlist file")->required();
  resonate->add_option("--span", ra.span, std::string("Scan range lo:hi in GHz") + kNonPaper)->capture_default_str();
  resonate->add_option("--points", ra.points, std::string("Grid points") + kNonPaper)->capture_default_str()->check(CLI::Range(16, 10000000));
  resonate->add_option("--method", ra.method, "reactance (Im Z zero) or dip (|S11| minimum)")->capture_default_str()->check(CLI::IsMember({"reactance", "dip"}));
  resonate->add_option("--z-ref", ra.z_ref, "Reference impedance in ohms")->capture_default_str()->check(CLI::PositiveNumber);
  resonate->add_option("--threshold-db", ra.threshold_db, "Dip threshold for --method dip")->capture_default_str();
  resonate->add_option("--fidelity", ra.fidelity, "Line impedance formula variant")->capture_default_str()->check(CLI::IsMember({"standard", "paper-literal"}));
  add_json(resonate, ra);

  JcasaArgs ja;
  auto* jcasa = app.add_subcommand("jcasa", "Reflection dips of the antenna model for one diode state");
  jcasa->add_option("--params", ja.params, "key=value parameter file")->required();
  jcasa->add_option("--state", ja.state, "Diode state D2D1")->capture_default_str()->check(CLI::IsMember({"00", "01", "10", "11"}));
  jcasa->add_option("--span", ja.span, std::string("Scan range lo:hi in GHz") + kNonPaper)->capture_default_str();
  jcasa->add_option("--points", ja.points, std::string("Grid points") + kNonPaper)->capture_default_str();
  jcasa->add_option("--threshold-db", ja.threshold_db, "Dip threshold")->capture_default_str();
  jcasa->add_option("--plot", ja.plot, "Write an SVG of the modelled S11");
  jcasa->add_option("--export", ja.exported, "Write the modelled sweep as Touchstone");
  add_json(jcasa, ja);

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "Detect dips and bands in measured sweeps");
  analyze_cmd->add_option("--input", aa.inputs, "Touchstone .s1p or CSV files")->required();
  analyze_cmd->add_option("--threshold-db", aa.threshold_db, "Dip threshold")->capture_default_str();
  analyze_cmd->add_option("--repeatability-mhz", aa.repeatability_mhz, "Flag later inputs whose dips move more than this from the first")->capture_default_str()->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--plot", aa.plot, "Write an SVG of all traces");
  add_json(analyze_cmd, aa);

  CalibrateArgs ca;
  auto* calibrate = app.add_subcommand("calibrate", "Fit eps_r against frequency shift");
  calibrate->add_option("--points", ca.points, "CSV delta_f_ghz,eps_r")->required();
  calibrate->add_option("--fu-ghz", ca.fu_ghz, "Unloaded resonance, centre of the sensing band")->capture_default_str()->check(CLI::PositiveNumber);
  calibrate->add_option("--out", ca.out, "Write the model as JSON");
  add_json(calibrate, ca);

  EstimateArgs ea;
  auto* estimate_cmd = app.add_subcommand("estimate", "Permittivity and VWC from a loaded resonance");
  estimate_cmd->add_option("--model", ea.model, std::string("Model JSON (default: two-point endpoint fit)") + kNonPaper);
  estimate_cmd->add_option("--fm-ghz", ea.fm_ghz, "Measured loaded resonance")->required();
  estimate_cmd->add_option("--fu-ghz", ea.fu_ghz, "Override the model's unloaded resonance");
  estimate_cmd->add_option("--soil-table", ea.soil_table, "CSV vwc_percent,eps_r (default: built-in soil table)");
  add_json(estimate_cmd, ea);

  SensitivityArgs sa;
  auto* sensitivity_cmd = app.add_subcommand("sensitivity", "Per-step sensitivity in percent");
  sensitivity_cmd->add_option("--readings", sa.readings, "CSV f_ghz,eps_r");
  sensitivity_cmd->add_option("--fu-ghz", sa.fu_ghz, "Unloaded resonance")->capture_default_str()->check(CLI::PositiveNumber);
  sensitivity_cmd->add_option("--target-percent", sa.target_percent, "Solve for the shift giving this sensitivity");
  sensitivity_cmd->add_option("--delta-eps", sa.delta_eps, "Permittivity step for --target-percent");
  add_json(sensitivity_cmd, sa);

  ModeArgs ma;
  auto* mode_cmd = app.add_subcommand("mode", "Diode state to operating mode");
  mode_cmd->add_option("--state", ma.state, "Diode state D2D1")->check(CLI::IsMember({"00", "01", "10", "11"}));
  mode_cmd->add_flag("--table", ma.table, "Print the full mode table");
  mode_cmd->add_option("--classify", ma.classify, "Label the dips of a sweep file");
  mode_cmd->add_option("--threshold-db", ma.threshold_db, "Dip threshold")->capture_default_str();
  mode_cmd->add_option("--low-window", ma.low_window, std::string("Loaded window of band 1, lo:hi GHz") + kNonPaper)->capture_default_str();
  mode_cmd->add_option("--high-window", ma.high_window, std::string("Loaded window of band 2, lo:hi GHz") + kNonPaper)->capture_default_str();
  add_json(mode_cmd, ma);

  SenseArgs na;
  auto* sense = app.add_subcommand("sense", "Sweep to VWC: detect, classify, estimate");
  sense->add_option("--input", na.inputs, "Sweep files, one estimate each")->required();
  sense->add_option("--repeat", na.repeats, "Repeat measurements, one per --input");
  sense->add_option("--model", na.model, std::string("Model JSON (default: two-point endpoint fit)") + kNonPaper);
  sense->add_option("--soil-table", na.soil_table, "CSV vwc_percent,eps_r (default: built-in soil table)");
  sense->add_option("--state", na.state, "Diode state D2D1")->capture_default_str()->check(CLI::IsMember({"00", "01", "10", "11"}));
  sense->add_option("--fu-ghz", na.fu_ghz, "Override the model's unloaded resonance");
  sense->add_option("--threshold-db", na.threshold_db, "Dip threshold")->capture_default_str();
  sense->add_option("--repeatability-mhz", na.repeatability_mhz, "Repeat tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
  sense->add_option("--low-window", na.low_window, std::string("Loaded window of band 1, lo:hi GHz") + kNonPaper)->capture_default_str();
  sense->add_option("--high-window", na.high_window, std::string("Loaded window of band 2, lo:hi GHz") + kNonPaper)->capture_default_str();
  add_json(sense, na);

  std::vector<const char*> argv{"fdrsense"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << FDRSENSE_VERSION << "\n";
    return 0;
  } catch (const CLI::FileError& e) {
    err << "error: config file: " << e.what() << "\n";
    return 1;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << " (see --help)\n";
    return 2;
  }

  try {
    std::string result;
    if (*line) result = run_line(la);
    else if (*resonate) result = run_resonate(ra);
    else if (*jcasa) result = run_jcasa(ja);
    else if (*analyze_cmd) result = run_analyze(aa);
    else if (*calibrate) result = run_calibrate(ca);
    else if (*estimate_cmd) result = run_estimate(ea);
    else if (*sensitivity_cmd) result = run_sensitivity(sa);
    else if (*mode_cmd) result = run_mode(ma);
    else if (*sense) result = run_sense(na);
    out << result;
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << " (see --help)\n";
    return 2;
  } catch (const FileError& e) {
    err << "error: " << e.path << ": " << e.error.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fdrsense::cli
