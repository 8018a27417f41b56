// fps: photon-pair spectra, method comparison, entanglement classification and
// modulational-instability gain for birefringent fibers.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fps/errors.hpp"
#include "fps/runner.hpp"
#include "fps/scenario.hpp"

namespace {

struct CommonArgs {
  std::string scenario_path;
  std::string preset_name;
  std::string out_path;
  std::string method;
  int steps = 0;
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_method) {
  cmd->add_option("--scenario", a.scenario_path, "Scenario file (JSON or key = value)");
  cmd->add_option("--preset", a.preset_name, "Named preset used as the base layer");
  cmd->add_option("--out", a.out_path, "Output file (default: stdout)");
  if (with_method) {
    cmd->add_option("--method", a.method, "first-order | exact-ode | closed-form | all");
  }
  cmd->add_option("--steps", a.steps, "RK4 steps for exact-ode (default: automatic)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", a.threads, "Worker threads")->check(CLI::Range(1u, 256u));
}

fps::Scenario load(const CommonArgs& a) {
  if (a.scenario_path.empty() && a.preset_name.empty()) {
    throw fps::InvalidInput("one of --scenario or --preset is required");
  }
  std::vector<fps::RawScenario> layers;
  std::string source;
  if (!a.preset_name.empty()) {
    layers.push_back(fps::parse_raw(fps::preset_text(a.preset_name), "preset:" + a.preset_name));
    source = "preset:" + a.preset_name;
  }
  if (!a.scenario_path.empty()) {
    layers.push_back(fps::parse_raw(fps::read_file(a.scenario_path), a.scenario_path));
    source = source.empty() ? a.scenario_path : source + "+" + a.scenario_path;
  }
  return fps::resolve(layers, source);
}

fps::RunOptions options(const CommonArgs& a) {
  fps::RunOptions o;
  o.threads = a.threads;
  if (a.steps > 0) o.steps = a.steps;
  if (!a.method.empty()) o.method = fps::parse_method(a.method);
  return o;
}

fps::Method single_method(const std::string& s) {
  const auto m = fps::parse_method(s);
  switch (m) {
    case fps::MethodSelection::FirstOrder: return fps::Method::FirstOrder;
    case fps::MethodSelection::ExactOde: return fps::Method::ExactOde;
    case fps::MethodSelection::ClosedForm: return fps::Method::ClosedForm;
    case fps::MethodSelection::All: break;
  }
  throw fps::InvalidInput("compare needs a single method, not 'all'");
}

// Writes to --out when given, otherwise stdout. The file is written only
// after the computation succeeded.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw fps::InvalidInput("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw fps::InvalidInput("failed writing output file '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-pair generation in birefringent fibers"};
  app.require_subcommand(1);

  CommonArgs spectrum_args, compare_args, classify_args, mi_args;
  std::string test_method = "first-order";
  std::string reference_method;
  double omega = 0.0;
  double duration = 0.0;

  auto* spectrum = app.add_subcommand("spectrum", "Flux spectra f_x, f_y per length and method");
  add_common(spectrum, spectrum_args, true);

  auto* compare = app.add_subcommand("compare", "Peak-normalized deviation between two methods");
  add_common(compare, compare_args, false);
  compare->add_option("--method,--test", test_method, "Method under test")
      ->capture_default_str();
  compare->add_option("--reference", reference_method,
                      "Reference method (default: closed-form if available, else exact-ode)");

  auto* classify = app.add_subcommand("classify", "Polarization-entanglement classification");
  add_common(classify, classify_args, false);
  classify->add_option("--omega", omega, "Signal detuning, rad/ps (> 0)")->required();
  classify->add_option("--duration", duration,
                       "Detection window T, ps (default: pump.duration_ps)");

  auto* mi = app.add_subcommand("mi", "Modulational-instability gain curve");
  add_common(mi, mi_args, false);

  auto* presets = app.add_subcommand("presets", "List or print the built-in presets");
  std::string show;
  presets->add_option("name", show, "Preset to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? fps::kExitOk : fps::kExitInvalid;
  }

  try {
    if (*spectrum) {
      const auto s = load(spectrum_args);
      std::ostringstream out;
      fps::run_spectrum(s, options(spectrum_args), out);
      emit(spectrum_args.out_path, out.str());
    } else if (*compare) {
      const auto s = load(compare_args);
      std::optional<fps::Method> ref;
      if (!reference_method.empty()) ref = single_method(reference_method);
      const auto r = fps::run_compare(s, options(compare_args), single_method(test_method), ref);
      emit(compare_args.out_path, fps::to_json(r, s));
    } else if (*classify) {
      const auto s = load(classify_args);
      double t = duration;
      if (t == 0.0) {
        if (!s.pump.duration) throw fps::InvalidInput("classify needs --duration or pump.duration_ps");
        t = *s.pump.duration;
      }
      const auto r = fps::run_classify(s, omega, t);
      emit(classify_args.out_path, fps::to_json(r, s));
    } else if (*mi) {
      const auto s = load(mi_args);
      std::ostringstream out;
      fps::run_mi(s, options(mi_args), out);
      emit(mi_args.out_path, out.str());
    } else if (*presets) {
      if (show.empty()) {
        for (const auto& n : fps::preset_names()) std::cout << n << "\n";
      } else {
        std::cout << fps::preset_text(show);
      }
    }
  } catch (const fps::StepCountTooSmall& e) {
    std::cerr << "fps: numerical failure: " << e.what() << "\n";
    return fps::kExitNumerical;
  } catch (const fps::Error& e) {
    std::cerr << "fps: " << e.what() << "\n";
    return fps::kExitInvalid;
  }
  return fps::kExitOk;
}
