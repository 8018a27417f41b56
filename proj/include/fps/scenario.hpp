#pragma once

// Scenario files and built-in presets.
//
// A scenario is a flat set of dotted keys, e.g. fiber.gamma_per_W_km. It can
// be written as JSON (nested sections or dotted keys) or as plain
// `key = value` lines with `#` comments and comma-separated lists.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fps/fiber_model.hpp"
#include "fps/spectrum.hpp"

namespace fps {

enum class MethodSelection { FirstOrder, ExactOde, ClosedForm, All };

std::string_view to_string(MethodSelection m);
MethodSelection parse_method(std::string_view s);

struct Scenario {
  std::string source;
  FiberParams fiber;
  PumpConfig pump;
  FrequencyGrid grid{-1.0, 1.0, 2};
  Regime regime = Regime::HB;
  std::vector<double> lengths;
  MethodSelection method = MethodSelection::FirstOrder;
  bool axes_swapped = false;  ///< input had delta_beta1 < 0 and was relabeled
};

/// Raw key/value entries with the line they came from (0 when unknown).
struct RawEntry {
  std::string value;
  int line = 0;
};
using RawScenario = std::map<std::string, RawEntry>;

/// Parses JSON or key = value text. Throws InvalidInput with line/field context.
RawScenario parse_raw(std::string_view text, std::string_view source);

/// Validates and resolves raw entries; later maps override earlier ones.
Scenario resolve(const std::vector<RawScenario>& layers, std::string_view source);

Scenario parse_scenario(std::string_view text, std::string_view source = "<input>");
std::string read_file(const std::string& path);

std::vector<std::string> preset_names();
/// Preset as key = value text; throws InvalidInput for unknown names.
std::string preset_text(std::string_view name);
Scenario preset(std::string_view name);

/// Every canonical key with units, in a fixed order.
const std::vector<std::string>& scenario_keys();

/// Resolved scenario as ordered (key, value) pairs, values in 9 significant digits.
std::vector<std::pair<std::string, std::string>> describe(const Scenario& s);

}  // namespace fps
