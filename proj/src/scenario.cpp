#include "fps/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "fps/errors.hpp"

namespace fps {

namespace {

const std::map<std::string, std::string, std::less<>> kPresets = {
    {"fig1a",
     "# scalar scattering, anomalous dispersion\n"
     "fiber.gamma_per_W_km = 3\n"
     "fiber.beta2_ps2_per_km = -20\n"
     "sweep.lengths_km = 0.1, 0.2, 0.3\n"
     "pump.p0x_W = 0.3\n"
     "grid.omega_min = -3.995\n"
     "grid.omega_max = 3.995\n"
     "grid.n_points = 800\n"
     "regime = HB\n"
     "method = all\n"},
    {"fig1b",
     "# scalar scattering, normal dispersion\n"
     "fiber.gamma_per_W_km = 3\n"
     "fiber.beta2_ps2_per_km = 20\n"
     "sweep.lengths_km = 0.1, 0.2, 0.3\n"
     "pump.p0x_W = 0.3\n"
     "grid.omega_min = -3.995\n"
     "grid.omega_max = 3.995\n"
     "grid.n_points = 800\n"
     "regime = HB\n"
     "method = all\n"},
    {"fig2",
     "# HB vector scattering, equal pump split, normal dispersion\n"
     "fiber.gamma_per_W_km = 3\n"
     "fiber.beta2_ps2_per_km = 15\n"
     "fiber.delta_beta1_ps_per_km = 200\n"
     "sweep.lengths_km = 0.1, 0.2, 0.3\n"
     "pump.p0x_W = 0.15\n"
     "pump.p0y_W = 0.15\n"
     "grid.omega_min = -19.995\n"
     "grid.omega_max = 19.995\n"
     "grid.n_points = 4000\n"
     "regime = HB\n"
     "method = first-order\n"},
    {"fig3",
     "# HB overlap regime (alpha = -1.25)\n"
     "fiber.gamma_per_W_km = 36\n"
     "fiber.beta2_ps2_per_km = -139\n"
     "fiber.delta_beta1_ps_per_km = 400\n"
     "sweep.lengths_km = 0.00015, 0.0003, 0.00045\n"
     "pump.p0x_W = 20\n"
     "pump.p0y_W = 20\n"
     "grid.omega_min = -39.98\n"
     "grid.omega_max = 39.98\n"
     "grid.n_points = 2000\n"
     "regime = HB\n"
     "method = exact-ode\n"},
    {"fig4a",
     "# LB, pump on the slow axis, normal dispersion\n"
     "fiber.gamma_per_W_km = 3\n"
     "fiber.beta2_ps2_per_km = 5\n"
     "fiber.delta_beta0_per_km = 2000\n"
     "sweep.lengths_km = 0.05, 0.1, 0.15\n"
     "pump.p0x_W = 1\n"
     "grid.omega_min = -39.995\n"
     "grid.omega_max = 39.995\n"
     "grid.n_points = 8000\n"
     "regime = LB\n"
     "method = first-order\n"},
    {"fig4b",
     "# LB, pump on the fast axis, anomalous dispersion\n"
     "fiber.gamma_per_W_km = 3\n"
     "fiber.beta2_ps2_per_km = -5\n"
     "fiber.delta_beta0_per_km = -2000\n"
     "sweep.lengths_km = 0.05, 0.1, 0.15\n"
     "pump.p0x_W = 1\n"
     "grid.omega_min = -39.995\n"
     "grid.omega_max = 39.995\n"
     "grid.n_points = 8000\n"
     "regime = LB\n"
     "method = first-order\n"},
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string where(std::string_view source, const std::string& key, const RawEntry& e) {
  if (e.line > 0) return fmt::format("{}:{}: field '{}'", source, e.line, key);
  return fmt::format("{}: field '{}'", source, key);
}

double to_double(std::string_view source, const std::string& key, const RawEntry& e) {
  const std::string v = trim(e.value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw InvalidInput(fmt::format("{}: expected a number, got '{}'", where(source, key, e), v));
  }
  return out;
}

void flatten(const nlohmann::json& j, const std::string& prefix, RawScenario& out,
             std::string_view source) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const auto& v = it.value();
    if (v.is_object()) {
      flatten(v, key, out, source);
    } else if (v.is_array()) {
      std::string joined;
      for (const auto& item : v) {
        if (!item.is_number()) {
          throw InvalidInput(fmt::format("{}: field '{}': list items must be numbers", source, key));
        }
        if (!joined.empty()) joined += ",";
        joined += fmt::format("{:.17g}", item.get<double>());
      }
      out[key] = {joined, 0};
    } else if (v.is_number_integer()) {
      out[key] = {std::to_string(v.get<long long>()), 0};
    } else if (v.is_number()) {
      out[key] = {fmt::format("{:.17g}", v.get<double>()), 0};
    } else if (v.is_string()) {
      out[key] = {v.get<std::string>(), 0};
    } else if (!v.is_null()) {
      throw InvalidInput(fmt::format("{}: field '{}': unsupported value type", source, key));
    }
  }
}

}  // namespace

std::string_view to_string(MethodSelection m) {
  switch (m) {
    case MethodSelection::FirstOrder: return "first-order";
    case MethodSelection::ExactOde: return "exact-ode";
    case MethodSelection::ClosedForm: return "closed-form";
    case MethodSelection::All: return "all";
  }
  return "?";
}

MethodSelection parse_method(std::string_view s) {
  if (s == "first-order") return MethodSelection::FirstOrder;
  if (s == "exact-ode") return MethodSelection::ExactOde;
  if (s == "closed-form") return MethodSelection::ClosedForm;
  if (s == "all") return MethodSelection::All;
  throw InvalidInput(fmt::format(
      "unknown method '{}' (expected first-order, exact-ode, closed-form or all)", s));
}

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = {
      "fiber.gamma_per_W_km",      "fiber.beta2_ps2_per_km",     "fiber.delta_beta0_per_km",
      "fiber.delta_beta1_ps_per_km", "fiber.beta1_ref_ps_per_km", "fiber.length_km",
      "sweep.lengths_km",          "pump.p0x_W",                 "pump.p0y_W",
      "pump.theta0x_rad",          "pump.theta0y_rad",           "pump.duration_ps",
      "grid.omega_min",            "grid.omega_max",             "grid.n_points",
      "regime",                    "method"};
  return keys;
}

RawScenario parse_raw(std::string_view text, std::string_view source) {
  RawScenario out;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      const auto upto = std::min<std::size_t>(e.byte, body.size());
      const int line = 1 + static_cast<int>(std::count(body.begin(), body.begin() + upto, '\n'));
      throw InvalidInput(fmt::format("{}:{}: invalid JSON: {}", source, line, e.what()));
    }
    flatten(j, "", out, source);
    return out;
  }

  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput(fmt::format("{}:{}: expected 'key = value'", source, n));
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw InvalidInput(fmt::format("{}:{}: empty key", source, n));
    out[key] = {trim(std::string_view(t).substr(eq + 1)), n};
  }
  return out;
}

Scenario resolve(const std::vector<RawScenario>& layers, std::string_view source) {
  RawScenario raw;
  for (const auto& layer : layers) {
    for (const auto& [k, v] : layer) raw[k] = v;
  }
  const auto& known = scenario_keys();
  for (const auto& [k, v] : raw) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw InvalidInput(fmt::format("{}: unknown key", where(source, k, v)));
    }
  }

  auto number = [&](const std::string& key) -> std::optional<double> {
    auto it = raw.find(key);
    if (it == raw.end()) return std::nullopt;
    return to_double(source, key, it->second);
  };
  auto required = [&](const std::string& key) {
    auto v = number(key);
    if (!v) throw InvalidInput(fmt::format("{}: missing required field '{}'", source, key));
    return *v;
  };
  auto fail = [&](const std::string& key, std::string_view msg) {
    auto it = raw.find(key);
    const RawEntry e = it == raw.end() ? RawEntry{} : it->second;
    throw InvalidInput(fmt::format("{}: {}", where(source, key, e), msg));
  };

  Scenario s;
  s.source = std::string(source);
  s.fiber.gamma = required("fiber.gamma_per_W_km");
  s.fiber.beta2 = required("fiber.beta2_ps2_per_km");
  s.fiber.delta_beta0 = number("fiber.delta_beta0_per_km").value_or(0.0);
  s.fiber.delta_beta1 = number("fiber.delta_beta1_ps_per_km").value_or(0.0);
  s.fiber.beta1_ref = number("fiber.beta1_ref_ps_per_km").value_or(0.0);
  if (!(s.fiber.gamma > 0.0)) fail("fiber.gamma_per_W_km", "must be > 0");

  if (auto it = raw.find("sweep.lengths_km"); it != raw.end()) {
    std::stringstream ss(it->second.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      s.lengths.push_back(to_double(source, "sweep.lengths_km", RawEntry{item, it->second.line}));
    }
  }
  if (auto l = number("fiber.length_km")) {
    if (s.lengths.empty()) s.lengths.push_back(*l);
    s.fiber.length = *l;
  } else if (!s.lengths.empty()) {
    s.fiber.length = s.lengths.front();
  } else {
    throw InvalidInput(fmt::format("{}: missing required field 'fiber.length_km'", source));
  }
  for (double l : s.lengths) {
    if (!(l > 0.0)) fail(raw.count("sweep.lengths_km") ? "sweep.lengths_km" : "fiber.length_km", "lengths must be > 0");
  }
  if (!(s.fiber.length > 0.0)) fail("fiber.length_km", "must be > 0");

  s.pump.p0x = number("pump.p0x_W").value_or(0.0);
  s.pump.p0y = number("pump.p0y_W").value_or(0.0);
  s.pump.theta0x = number("pump.theta0x_rad").value_or(0.0);
  s.pump.theta0y = number("pump.theta0y_rad").value_or(0.0);
  if (auto t = number("pump.duration_ps")) {
    if (!(*t > 0.0)) fail("pump.duration_ps", "must be > 0");
    s.pump.duration = *t;
  }
  if (s.pump.p0x < 0.0) fail("pump.p0x_W", "must be >= 0");
  if (s.pump.p0y < 0.0) fail("pump.p0y_W", "must be >= 0");
  if (!(s.pump.total_power() > 0.0)) fail("pump.p0x_W", "total pump power must be > 0");

  const double wmin = required("grid.omega_min");
  const double wmax = required("grid.omega_max");
  const double npts = required("grid.n_points");
  if (npts != std::floor(npts) || npts < 2.0) fail("grid.n_points", "must be an integer >= 2");
  if (!(wmax > wmin)) fail("grid.omega_max", "must exceed grid.omega_min");
  s.grid = FrequencyGrid(wmin, wmax, static_cast<std::size_t>(npts));

  if (auto it = raw.find("regime"); it != raw.end()) {
    std::string r = trim(it->second.value);
    std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return std::toupper(c); });
    if (r == "HB") {
      s.regime = Regime::HB;
    } else if (r == "LB") {
      s.regime = Regime::LB;
    } else {
      fail("regime", "must be HB or LB");
    }
  }
  if (s.regime == Regime::LB && s.pump.p0x > 0.0 && s.pump.p0y > 0.0) {
    fail("pump.p0y_W", "LB regime requires the pump on a single axis");
  }
  if (auto it = raw.find("method"); it != raw.end()) {
    try {
      s.method = parse_method(trim(it->second.value));
    } catch (const InvalidInput& e) {
      fail("method", e.what());
    }
  }

  if (s.regime == Regime::HB) s.axes_swapped = normalize_axes(s.fiber, s.pump);
  return s;
}

Scenario parse_scenario(std::string_view text, std::string_view source) {
  return resolve({parse_raw(text, source)}, source);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(fmt::format("cannot open scenario file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : kPresets) names.push_back(k);
  return names;
}

std::string preset_text(std::string_view name) {
  auto it = kPresets.find(name);
  if (it == kPresets.end()) throw InvalidInput(fmt::format("unknown preset '{}'", name));
  return it->second;
}

Scenario preset(std::string_view name) {
  return parse_scenario(preset_text(name), fmt::format("preset:{}", name));
}

std::vector<std::pair<std::string, std::string>> describe(const Scenario& s) {
  auto num = [](double v) { return fmt::format("{:.9g}", v); };
  std::string lengths;
  for (double l : s.lengths) {
    if (!lengths.empty()) lengths += ", ";
    lengths += num(l);
  }
  std::vector<std::pair<std::string, std::string>> out = {
      {"fiber.gamma_per_W_km", num(s.fiber.gamma)},
      {"fiber.beta2_ps2_per_km", num(s.fiber.beta2)},
      {"fiber.delta_beta0_per_km", num(s.fiber.delta_beta0)},
      {"fiber.delta_beta1_ps_per_km", num(s.fiber.delta_beta1)},
      {"fiber.beta1_ref_ps_per_km", num(s.fiber.beta1_ref)},
      {"fiber.length_km", num(s.fiber.length)},
      {"sweep.lengths_km", lengths},
      {"pump.p0x_W", num(s.pump.p0x)},
      {"pump.p0y_W", num(s.pump.p0y)},
      {"pump.theta0x_rad", num(s.pump.theta0x)},
      {"pump.theta0y_rad", num(s.pump.theta0y)},
  };
  out.emplace_back("pump.duration_ps", s.pump.duration ? num(*s.pump.duration) : "none");
  out.emplace_back("grid.omega_min", num(s.grid.omega_min()));
  out.emplace_back("grid.omega_max", num(s.grid.omega_max()));
  out.emplace_back("grid.n_points", std::to_string(s.grid.size()));
  out.emplace_back("regime", std::string(to_string(s.regime)));
  out.emplace_back("method", std::string(to_string(s.method)));
  return out;
}

}  // namespace fps
