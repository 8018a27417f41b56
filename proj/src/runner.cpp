#include "fps/runner.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "json.hpp"

#include "fps/errors.hpp"
#include "fps/exact_dynamics.hpp"

namespace fps {

namespace {

void write_header(std::ostream& out, const Scenario& s, std::string_view command) {
  out << "# fps " << command << "\n";
  out << "# source = " << s.source << "\n";
  for (const auto& [k, v] : describe(s)) out << "# " << k << " = " << v << "\n";
  if (s.axes_swapped) out << "# axes_swapped = true (input delta_beta1 < 0; x is the slow axis)\n";
}

nlohmann::ordered_json scenario_json(const Scenario& s) {
  nlohmann::ordered_json j;
  j["source"] = s.source;
  for (const auto& [k, v] : describe(s)) j[k] = v;
  j["axes_swapped"] = s.axes_swapped;
  return j;
}

double scalar_axis_power(const PumpConfig& p) {
  if (p.p0x > 0.0 && p.p0y > 0.0) {
    throw PumpNotOnAxis("mi requires the pump on a single axis");
  }
  return p.p0x + p.p0y;
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.9g}", v); }

std::vector<Method> expand_methods(MethodSelection sel, const Scenario& s) {
  switch (sel) {
    case MethodSelection::FirstOrder: return {Method::FirstOrder};
    case MethodSelection::ExactOde: return {Method::ExactOde};
    case MethodSelection::ClosedForm:
      if (!has_closed_form(s.pump, s.regime)) {
        throw InvalidInput("closed-form needs a single pumped axis in the HB regime");
      }
      return {Method::ClosedForm};
    case MethodSelection::All: {
      std::vector<Method> m{Method::FirstOrder, Method::ExactOde};
      if (has_closed_form(s.pump, s.regime)) m.push_back(Method::ClosedForm);
      return m;
    }
  }
  return {};
}

void run_spectrum(const Scenario& s, const RunOptions& opt, std::ostream& out) {
  const auto methods = expand_methods(opt.method.value_or(s.method), s);
  write_header(out, s, "spectrum");
  out << "omega_rad_per_ps,f_x,f_y,method,L_km\n";
  for (double length : s.lengths) {
    const FiberParams fiber = s.fiber.with_length(length);
    for (Method m : methods) {
      const SpectrumRecord rec = compute_spectrum(fiber, s.pump, s.regime, m, s.grid, opt.threads,
                                                  opt.steps);
      const std::string tag(to_string(m));
      const std::string l = format_number(length);
      std::string block;
      for (std::size_t i = 0; i < rec.grid.size(); ++i) {
        block += fmt::format("{},{},{},{},{}\n", format_number(rec.grid[i]),
                             format_number(rec.f_x[i]), format_number(rec.f_y[i]), tag, l);
      }
      out << block;
    }
  }
}

ComparisonReport run_compare(const Scenario& s, const RunOptions& opt, Method test,
                             std::optional<Method> reference) {
  ComparisonReport r;
  r.test = test;
  r.reference = reference.value_or(has_closed_form(s.pump, s.regime) ? Method::ClosedForm
                                                                     : Method::ExactOde);
  SpectrumCache cache;
  const double p_max = std::max(s.pump.p0x, s.pump.p0y);
  for (double length : s.lengths) {
    const FiberParams fiber = s.fiber.with_length(length);
    const auto a = cache.get_or_compute(fiber, s.pump, s.regime, r.test, s.grid, opt.threads,
                                        opt.steps);
    const auto b = cache.get_or_compute(fiber, s.pump, s.regime, r.reference, s.grid,
                                        opt.threads, opt.steps);
    double peak = 0.0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) peak = std::max({peak, b->f_x[i], b->f_y[i]});
    LengthComparison row;
    row.length = length;
    row.length_over_lnl = length / nonlinear_length(fiber.gamma, p_max);
    double sum = 0.0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      const double d = std::max(std::abs(a->f_x[i] - b->f_x[i]), std::abs(a->f_y[i] - b->f_y[i]));
      const double rel = peak > 0.0 ? d / peak : d;
      row.max_deviation = std::max(row.max_deviation, rel);
      sum += rel;
    }
    row.mean_deviation = sum / static_cast<double>(s.grid.size());
    r.rows.push_back(row);
  }
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    if (!(r.rows[i].max_deviation > r.rows[i - 1].max_deviation)) r.monotone = false;
  }
  return r;
}

std::string to_json(const ComparisonReport& r, const Scenario& s) {
  nlohmann::ordered_json j;
  j["command"] = "compare";
  j["scenario"] = scenario_json(s);
  j["test_method"] = std::string(to_string(r.test));
  j["reference_method"] = std::string(to_string(r.reference));
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json e;
    e["L_km"] = row.length;
    e["L_over_Lnl"] = row.length_over_lnl;
    e["max_deviation"] = row.max_deviation;
    e["mean_deviation"] = row.mean_deviation;
    rows.push_back(e);
  }
  j["lengths"] = rows;
  j["monotone_in_L"] = r.monotone;
  return j.dump(2) + "\n";
}

ClassifyResult run_classify(const Scenario& s, double omega, double duration) {
  ClassifyResult r;
  r.state = filtered_state(s.fiber, s.pump, s.regime, omega, duration);
  r.report = classify(r.state);
  r.bell_phase = bell_phase(s.pump);
  return r;
}

std::string to_json(const ClassifyResult& r, const Scenario& s) {
  nlohmann::ordered_json j;
  j["command"] = "classify";
  j["scenario"] = scenario_json(s);
  j["omega_rad_per_ps"] = r.state.omega;
  j["mode_width_rad_per_ps"] = r.state.mode_width;
  j["generation_probability"] = r.state.generation_probability;
  const char* names[4] = {"xx", "yy", "xy", "yx"};
  nlohmann::ordered_json coeffs;
  for (int k = 0; k < 4; ++k) {
    coeffs[names[k]] = {r.state.coeffs[k].real(), r.state.coeffs[k].imag()};
  }
  j["coefficients_re_im"] = coeffs;
  j["classification"] = std::string(to_string(r.report.classification));
  j["concurrence"] = r.report.concurrence;
  if (r.report.relative_phase) {
    j["relative_phase_rad"] = *r.report.relative_phase;
  } else {
    j["relative_phase_rad"] = nullptr;
  }
  j["bell_phase_rad"] = r.bell_phase;
  return j.dump(2) + "\n";
}

void run_mi(const Scenario& s, const RunOptions& /*opt*/, std::ostream& out) {
  const double power = scalar_axis_power(s.pump);
  const GainCurve curve = mi_gain_curve(s.fiber, power, s.grid);
  write_header(out, s, "mi");
  const double gp = s.fiber.gamma * power;
  if (s.fiber.beta2 < 0.0) {
    out << "# g_max_per_km = " << format_number(gp) << "\n";
    out << "# omega_max_rad_per_ps = " << format_number(mi_peak_detuning(s.fiber, power)) << "\n";
    out << "# gain_support_halfwidth_rad_per_ps = "
        << format_number(mi_support_halfwidth(s.fiber, power)) << "\n";
  } else {
    out << "# g_max_per_km = 0 (normal dispersion: no parametric gain)\n";
  }
  if (s.fiber.beta2 != 0.0) {
    out << "# bandwidth_ratio = " << format_number(bandwidth_ratio(s.fiber, power, s.fiber.length))
        << "\n";
  }
  out << "omega_rad_per_ps,lambda_re,lambda_im,gain_per_km\n";
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    out << format_number(s.grid[i]) << ',' << format_number(curve.lambda_vals[i].real()) << ','
        << format_number(curve.lambda_vals[i].imag()) << ',' << format_number(curve.gain_vals[i])
        << '\n';
  }
}

}  // namespace fps
