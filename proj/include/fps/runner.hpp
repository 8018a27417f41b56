#pragma once

// Subcommand implementations behind the `fps` CLI. Output is plot-ready CSV
// (spectra, gain curves) or JSON (reports), each preceded by the resolved
// scenario so a file can be traced back to its inputs.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fps/entanglement.hpp"
#include "fps/scenario.hpp"
#include "fps/spectrum.hpp"

namespace fps {

struct RunOptions {
  unsigned threads = 1;
  std::optional<int> steps;
  std::optional<MethodSelection> method;  ///< overrides the scenario's method
};

/// Formats a value with 9 significant digits.
std::string format_number(double v);

/// Concrete methods implied by a selection ("all" expands to every applicable one).
std::vector<Method> expand_methods(MethodSelection sel, const Scenario& s);

/// CSV with columns omega_rad_per_ps,f_x,f_y,method,L_km; one row per (L, method, Omega).
void run_spectrum(const Scenario& s, const RunOptions& opt, std::ostream& out);

struct LengthComparison {
  double length = 0.0;
  double length_over_lnl = 0.0;
  double max_deviation = 0.0;   ///< max |f_test - f_ref| / peak(f_ref)
  double mean_deviation = 0.0;  ///< mean of the same over the grid
};

struct ComparisonReport {
  Method test = Method::FirstOrder;
  Method reference = Method::ClosedForm;
  std::vector<LengthComparison> rows;
  bool monotone = true;  ///< max deviation strictly increases with L
};

/// Compares `test` against `reference` (default: closed form when available,
/// otherwise the transfer-matrix integration) at every sweep length.
ComparisonReport run_compare(const Scenario& s, const RunOptions& opt,
                             Method test = Method::FirstOrder,
                             std::optional<Method> reference = std::nullopt);

std::string to_json(const ComparisonReport& r, const Scenario& s);

struct ClassifyResult {
  FilteredPairState state;
  EntanglementReport report;
  double bell_phase = 0.0;
};

/// Filtered-state classification at the scenario's fiber.length_km.
ClassifyResult run_classify(const Scenario& s, double omega, double duration);
std::string to_json(const ClassifyResult& r, const Scenario& s);

/// CSV with columns omega_rad_per_ps,lambda_re,lambda_im,gain_per_km for a
/// single-axis pump; the header carries g_max, Omega_max and the bandwidth ratio.
void run_mi(const Scenario& s, const RunOptions& opt, std::ostream& out);

/// Exit codes of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

}  // namespace fps
