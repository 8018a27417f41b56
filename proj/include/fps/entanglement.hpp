#pragma once

// Polarization state of a frequency-filtered photon pair (modes w0 +- Omega,
// width 2pi/T) and its entanglement.

#include <array>
#include <optional>
#include <string_view>

#include "fps/fiber_model.hpp"
#include "fps/numeric.hpp"

namespace fps {

/// Basis order of FilteredPairState::coeffs (anti-Stokes polarization first).
enum PairBasis : int { kXX = 0, kYY = 1, kXY = 2, kYX = 3 };

struct FilteredPairState {
  double omega = 0.0;
  std::array<cdouble, 4> coeffs{};  ///< normalized
  double norm = 0.0;                ///< sqrt(sum |xi|^2) before normalization
  /// Mean number of pairs in the selected mode pair (first order).
  double generation_probability = 0.0;
  double mode_width = 0.0;  ///< 2pi/T, rad/ps
};

/// First-order two-photon amplitudes at +Omega restricted to one mode pair.
/// Throws EmptyState if every amplitude vanishes.
FilteredPairState filtered_state(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                                 double omega, double duration);

enum class Classification { ProductXY, ProductYX, BellLike, Partial, ScalarOnlyX, ScalarOnlyY };

std::string_view to_string(Classification c);

struct EntanglementReport {
  Classification classification = Classification::Partial;
  double concurrence = 0.0;
  std::optional<double> relative_phase;  ///< arg(c_yy / c_xx), when both are present
};

inline constexpr double kZeroTolerance = 1e-3;
inline constexpr double kBellTolerance = 1e-2;

/// Pure-state concurrence 2 |c_xx c_yy - c_xy c_yx|.
double concurrence(const std::array<cdouble, 4>& c);

/// A coefficient counts as present when |c|^2 >= tol. States with a single
/// present coefficient, or with concurrence below tol, are named after their
/// dominant coefficient; otherwise concurrence >= 1 - kBellTolerance is
/// bell-like and anything else is partial.
EntanglementReport classify(const FilteredPairState& state, double tol = kZeroTolerance);

/// 2 (theta0y - theta0x) wrapped to (-pi, pi].
double bell_phase(const PumpConfig& pump);

struct SecondOrderQuantities {
  double n_mode = 0.0;       ///< mean photons in the mode, up to second order
  double p_any_pair = 0.0;   ///< probability of at least one pair during T
  double first_order = 0.0;  ///< |xi_xx|^2
  double spontaneous = 0.0;  ///< |xi_xx|^2 P_T
  double stimulated = 0.0;   ///< |xi_xx|^4
  /// False when the stimulated term exceeds the independent-pair term.
  bool ordering_ok = true;
};

/// Scalar pumping only (pump.p0y == 0).
SecondOrderQuantities second_order_quantities(const FiberParams& fiber, const PumpConfig& pump,
                                              double omega, double duration);

}  // namespace fps
