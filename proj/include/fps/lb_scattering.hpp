#pragma once

// First-order scattering in low-birefringence fibers with the pump linearly
// polarized along one optical axis. The co-polarized (scalar) channel is the
// HB xx channel; the orthogonal yy channel is phase matched through the
// phase birefringence delta_beta0.

#include "fps/fiber_model.hpp"
#include "fps/hb_scattering.hpp"

namespace fps {

/// Orthogonally polarized pair amplitude for an x-polarized pump.
/// Throws PumpNotOnAxis if pump.p0y != 0.
cdouble xi_lb_yy(const FiberParams& fiber, const PumpConfig& pump, double omega);

/// beta2 Omega^2 - (2/3) gamma P0 - 2 delta_beta0, for an x pump.
double lb_vector_mismatch(const FiberParams& fiber, double power, double omega);

/// Flux on both axes. A y-polarized pump is handled by relabeling the axes.
FluxPair flux_lb(const FiberParams& fiber, const PumpConfig& pump, double omega);

struct LbPeak {
  double detuning = 0.0;  ///< sqrt(2 delta_beta0 / beta2), rad/ps
  double width = 0.0;     ///< (2pi/L) / sqrt(2 beta2 delta_beta0), rad/ps
};

/// Throws NoFarDetunedPeak unless delta_beta0 * beta2 > 0 (after relabeling).
LbPeak lb_peak_and_width(const FiberParams& fiber, const PumpConfig& pump);

/// Detunings where the yy mismatch vanishes (+-Omega), empty if none.
std::vector<double> lb_phase_matching_roots(const FiberParams& fiber, const PumpConfig& pump);

/// Axis relabeling used for y-polarized pumps: swaps powers and phases and
/// flips delta_beta0 (and delta_beta1). Returns true if a swap happened.
/// Throws PumpNotOnAxis when both axes carry power.
bool to_x_pumped(FiberParams& fiber, PumpConfig& pump);

}  // namespace fps
