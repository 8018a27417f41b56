#pragma once

// First-order four-photon scattering in high-birefringence fibers.
//
// Amplitudes are the continuous-mode two-photon coefficients of the output
// state; with gamma P L dimensionless they carry no units, and the flux
// |xi|^2 / 2pi is a photon number per unit time per unit angular frequency.

#include <string_view>
#include <vector>

#include "fps/fiber_model.hpp"
#include "fps/numeric.hpp"

namespace fps {

/// First letter: polarization of the anti-Stokes (+Omega) photon; second: Stokes (-Omega).
enum class Channel { XX, YY, XY, YX };

std::string_view to_string(Channel c);

struct FluxPair {
  double f_x = 0.0;
  double f_y = 0.0;
};

cdouble xi_hb(const FiberParams& fiber, const PumpConfig& pump, Channel channel, double omega);

/// Upper bound on |xi| for a channel: gamma P L (scalar) or (2/3) gamma sqrt(PxPy) L (vector).
double channel_prefactor(const FiberParams& fiber, const PumpConfig& pump, Channel channel);

/// Photon-flux spectral densities on both axes. The vector channels are
/// gated by Theta(+-Omega), with Theta(0) = 1/2.
FluxPair flux_hb(const FiberParams& fiber, const PumpConfig& pump, double omega);

/// (gamma P L)^2 sinc^2[(beta2 Omega^2 + 2 gamma P) L / 2] / 2pi for a pump on one axis.
double scalar_flux_first_order(const FiberParams& fiber, double pump_axis_power, double omega);

/// Pair-creation probability per unit time and unit angular frequency, |xi_xx|^2 / 2pi.
double pair_probability_density(const FiberParams& fiber, const PumpConfig& pump, double omega);

enum class ProbabilityMode { Analytic, Numeric };

/// Total probability of scattering a pair during a pump of duration T (ps)
/// from the x-axis scalar process. Analytic mode drops the Kerr term from the
/// sinc argument; numeric mode integrates the full density.
double total_scatter_probability(const FiberParams& fiber, const PumpConfig& pump,
                                 double duration, ProbabilityMode mode);

struct VectorPeak {
  double detuning = 0.0;  ///< |Omega_vect|, rad/ps
  bool overlapping = false;  ///< |alpha| >= 1: scalar and vector bands merge
};

VectorPeak vector_peak_detuning(const FiberParams& fiber, const PumpConfig& pump);

/// Phase mismatch (1/km) whose zero maximizes |xi| for the channel.
double channel_mismatch(const FiberParams& fiber, const PumpConfig& pump, Channel channel,
                        double omega);

/// Real detunings where the channel mismatch vanishes, in decreasing order.
std::vector<double> phase_matching_roots(const FiberParams& fiber, const PumpConfig& pump,
                                         Channel channel);

/// Real roots of a x^2 + b x + c = 0 in decreasing order (cancellation-free).
std::vector<double> real_quadratic_roots(double a, double b, double c);

double scalar_bandwidth(const FiberParams& fiber);
double vector_bandwidth(const FiberParams& fiber);

struct Bandwidths {
  double scalar = 0.0;
  double vector = 0.0;
};

Bandwidths bandwidths(const FiberParams& fiber, const PumpConfig& pump);

}  // namespace fps
