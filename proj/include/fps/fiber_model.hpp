#pragma once

// Fiber and pump parameters, dispersion relation and derived scales.
//
// Units throughout the library: km, ps, W, rad. Detunings are angular
// (rad/ps), so gamma * P and beta2 * Omega^2 are both in 1/km.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace fps {

enum class Axis { X, Y };

/// High birefringence (coherent coupling averaged out) or low birefringence.
enum class Regime { HB, LB };

struct FiberParams {
  double gamma = 0.0;        ///< nonlinearity, 1/(W km)
  double beta2 = 0.0;        ///< group-velocity dispersion (both axes), ps^2/km
  double delta_beta0 = 0.0;  ///< beta0x - beta0y, 1/km
  double delta_beta1 = 0.0;  ///< beta1x - beta1y, ps/km
  double beta1_ref = 0.0;    ///< beta1y, ps/km; only a common phase
  double length = 0.0;       ///< fiber length L, km

  /// Throws InvalidInput unless gamma > 0 and length > 0.
  void validate() const;
  FiberParams with_length(double l) const {
    FiberParams f = *this;
    f.length = l;
    return f;
  }
};

struct PumpConfig {
  double p0x = 0.0;  ///< W
  double p0y = 0.0;  ///< W
  double theta0x = 0.0;
  double theta0y = 0.0;
  std::optional<double> duration;  ///< pump duration T, ps

  double total_power() const { return p0x + p0y; }
  void validate() const;
};

/// Uniform, strictly increasing detuning grid in rad/ps.
class FrequencyGrid {
public:
  FrequencyGrid(double omega_min, double omega_max, std::size_t n_points);

  /// Symmetric grid with an even number of points, so Omega = 0 is never sampled.
  static FrequencyGrid symmetric_offset(double half_width, std::size_t n_points);

  double omega_min() const { return omega_min_; }
  double omega_max() const { return omega_max_; }
  std::size_t size() const { return n_; }
  double step() const { return (omega_max_ - omega_min_) / static_cast<double>(n_ - 1); }
  double operator[](std::size_t i) const;
  std::vector<double> values() const;
  bool is_symmetric() const;
  /// Index of the point mirrored through Omega = 0 (valid on symmetric grids).
  std::size_t mirror_index(std::size_t i) const { return n_ - 1 - i; }

private:
  double omega_min_;
  double omega_max_;
  std::size_t n_;
};

/// Propagation constant beta_j(Omega) in 1/km, with beta0y = 0 and beta1y = beta1_ref.
double beta(const FiberParams& fiber, Axis axis, double omega);

/// Dimensionless alpha = beta2 gamma P0 / delta_beta1^2.
double alpha_param(const FiberParams& fiber, const PumpConfig& pump);

/// Nonlinearity length 1/(gamma P) in km.
double nonlinear_length(double gamma, double power);

/// Cross-phase-modulation phase accumulated over a distance z (km).
/// The orthogonal axis contributes with weight 1/3.
double cpm_phase(double gamma, double p_same, double p_orth, double z);

/// Relabels x <-> y when delta_beta1 < 0 so that x is the slow axis.
/// Returns true when the axes were swapped.
bool normalize_axes(FiberParams& fiber, PumpConfig& pump);

}  // namespace fps
