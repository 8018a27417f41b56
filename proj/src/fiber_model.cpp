#include "fps/fiber_model.hpp"

#include <cmath>
#include <string>

#include "fps/errors.hpp"

namespace fps {

void FiberParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidInput("fiber.gamma must be > 0");
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidInput("fiber.length must be > 0");
  }
  if (!std::isfinite(beta2) || !std::isfinite(delta_beta0) || !std::isfinite(delta_beta1) ||
      !std::isfinite(beta1_ref)) {
    throw InvalidInput("fiber parameters must be finite");
  }
}

void PumpConfig::validate() const {
  if (!(p0x >= 0.0) || !(p0y >= 0.0)) throw InvalidInput("pump powers must be >= 0");
  if (!(p0x + p0y > 0.0)) throw InvalidInput("total pump power must be > 0");
  if (!std::isfinite(theta0x) || !std::isfinite(theta0y)) {
    throw InvalidInput("pump phases must be finite");
  }
  if (duration && !(*duration > 0.0)) throw InvalidInput("pump.duration must be > 0");
}

FrequencyGrid::FrequencyGrid(double omega_min, double omega_max, std::size_t n_points)
    : omega_min_(omega_min), omega_max_(omega_max), n_(n_points) {
  if (n_points < 2) throw InvalidInput("grid.n_points must be >= 2");
  if (!std::isfinite(omega_min) || !std::isfinite(omega_max) || !(omega_max > omega_min)) {
    throw InvalidInput("grid.omega_max must exceed grid.omega_min");
  }
}

FrequencyGrid FrequencyGrid::symmetric_offset(double half_width, std::size_t n_points) {
  if (n_points % 2 != 0) throw InvalidInput("offset grids need an even number of points");
  return FrequencyGrid(-half_width, half_width, n_points);
}

double FrequencyGrid::operator[](std::size_t i) const {
  // Fill symmetric grids from both ends so mirrored points are exact negatives.
  const double h = step();
  if (is_symmetric() && 2 * i + 1 == n_) return 0.0;
  if (is_symmetric() && 2 * i + 1 > n_) {
    return -(omega_min_ + h * static_cast<double>(n_ - 1 - i));
  }
  return omega_min_ + h * static_cast<double>(i);
}

std::vector<double> FrequencyGrid::values() const {
  std::vector<double> v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = (*this)[i];
  return v;
}

bool FrequencyGrid::is_symmetric() const { return omega_min_ == -omega_max_; }

double beta(const FiberParams& fiber, Axis axis, double omega) {
  double b0 = 0.0;
  double b1 = fiber.beta1_ref;
  if (axis == Axis::X) {
    b0 += fiber.delta_beta0;
    b1 += fiber.delta_beta1;
  }
  return b0 + b1 * omega + 0.5 * fiber.beta2 * omega * omega;
}

double alpha_param(const FiberParams& fiber, const PumpConfig& pump) {
  if (fiber.delta_beta1 == 0.0) throw DegenerateBirefringence();
  return fiber.beta2 * fiber.gamma * pump.total_power() /
         (fiber.delta_beta1 * fiber.delta_beta1);
}

double nonlinear_length(double gamma, double power) {
  if (!(power > 0.0)) throw ZeroPower();
  return 1.0 / (gamma * power);
}

double cpm_phase(double gamma, double p_same, double p_orth, double z) {
  if (z < 0.0) throw InvalidInput("cpm_phase: z must be >= 0");
  return 2.0 * gamma * (p_same + p_orth / 3.0) * z;
}

bool normalize_axes(FiberParams& fiber, PumpConfig& pump) {
  if (fiber.delta_beta1 >= 0.0) return false;
  fiber.delta_beta1 = -fiber.delta_beta1;
  fiber.delta_beta0 = -fiber.delta_beta0;
  // beta1 of the new y axis is the old beta1x.
  fiber.beta1_ref -= fiber.delta_beta1;
  std::swap(pump.p0x, pump.p0y);
  std::swap(pump.theta0x, pump.theta0y);
  return true;
}

}  // namespace fps
