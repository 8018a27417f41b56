#include "fps/lb_scattering.hpp"

#include <cmath>
#include <utility>

#include "fps/errors.hpp"

namespace fps {

bool to_x_pumped(FiberParams& fiber, PumpConfig& pump) {
  if (pump.p0x > 0.0 && pump.p0y > 0.0) {
    throw PumpNotOnAxis("LB regime requires the pump on a single optical axis");
  }
  if (pump.p0y == 0.0) return false;
  std::swap(pump.p0x, pump.p0y);
  std::swap(pump.theta0x, pump.theta0y);
  fiber.delta_beta0 = -fiber.delta_beta0;
  fiber.delta_beta1 = -fiber.delta_beta1;
  return true;
}

double lb_vector_mismatch(const FiberParams& fiber, double power, double omega) {
  return fiber.beta2 * omega * omega - (2.0 / 3.0) * fiber.gamma * power -
         2.0 * fiber.delta_beta0;
}

cdouble xi_lb_yy(const FiberParams& fiber, const PumpConfig& pump, double omega) {
  if (pump.p0y != 0.0) throw PumpNotOnAxis("xi_lb_yy requires pump.p0y == 0");
  const double coupling = fiber.gamma * pump.p0x / 3.0;
  const double half = 0.5 * lb_vector_mismatch(fiber, pump.p0x, omega) * fiber.length;
  return cdouble(0.0, coupling * fiber.length) * std::polar(1.0, 2.0 * pump.theta0x - half) *
         sinc(half);
}

FluxPair flux_lb(const FiberParams& fiber, const PumpConfig& pump, double omega) {
  FiberParams f = fiber;
  PumpConfig p = pump;
  const bool swapped = to_x_pumped(f, p);
  // Same code path as the HB scalar channel with P0y = 0.
  FluxPair out{std::norm(xi_hb(f, p, Channel::XX, omega)) / kTwoPi,
                std::norm(xi_lb_yy(f, p, omega)) / kTwoPi};
  if (swapped) std::swap(out.f_x, out.f_y);
  return out;
}

LbPeak lb_peak_and_width(const FiberParams& fiber, const PumpConfig& pump) {
  FiberParams f = fiber;
  PumpConfig p = pump;
  to_x_pumped(f, p);
  if (!(f.delta_beta0 * f.beta2 > 0.0)) throw NoFarDetunedPeak();
  return {std::sqrt(2.0 * f.delta_beta0 / f.beta2),
          (kTwoPi / f.length) / std::sqrt(2.0 * f.beta2 * f.delta_beta0)};
}

std::vector<double> lb_phase_matching_roots(const FiberParams& fiber, const PumpConfig& pump) {
  FiberParams f = fiber;
  PumpConfig p = pump;
  to_x_pumped(f, p);
  return real_quadratic_roots(f.beta2, 0.0, lb_vector_mismatch(f, p.p0x, 0.0));
}

}  // namespace fps
