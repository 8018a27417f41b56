#include "fps/hb_scattering.hpp"

#include <algorithm>
#include <cmath>

#include "fps/errors.hpp"

namespace fps {

namespace {

// i * coupling * int_0^L exp(-i mismatch z) dz
cdouble first_order_amplitude(double coupling, double mismatch, double length) {
  const double half = 0.5 * mismatch * length;
  return cdouble(0.0, coupling * length) * std::polar(1.0, -half) * sinc(half);
}

double vector_coupling(const PumpConfig& pump, double gamma) {
  return (2.0 / 3.0) * gamma * std::sqrt(pump.p0x * pump.p0y);
}

}  // namespace

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::XX: return "xx";
    case Channel::YY: return "yy";
    case Channel::XY: return "xy";
    case Channel::YX: return "yx";
  }
  return "?";
}

double channel_mismatch(const FiberParams& fiber, const PumpConfig& pump, Channel channel,
                        double omega) {
  const double disp = fiber.beta2 * omega * omega;
  const double kerr = fiber.gamma * pump.total_power();
  switch (channel) {
    case Channel::XX: return disp + 2.0 * fiber.gamma * pump.p0x;
    case Channel::YY: return disp + 2.0 * fiber.gamma * pump.p0y;
    case Channel::XY: return fiber.delta_beta1 * omega + disp + kerr;
    case Channel::YX: return -fiber.delta_beta1 * omega + disp + kerr;
  }
  return 0.0;
}

double channel_prefactor(const FiberParams& fiber, const PumpConfig& pump, Channel channel) {
  switch (channel) {
    case Channel::XX: return fiber.gamma * pump.p0x * fiber.length;
    case Channel::YY: return fiber.gamma * pump.p0y * fiber.length;
    case Channel::XY:
    case Channel::YX: return vector_coupling(pump, fiber.gamma) * fiber.length;
  }
  return 0.0;
}

cdouble xi_hb(const FiberParams& fiber, const PumpConfig& pump, Channel channel, double omega) {
  const double k = channel_mismatch(fiber, pump, channel, omega);
  switch (channel) {
    case Channel::XX:
      return std::polar(1.0, 2.0 * pump.theta0x) *
             first_order_amplitude(fiber.gamma * pump.p0x, k, fiber.length);
    case Channel::YY:
      return std::polar(1.0, 2.0 * pump.theta0y) *
             first_order_amplitude(fiber.gamma * pump.p0y, k, fiber.length);
    case Channel::XY:
    case Channel::YX:
      return std::polar(1.0, pump.theta0x + pump.theta0y) *
             first_order_amplitude(vector_coupling(pump, fiber.gamma), k, fiber.length);
  }
  return {};
}

FluxPair flux_hb(const FiberParams& fiber, const PumpConfig& pump, double omega) {
  const double pos = heaviside(omega);
  const double neg = heaviside(-omega);
  const double xy_here = std::norm(xi_hb(fiber, pump, Channel::XY, omega));
  const double yx_here = std::norm(xi_hb(fiber, pump, Channel::YX, omega));
  const double xy_mirror = std::norm(xi_hb(fiber, pump, Channel::XY, -omega));
  const double yx_mirror = std::norm(xi_hb(fiber, pump, Channel::YX, -omega));
  FluxPair f;
  f.f_x = (std::norm(xi_hb(fiber, pump, Channel::XX, omega)) + pos * xy_here + neg * yx_mirror) /
          kTwoPi;
  f.f_y = (std::norm(xi_hb(fiber, pump, Channel::YY, omega)) + pos * yx_here + neg * xy_mirror) /
          kTwoPi;
  return f;
}

double scalar_flux_first_order(const FiberParams& fiber, double pump_axis_power, double omega) {
  PumpConfig pump;
  pump.p0x = pump_axis_power;
  return std::norm(xi_hb(fiber, pump, Channel::XX, omega)) / kTwoPi;
}

double pair_probability_density(const FiberParams& fiber, const PumpConfig& pump, double omega) {
  return std::norm(xi_hb(fiber, pump, Channel::XX, omega)) / kTwoPi;
}

double total_scatter_probability(const FiberParams& fiber, const PumpConfig& pump,
                                 double duration, ProbabilityMode mode) {
  if (!(duration > 0.0)) throw InvalidInput("duration must be > 0");
  if (fiber.beta2 == 0.0) throw ZeroDispersion();
  const double abs_b2 = std::abs(fiber.beta2);
  const double g = fiber.gamma * pump.p0x * fiber.length;
  if (mode == ProbabilityMode::Analytic) {
    return (2.0 / 3.0) * g * g *
           std::sqrt(duration * duration / (kTwoPi * abs_b2 * fiber.length));
  }

  // Composite Simpson over [0, 50 scalar widths]; the sinc^2 tail beyond
  // decays as Omega^-4 and is added in closed form with sin^2 -> 1/2.
  const double width = scalar_bandwidth(fiber);
  const double upper = 50.0 * width;
  const double max_rate = abs_b2 * fiber.length * upper;
  std::size_t n = static_cast<std::size_t>(std::ceil(upper * max_rate / 0.05));
  n += n % 2;
  const double h = upper / static_cast<double>(n);
  double sum = pair_probability_density(fiber, pump, 0.0) + pair_probability_density(fiber, pump, upper);
  for (std::size_t i = 1; i < n; ++i) {
    sum += (i % 2 ? 4.0 : 2.0) * pair_probability_density(fiber, pump, h * static_cast<double>(i));
  }
  const double b = 0.5 * abs_b2 * fiber.length;
  const double tail = g * g / kTwoPi * 0.5 / (b * b) / (3.0 * upper * upper * upper);
  return duration * (sum * h / 3.0 + tail);
}

std::vector<double> real_quadratic_roots(double a, double b, double c) {
  std::vector<double> roots;
  if (a == 0.0) {
    if (b != 0.0) roots.push_back(-c / b);
    return roots;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return roots;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    roots.push_back(0.0);
    return roots;
  }
  roots.push_back(q / a);
  roots.push_back(c / q);
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

std::vector<double> phase_matching_roots(const FiberParams& fiber, const PumpConfig& pump,
                                         Channel channel) {
  const double c0 = channel_mismatch(fiber, pump, channel, 0.0);
  switch (channel) {
    case Channel::XX:
    case Channel::YY: return real_quadratic_roots(fiber.beta2, 0.0, c0);
    case Channel::XY: return real_quadratic_roots(fiber.beta2, fiber.delta_beta1, c0);
    case Channel::YX: return real_quadratic_roots(fiber.beta2, -fiber.delta_beta1, c0);
  }
  return {};
}

VectorPeak vector_peak_detuning(const FiberParams& fiber, const PumpConfig& pump) {
  if (fiber.delta_beta1 == 0.0) throw DegenerateBirefringence();
  if (fiber.delta_beta1 < 0.0) throw InvalidInput("delta_beta1 must be > 0 (normalize axes)");
  if (fiber.beta2 == 0.0) throw ZeroDispersion();
  const double a = alpha_param(fiber, pump);
  return {fiber.delta_beta1 / std::abs(fiber.beta2) * (1.0 - a), std::abs(a) >= 1.0};
}

double scalar_bandwidth(const FiberParams& fiber) {
  if (fiber.beta2 == 0.0) throw ZeroDispersion();
  if (!(fiber.length > 0.0)) throw InvalidInput("length must be > 0");
  return 2.0 * std::sqrt(kTwoPi / (std::abs(fiber.beta2) * fiber.length));
}

double vector_bandwidth(const FiberParams& fiber) {
  if (fiber.delta_beta1 == 0.0) throw DegenerateBirefringence();
  if (fiber.delta_beta1 < 0.0) throw InvalidInput("delta_beta1 must be > 0 (normalize axes)");
  if (!(fiber.length > 0.0)) throw InvalidInput("length must be > 0");
  return 2.0 * kTwoPi / (fiber.delta_beta1 * fiber.length);
}

Bandwidths bandwidths(const FiberParams& fiber, const PumpConfig& /*pump*/) {
  return {scalar_bandwidth(fiber), vector_bandwidth(fiber)};
}

}  // namespace fps
