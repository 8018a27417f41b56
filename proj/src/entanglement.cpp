#include "fps/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fps/errors.hpp"
#include "fps/hb_scattering.hpp"
#include "fps/lb_scattering.hpp"

namespace fps {

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::ProductXY: return "product-xy";
    case Classification::ProductYX: return "product-yx";
    case Classification::BellLike: return "bell-like";
    case Classification::Partial: return "partial";
    case Classification::ScalarOnlyX: return "scalar-only-x";
    case Classification::ScalarOnlyY: return "scalar-only-y";
  }
  return "?";
}

FilteredPairState filtered_state(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                                 double omega, double duration) {
  if (!(omega > 0.0)) throw InvalidInput("filtered_state: omega must be > 0");
  if (!(duration > 0.0)) throw InvalidInput("filtered_state: duration must be > 0");

  std::array<cdouble, 4> xi{};
  if (regime == Regime::HB) {
    xi[kXX] = xi_hb(fiber, pump, Channel::XX, omega);
    xi[kYY] = xi_hb(fiber, pump, Channel::YY, omega);
    xi[kXY] = xi_hb(fiber, pump, Channel::XY, omega);
    xi[kYX] = xi_hb(fiber, pump, Channel::YX, omega);
  } else {
    FiberParams f = fiber;
    PumpConfig p = pump;
    const bool swapped = to_x_pumped(f, p);
    xi[kXX] = xi_hb(f, p, Channel::XX, omega);
    xi[kYY] = xi_lb_yy(f, p, omega);
    if (swapped) std::swap(xi[kXX], xi[kYY]);
  }

  double total = 0.0;
  for (const auto& c : xi) total += std::norm(c);
  if (!(total > 0.0)) throw EmptyState();

  FilteredPairState s;
  s.omega = omega;
  s.norm = std::sqrt(total);
  for (int k = 0; k < 4; ++k) s.coeffs[k] = xi[k] / s.norm;
  // In discrete modes of width 2pi/T the occupancy of the pair mode is |xi|^2.
  s.generation_probability = total;
  s.mode_width = kTwoPi / duration;
  return s;
}

double concurrence(const std::array<cdouble, 4>& c) {
  return 2.0 * std::abs(c[kXX] * c[kYY] - c[kXY] * c[kYX]);
}

EntanglementReport classify(const FilteredPairState& state, double tol) {
  const auto& c = state.coeffs;
  EntanglementReport r;
  r.concurrence = std::min(1.0, concurrence(c));

  int present = 0;
  int dominant = 0;
  for (int k = 0; k < 4; ++k) {
    if (std::norm(c[k]) >= tol) ++present;
    if (std::norm(c[k]) > std::norm(c[dominant])) dominant = k;
  }
  if (std::norm(c[kXX]) >= tol && std::norm(c[kYY]) >= tol) {
    r.relative_phase = std::arg(c[kYY] / c[kXX]);
  }

  if (present <= 1 || r.concurrence < tol) {
    constexpr std::array<Classification, 4> by_basis{
        Classification::ScalarOnlyX, Classification::ScalarOnlyY, Classification::ProductXY,
        Classification::ProductYX};
    r.classification = by_basis[dominant];
  } else if (r.concurrence >= 1.0 - kBellTolerance) {
    r.classification = Classification::BellLike;
  } else {
    r.classification = Classification::Partial;
  }
  return r;
}

double bell_phase(const PumpConfig& pump) {
  return wrap_phase(2.0 * (pump.theta0y - pump.theta0x));
}

SecondOrderQuantities second_order_quantities(const FiberParams& fiber, const PumpConfig& pump,
                                              double omega, double duration) {
  if (pump.p0y != 0.0) throw PumpNotOnAxis("second-order quantities need pump.p0y == 0");
  SecondOrderQuantities q;
  q.p_any_pair = total_scatter_probability(fiber, pump, duration, ProbabilityMode::Analytic);
  q.first_order = std::norm(xi_hb(fiber, pump, Channel::XX, omega));
  q.spontaneous = q.first_order * q.p_any_pair;
  q.stimulated = q.first_order * q.first_order;
  q.n_mode = q.first_order + q.spontaneous + q.stimulated;
  q.ordering_ok = q.stimulated <= q.spontaneous;
  return q;
}

}  // namespace fps
