#include <cmath>

#include "doctest.h"

#include "fps/errors.hpp"
#include "fps/hb_scattering.hpp"
#include "fps/lb_scattering.hpp"
#include "helpers.hpp"

using namespace fps;
using namespace testing_support;

TEST_CASE("orthogonal-axis amplitude matches direct quadrature") {
  auto p = lb_case(5, 2000, 0.15);
  p.tx = 0.8;
  for (double w : {-28.29, -3.0, 0.0, 1.0, 28.0, 28.2913}) {
    const cdouble got = xi_lb_yy(fiber_of(p), pump_of(p), w);
    const cdouble want = oracle::first_order_amplitude(p, 1, 1, w, 20000);
    CHECK(std::abs(got - want) / std::max(std::abs(want), 1e-12) < 1e-9);
  }
}

TEST_CASE("scalar channel is bit-identical to the HB scalar channel") {
  const auto p = lb_case(5, 2000, 0.1);
  const auto f = fiber_of(p);
  const auto q = pump_of(p);
  for (double w : {-30.0, -1.0, 0.0, 0.37, 12.0}) {
    CHECK(flux_lb(f, q, w).f_x == flux_hb(f, q, w).f_x);
  }
}

TEST_CASE("y-axis flux on phase matching") {
  const auto p = lb_case(5, 2000, 0.05);
  const auto f = fiber_of(p);
  const auto q = pump_of(p);
  const auto roots = lb_phase_matching_roots(f, q);
  REQUIRE(roots.size() == 2);
  // (gamma P L / 3)^2 / 2 pi
  CHECK(flux_lb(f, q, roots[0]).f_y == doctest::Approx(3.97887357729738e-4).epsilon(1e-12));
}

TEST_CASE("far-detuned peak location and width") {
  const auto p = lb_case(5, 2000, 0.15);
  const auto f = fiber_of(p);
  const auto q = pump_of(p);
  const auto pk = lb_peak_and_width(f, q);
  // Kerr-free estimator sqrt(2 dbeta0 / beta2)
  CHECK(pk.detuning == doctest::Approx(28.2842712474619).epsilon(1e-12));
  CHECK(pk.width == doctest::Approx(0.296192195877224).epsilon(1e-10));

  // exact peak: zero of the quadrature amplitude's phase-corrected mismatch
  const auto roots = lb_phase_matching_roots(f, q);
  REQUIRE_FALSE(roots.empty());
  CHECK(roots[0] == doctest::Approx(28.2913414316112).epsilon(1e-12));

  // exact first zeros of |xi_yy|^2 on either side of the peak
  auto imag_part = [&](double w) {
    const double k = p.beta2 * w * w - (2.0 / 3.0) * p.gamma * p.px - 2 * p.db0;
    return std::imag(oracle::first_order_amplitude(p, 1, 1, w, 200) *
                     std::exp(oracle::I * k * p.L / 2.0));
  };
  const double lo = oracle::bisect(imag_part, roots[0] - 0.25, roots[0] - 0.05, 60);
  const double hi = oracle::bisect(imag_part, roots[0] + 0.05, roots[0] + 0.25, 60);
  CHECK(hi - lo == doctest::Approx(0.296122230846953).epsilon(1e-8));
  CHECK(std::abs(pk.width - (hi - lo)) < 1e-3);

  SUBCASE("anomalous dispersion with negative offset also phase matches") {
    const auto m = lb_case(-5, -2000, 0.15);
    CHECK(lb_peak_and_width(fiber_of(m), pump_of(m)).detuning ==
          doctest::Approx(28.2842712474619));
  }
  SUBCASE("opposite signs give no far-detuned peak") {
    const auto m = lb_case(5, -2000, 0.15);
    CHECK_THROWS_AS(lb_peak_and_width(fiber_of(m), pump_of(m)), NoFarDetunedPeak);
    CHECK(lb_phase_matching_roots(fiber_of(m), pump_of(m)).empty());
  }
}

TEST_CASE("pump on the y axis is the relabeled x-pumped problem") {
  auto p = lb_case(5, 2000, 0.1);
  auto f = fiber_of(p);
  auto qx = pump_of(p);
  PumpConfig qy;
  qy.p0y = qx.p0x;
  qy.theta0y = qx.theta0x;
  auto fy = f;
  fy.delta_beta0 = -f.delta_beta0;
  for (double w : {-28.0, 0.3, 28.29}) {
    const auto a = flux_lb(f, qx, w);
    const auto b = flux_lb(fy, qy, w);
    CHECK(a.f_x == b.f_y);
    CHECK(a.f_y == b.f_x);
  }
  CHECK_THROWS_AS(xi_lb_yy(f, qy, 1.0), PumpNotOnAxis);
  PumpConfig both;
  both.p0x = both.p0y = 0.5;
  CHECK_THROWS_AS(flux_lb(f, both, 1.0), PumpNotOnAxis);
}
