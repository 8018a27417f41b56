#pragma once

#include "fps/fiber_model.hpp"
#include "oracles.hpp"

namespace testing_support {

inline fps::FiberParams fiber_of(const oracle::Params& p) {
  fps::FiberParams f;
  f.gamma = p.gamma;
  f.beta2 = p.beta2;
  f.delta_beta0 = p.db0;
  f.delta_beta1 = p.db1;
  f.length = p.L;
  return f;
}

inline fps::PumpConfig pump_of(const oracle::Params& p) {
  fps::PumpConfig q;
  q.p0x = p.px;
  q.p0y = p.py;
  q.theta0x = p.tx;
  q.theta0y = p.ty;
  return q;
}

// Figure-caption parameter sets.
inline oracle::Params scalar_case(double beta2, double L) {
  oracle::Params p;
  p.gamma = 3;
  p.beta2 = beta2;
  p.px = 0.3;
  p.L = L;
  return p;
}

inline oracle::Params vector_case(double L) {
  oracle::Params p;
  p.gamma = 3;
  p.beta2 = 15;
  p.db1 = 200;
  p.px = p.py = 0.15;
  p.L = L;
  return p;
}

inline oracle::Params overlap_case(double L) {
  oracle::Params p;
  p.gamma = 36;
  p.beta2 = -139;
  p.db1 = 400;
  p.px = p.py = 20;
  p.L = L;
  return p;
}

inline oracle::Params lb_case(double beta2, double db0, double L) {
  oracle::Params p;
  p.gamma = 3;
  p.beta2 = beta2;
  p.db0 = db0;
  p.px = 1;
  p.L = L;
  p.lb = true;
  return p;
}

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace testing_support
