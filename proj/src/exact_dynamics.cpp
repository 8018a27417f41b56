#include "fps/exact_dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fps/errors.hpp"
#include "fps/lb_scattering.hpp"

namespace fps {

namespace {

constexpr cdouble kI{0.0, 1.0};

// Adds an entry and its J-adjoint partner (row/col swapped), so that
// A J + J A^+ = 0 holds by construction.
void add_pair(std::vector<CoefficientTerm>& terms, int row, int col, cdouble amplitude,
              double rate) {
  const Matrix4& j = bogoliubov_metric();
  const double sign = -j(row, row).real() * j(col, col).real();
  terms.push_back({row, col, amplitude, rate});
  terms.push_back({col, row, sign * std::conj(amplitude), -rate});
}

}  // namespace

const Matrix4& bogoliubov_metric() {
  static const Matrix4 j = [] {
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    m(2, 2) = 1.0;
    m(3, 3) = -1.0;
    return m;
  }();
  return j;
}

std::vector<CoefficientTerm> coefficient_terms(const FiberParams& fiber, const PumpConfig& pump,
                                               Regime regime, double omega) {
  std::vector<CoefficientTerm> terms;
  const double g = fiber.gamma;
  const double disp = fiber.beta2 * omega * omega;

  if (regime == Regime::LB) {
    if (pump.p0y != 0.0) throw PumpNotOnAxis("LB coefficient matrix requires pump.p0y == 0");
    const double p = pump.p0x;
    const cdouble pump_phase = std::polar(1.0, 2.0 * pump.theta0x);
    add_pair(terms, kAxOmega, kAxDagMinus, kI * g * p * pump_phase, disp + 2.0 * g * p);
    add_pair(terms, kAyOmega, kAyDagMinus, kI * (g * p / 3.0) * pump_phase,
             lb_vector_mismatch(fiber, p, omega));
    return terms;
  }

  const double px = pump.p0x;
  const double py = pump.p0y;
  add_pair(terms, kAxOmega, kAxDagMinus, kI * g * px * std::polar(1.0, 2.0 * pump.theta0x),
           disp + 2.0 * g * px);
  add_pair(terms, kAyOmega, kAyDagMinus, kI * g * py * std::polar(1.0, 2.0 * pump.theta0y),
           disp + 2.0 * g * py);
  if (px > 0.0 && py > 0.0) {
    const double c = (2.0 / 3.0) * g * std::sqrt(px * py);
    const double walk = fiber.delta_beta1 * omega;
    const double kerr = g * (px + py);
    const cdouble sum_phase = std::polar(1.0, pump.theta0x + pump.theta0y);
    // a_x(Omega) <-> a_y(Omega): frequency-preserving polarization exchange.
    add_pair(terms, kAxOmega, kAyOmega, kI * c * std::polar(1.0, pump.theta0x - pump.theta0y),
             walk + g * (px - py));
    // Same exchange between the -Omega creation operators.
    add_pair(terms, kAxDagMinus, kAyDagMinus,
             -kI * c * std::polar(1.0, pump.theta0y - pump.theta0x), walk - g * (px - py));
    // a_x(Omega) <- a_y^+(-Omega): anti-Stokes on x, Stokes on y.
    add_pair(terms, kAxOmega, kAyDagMinus, kI * c * sum_phase, walk + disp + kerr);
    // a_y(Omega) <- a_x^+(-Omega): anti-Stokes on y, Stokes on x.
    add_pair(terms, kAyOmega, kAxDagMinus, kI * c * sum_phase, -walk + disp + kerr);
  }
  return terms;
}

Matrix4 build_coefficient_matrix(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                                 double omega, double z) {
  Matrix4 a = Matrix4::Zero();
  for (const auto& t : coefficient_terms(fiber, pump, regime, omega)) {
    a(t.row, t.col) += t.amplitude * std::polar(1.0, -t.rate * z);
  }
  return a;
}

double symplectic_defect(const Matrix4& m) {
  const Matrix4& j = bogoliubov_metric();
  return (m * j * m.adjoint() - j).cwiseAbs().maxCoeff();
}

namespace {

double max_coupling(const std::vector<CoefficientTerm>& terms) {
  double norm = 0.0;
  for (const auto& t : terms) norm = std::max(norm, std::abs(t.amplitude));
  return norm;
}

double max_rate(const std::vector<CoefficientTerm>& terms) {
  double r = 0.0;
  for (const auto& t : terms) r = std::max(r, std::abs(t.rate));
  return r;
}

// k = A(z) y, with A given by its terms and the current phasors.
void apply(const std::vector<CoefficientTerm>& terms, const std::vector<cdouble>& phasors,
           const Matrix4& y, Matrix4& k) {
  k.setZero();
  for (std::size_t n = 0; n < terms.size(); ++n) {
    const cdouble a = terms[n].amplitude * phasors[n];
    k.row(terms[n].row) += a * y.row(terms[n].col);
  }
}

}  // namespace

int minimum_step_count(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                       double omega) {
  const auto terms = coefficient_terms(fiber, pump, regime, omega);
  return std::max(1, static_cast<int>(std::ceil(10.0 * fiber.length * max_coupling(terms))));
}

int default_step_count(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                       double omega) {
  const auto terms = coefficient_terms(fiber, pump, regime, omega);
  const double l = fiber.length;
  const double by_coupling = std::ceil(20.0 * l * max_coupling(terms));
  const double by_phase = std::ceil(l * max_rate(terms) / kMaxPhasePerStep);
  return static_cast<int>(std::max({1000.0, by_coupling, by_phase}));
}

Matrix4 rk4_transfer(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                     double omega, int n) {
  if (n < 1) throw InvalidInput("RK4 step count must be positive");
  const auto terms = coefficient_terms(fiber, pump, regime, omega);
  const double h = fiber.length / n;
  const std::size_t nt = terms.size();
  // Phasors exp(-i rate z) advanced by half steps; re-anchored periodically.
  std::vector<cdouble> half_step(nt), p0(nt), p_mid(nt), p1(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    half_step[t] = std::polar(1.0, -0.5 * terms[t].rate * h);
    p0[t] = 1.0;
  }

  Matrix4 m = Matrix4::Identity();
  Matrix4 k1, k2, k3, k4, tmp;
  for (int s = 0; s < n; ++s) {
    if (s % 256 == 0) {
      const double z = s * h;
      for (std::size_t t = 0; t < nt; ++t) p0[t] = std::polar(1.0, -terms[t].rate * z);
    }
    for (std::size_t t = 0; t < nt; ++t) {
      p_mid[t] = p0[t] * half_step[t];
      p1[t] = p_mid[t] * half_step[t];
    }
    apply(terms, p0, m, k1);
    tmp = m + (0.5 * h) * k1;
    apply(terms, p_mid, tmp, k2);
    tmp = m + (0.5 * h) * k2;
    apply(terms, p_mid, tmp, k3);
    tmp = m + h * k3;
    apply(terms, p1, tmp, k4);
    m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    p0.swap(p1);
  }

  return m;
}

TransferMatrix integrate_transfer(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                                  double omega, std::optional<int> steps) {
  const int n = steps ? *steps : default_step_count(fiber, pump, regime, omega);
  const int n_min = minimum_step_count(fiber, pump, regime, omega);
  if (n < n_min) {
    throw InvalidInput("RK4 step count " + std::to_string(n) + " below minimum " +
                       std::to_string(n_min));
  }
  const Matrix4 m = rk4_transfer(fiber, pump, regime, omega, n);
  TransferMatrix out{omega, m, n, symplectic_defect(m)};
  // M J M^+ is formed from entries of size |M|^2, so at high gain the defect
  // floor is roundoff in those products rather than integration error.
  const double scale = std::max(1.0, m.cwiseAbs2().maxCoeff());
  if (!(out.defect <= kDefectTolerance * scale)) {
    throw StepCountTooSmall("symplectic defect " + std::to_string(out.defect) +
                            " exceeds tolerance with " + std::to_string(n) + " steps");
  }
  return out;
}

FluxPair flux_from_transfer(const TransferMatrix& t) {
  const Matrix4& m = t.matrix;
  FluxPair f;
  f.f_x = (std::norm(m(kAxOmega, kAxDagMinus)) + std::norm(m(kAxOmega, kAyDagMinus))) / kTwoPi;
  f.f_y = (std::norm(m(kAyOmega, kAxDagMinus)) + std::norm(m(kAyOmega, kAyDagMinus))) / kTwoPi;
  return f;
}

cdouble lambda_param(const FiberParams& fiber, double power, double omega) {
  const double gp = fiber.gamma * power;
  const double k = 2.0 * gp + fiber.beta2 * omega * omega;
  const double s = gp * gp - 0.25 * k * k;
  return s >= 0.0 ? cdouble(std::sqrt(s), 0.0) : cdouble(0.0, std::sqrt(-s));
}

double parametric_flux(double coupling, double mismatch, double length) {
  const double s = coupling * coupling - 0.25 * mismatch * mismatch;
  const double x = s * length * length;
  double ratio;  // |sinh(lambda L) / lambda|
  if (std::abs(x) < 1e-4) {
    ratio = length * (1.0 + x / 6.0 + x * x / 120.0);
  } else if (s > 0.0) {
    const double lam = std::sqrt(s);
    ratio = std::sinh(lam * length) / lam;
  } else {
    const double mu = std::sqrt(-s);
    ratio = std::abs(std::sin(mu * length)) / mu;
  }
  return coupling * coupling * ratio * ratio / kTwoPi;
}

double exact_scalar_flux(const FiberParams& fiber, double power, double omega) {
  const double gp = fiber.gamma * power;
  return parametric_flux(gp, fiber.beta2 * omega * omega + 2.0 * gp, fiber.length);
}

bool has_closed_form(const PumpConfig& pump, Regime regime) {
  return regime == Regime::LB || pump.p0x == 0.0 || pump.p0y == 0.0;
}

FluxPair closed_form_flux(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                          double omega) {
  if (regime == Regime::LB) {
    FiberParams f = fiber;
    PumpConfig p = pump;
    const bool swapped = to_x_pumped(f, p);
    const double gp = f.gamma * p.p0x;
    FluxPair out{exact_scalar_flux(f, p.p0x, omega),
                 parametric_flux(gp / 3.0, lb_vector_mismatch(f, p.p0x, omega), f.length)};
    if (swapped) std::swap(out.f_x, out.f_y);
    return out;
  }
  if (!has_closed_form(pump, regime)) {
    throw InvalidInput("no closed form: both axes pumped in the HB regime (use exact-ode)");
  }
  return {exact_scalar_flux(fiber, pump.p0x, omega), exact_scalar_flux(fiber, pump.p0y, omega)};
}

double mi_gain(const FiberParams& fiber, double power, double omega) {
  const cdouble lam = lambda_param(fiber, power, omega);
  return lam.imag() == 0.0 ? lam.real() : 0.0;
}

GainCurve mi_gain_curve(const FiberParams& fiber, double power, const FrequencyGrid& grid) {
  GainCurve curve{grid, {}, {}};
  curve.lambda_vals.reserve(grid.size());
  curve.gain_vals.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    curve.lambda_vals.push_back(lambda_param(fiber, power, grid[i]));
    curve.gain_vals.push_back(mi_gain(fiber, power, grid[i]));
  }
  return curve;
}

double mi_peak_detuning(const FiberParams& fiber, double power) {
  if (!(fiber.beta2 < 0.0)) throw ZeroGain();
  return std::sqrt(2.0 * fiber.gamma * power / -fiber.beta2);
}

double mi_support_halfwidth(const FiberParams& fiber, double power) {
  if (!(fiber.beta2 < 0.0)) throw ZeroGain();
  return 2.0 * std::sqrt(fiber.gamma * power / -fiber.beta2);
}

AsymptoticFlux mi_asymptotic_flux(const FiberParams& fiber, double power, double omega) {
  const double g = mi_gain(fiber, power, omega);
  if (!(g > 0.0)) throw ZeroGain();
  const double gp = fiber.gamma * power;
  return {gp * gp / (4.0 * g * g) * std::exp(2.0 * g * fiber.length) / kTwoPi,
          g * fiber.length >= 3.0};
}

double bandwidth_ratio(const FiberParams& fiber, double power, double length) {
  if (fiber.beta2 == 0.0) throw ZeroDispersion();
  const double b2 = std::abs(fiber.beta2);
  const double smi = 4.0 * std::sqrt(fiber.gamma * power / b2);
  const double scal = 2.0 * std::sqrt(kTwoPi / (b2 * length));
  return smi / scal;
}

}  // namespace fps
