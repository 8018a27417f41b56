#pragma once

// Exact linearized dynamics of the pump fluctuations.
//
// For one detuning Omega the coupled-mode equations close on the four
// operators (a_x(Omega), a_x^+(-Omega), a_y(Omega), a_y^+(-Omega)). They are
// integrated as d/dz M = A(z) M, M(0) = 1, in the rotating frame where A(z)
// carries the phase-mismatch oscillations explicitly. M is a Bogoliubov
// transformation: M J M^+ = J with J = diag(1, -1, 1, -1).

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fps/fiber_model.hpp"
#include "fps/hb_scattering.hpp"
#include "fps/numeric.hpp"

namespace fps {

using Matrix4 = Eigen::Matrix4cd;

/// Basis index of each operator in the 4x4 system.
enum Mode : int { kAxOmega = 0, kAxDagMinus = 1, kAyOmega = 2, kAyDagMinus = 3 };

/// One entry of A(z): amplitude * exp(-i rate z).
struct CoefficientTerm {
  int row = 0;
  int col = 0;
  cdouble amplitude;
  double rate = 0.0;  ///< 1/km
};

/// Nonzero entries of A(z). LB requires pump.p0y == 0.
std::vector<CoefficientTerm> coefficient_terms(const FiberParams& fiber, const PumpConfig& pump,
                                               Regime regime, double omega);

Matrix4 build_coefficient_matrix(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                                 double omega, double z);

/// J = diag(+1, -1, +1, -1).
const Matrix4& bogoliubov_metric();

/// max |M J M^+ - J|.
double symplectic_defect(const Matrix4& m);

struct TransferMatrix {
  double omega = 0.0;
  Matrix4 matrix = Matrix4::Identity();
  int steps = 0;
  double defect = 0.0;
};

/// Lower bound on the RK4 step count: ceil(10 L max|A|).
int minimum_step_count(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                       double omega);

/// Default step count. Besides the coupling strength it resolves the fastest
/// phase oscillation of A(z) with at most kMaxPhasePerStep radians per step.
int default_step_count(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                       double omega);

inline constexpr double kMaxPhasePerStep = 0.05;
inline constexpr double kDefectTolerance = 1e-6;

/// Bare fixed-step RK4 transfer matrix with n steps; no step policy or
/// defect check. Used for convergence studies.
Matrix4 rk4_transfer(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                     double omega, int n);

/// Fixed-step RK4 from z = 0 to fiber.length.
/// Throws InvalidInput if steps is below minimum_step_count and
/// StepCountTooSmall if the symplectic defect exceeds kDefectTolerance
/// (times max|M_ij|^2 once the gain makes that exceed 1).
TransferMatrix integrate_transfer(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                                  double omega, std::optional<int> steps = std::nullopt);

/// Vacuum-input flux: sum of |M|^2 over the creation-operator columns, / 2pi.
FluxPair flux_from_transfer(const TransferMatrix& m);

/// lambda = sqrt((gamma P)^2 - (2 gamma P + beta2 Omega^2)^2 / 4), principal branch.
cdouble lambda_param(const FiberParams& fiber, double power, double omega);

/// Closed-form flux of a single parametric process with coupling kappa (1/km)
/// and phase mismatch k (1/km): kappa^2 |sinh(lambda L)/lambda|^2 / 2pi,
/// lambda^2 = kappa^2 - k^2/4.
double parametric_flux(double coupling, double mismatch, double length);

double exact_scalar_flux(const FiberParams& fiber, double power, double omega);

/// Closed-form flux on both axes. Available when each output mode is fed by
/// one process only: HB with a single pumped axis, or LB.
FluxPair closed_form_flux(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                          double omega);

bool has_closed_form(const PumpConfig& pump, Regime regime);

struct GainCurve {
  FrequencyGrid grid;
  std::vector<cdouble> lambda_vals;
  std::vector<double> gain_vals;  ///< 1/km
};

/// Re(lambda) where lambda is real, else 0.
double mi_gain(const FiberParams& fiber, double power, double omega);
GainCurve mi_gain_curve(const FiberParams& fiber, double power, const FrequencyGrid& grid);
/// sqrt(2 gamma P / |beta2|); throws ZeroGain unless beta2 < 0.
double mi_peak_detuning(const FiberParams& fiber, double power);
/// 2 sqrt(gamma P / |beta2|); throws ZeroGain unless beta2 < 0.
double mi_support_halfwidth(const FiberParams& fiber, double power);

struct AsymptoticFlux {
  double flux = 0.0;
  bool valid = false;  ///< g(Omega) L >= 3
};

AsymptoticFlux mi_asymptotic_flux(const FiberParams& fiber, double power, double omega);

/// Width of the MI gain band over the scalar FPS width, sqrt(2/pi) sqrt(gamma P L).
double bandwidth_ratio(const FiberParams& fiber, double power, double length);

}  // namespace fps
