#pragma once

#include <stdexcept>
#include <string>

namespace fps {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised for quantities that need a nonzero group mismatch (alpha, vector peak).
class DegenerateBirefringence : public Error {
public:
  DegenerateBirefringence() : Error("delta_beta1 is zero: quantity undefined (use the LB regime)") {}
};

class ZeroPower : public Error {
public:
  ZeroPower() : Error("pump power must be positive") {}
};

class ZeroDispersion : public Error {
public:
  ZeroDispersion() : Error("beta2 is zero: quantity undefined") {}
};

class ZeroGain : public Error {
public:
  ZeroGain() : Error("modulation-instability gain vanishes at this detuning") {}
};

/// LB formulas are written for a pump on a single optical axis.
class PumpNotOnAxis : public Error {
public:
  explicit PumpNotOnAxis(const std::string& what) : Error(what) {}
};

class NoFarDetunedPeak : public Error {
public:
  NoFarDetunedPeak() : Error("delta_beta0 * beta2 <= 0: no far-detuned LB vector peak") {}
};

/// The integrated transfer matrix broke the bosonic commutation relations.
class StepCountTooSmall : public Error {
public:
  explicit StepCountTooSmall(const std::string& what) : Error(what) {}
};

class EmptyState : public Error {
public:
  EmptyState() : Error("all two-photon amplitudes vanish at this detuning") {}
};

/// Invalid parameters or scenario input.
class InvalidInput : public Error {
public:
  explicit InvalidInput(const std::string& what) : Error(what) {}
};

}  // namespace fps
