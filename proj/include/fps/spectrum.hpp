#pragma once

// Spectrum assembly over a detuning grid, shared by all solution methods.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <vector>

#include "fps/fiber_model.hpp"
#include "fps/hb_scattering.hpp"

namespace fps {

enum class Method { FirstOrder, ExactOde, ClosedForm };

std::string_view to_string(Method m);
std::string_view to_string(Regime r);

struct SpectrumRecord {
  FrequencyGrid grid;
  std::vector<double> f_x;  ///< photons per unit time per unit angular frequency
  std::vector<double> f_y;
  Method method = Method::FirstOrder;
  Regime regime = Regime::HB;
  double length = 0.0;
  std::uint64_t params_hash = 0;
};

struct TwoPhotonAmplitude {
  Channel channel = Channel::XX;
  FrequencyGrid grid;
  std::vector<cdouble> values;
  std::uint64_t params_hash = 0;
};

/// Provenance token: FNV-1a over every parameter that enters a spectrum.
std::uint64_t params_hash(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                          Method method, const FrequencyGrid& grid,
                          std::optional<int> steps = std::nullopt);

/// HB amplitude of one channel sampled on a grid.
TwoPhotonAmplitude amplitude_spectrum(const FiberParams& fiber, const PumpConfig& pump,
                                      Channel channel, const FrequencyGrid& grid);

/// Flux at one detuning by the requested method.
FluxPair flux_at(const FiberParams& fiber, const PumpConfig& pump, Regime regime, Method method,
                 double omega, std::optional<int> steps = std::nullopt);

/// Runs fn(i) for i in [0, n) on `threads` workers (static partition).
/// Each index must write only its own output slot.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Spectrum on the grid. Results do not depend on `threads`.
SpectrumRecord compute_spectrum(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                                Method method, const FrequencyGrid& grid, unsigned threads = 1,
                                std::optional<int> steps = std::nullopt);

/// Thread-safe memo of computed spectra keyed by params_hash.
class SpectrumCache {
public:
  std::shared_ptr<const SpectrumRecord> get_or_compute(const FiberParams& fiber,
                                                       const PumpConfig& pump, Regime regime,
                                                       Method method, const FrequencyGrid& grid,
                                                       unsigned threads = 1,
                                                       std::optional<int> steps = std::nullopt);
  std::size_t size() const;
  std::size_t hits() const;

private:
  mutable std::mutex mu_;
  std::map<std::uint64_t, std::shared_ptr<const SpectrumRecord>> entries_;
  std::size_t hits_ = 0;
};

}  // namespace fps
