#include "fps/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <exception>
#include <thread>

#include "fps/errors.hpp"
#include "fps/exact_dynamics.hpp"
#include "fps/lb_scattering.hpp"

namespace fps {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::FirstOrder: return "first-order";
    case Method::ExactOde: return "exact-ode";
    case Method::ClosedForm: return "closed-form";
  }
  return "?";
}

std::string_view to_string(Regime r) { return r == Regime::HB ? "HB" : "LB"; }

namespace {

class Fnv1a {
public:
  void add(double v) { add_bytes(std::bit_cast<std::uint64_t>(v)); }
  void add_int(std::int64_t v) { add_bytes(static_cast<std::uint64_t>(v)); }
  std::uint64_t value() const { return h_; }

private:
  void add_bytes(std::uint64_t bits) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (bits >> (8 * i)) & 0xffu;
      h_ *= 0x100000001b3ull;
    }
  }
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

}  // namespace

std::uint64_t params_hash(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                          Method method, const FrequencyGrid& grid, std::optional<int> steps) {
  Fnv1a h;
  for (double v : {fiber.gamma, fiber.beta2, fiber.delta_beta0, fiber.delta_beta1,
                   fiber.beta1_ref, fiber.length, pump.p0x, pump.p0y, pump.theta0x,
                   pump.theta0y, pump.duration.value_or(-1.0), grid.omega_min(),
                   grid.omega_max()}) {
    h.add(v);
  }
  h.add_int(static_cast<std::int64_t>(grid.size()));
  h.add_int(static_cast<std::int64_t>(regime));
  h.add_int(static_cast<std::int64_t>(method));
  h.add_int(steps.value_or(-1));
  return h.value();
}

TwoPhotonAmplitude amplitude_spectrum(const FiberParams& fiber, const PumpConfig& pump,
                                      Channel channel, const FrequencyGrid& grid) {
  TwoPhotonAmplitude a{channel, grid, {}, params_hash(fiber, pump, Regime::HB,
                                                      Method::FirstOrder, grid)};
  a.values.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) a.values.push_back(xi_hb(fiber, pump, channel, grid[i]));
  return a;
}

FluxPair flux_at(const FiberParams& fiber, const PumpConfig& pump, Regime regime, Method method,
                 double omega, std::optional<int> steps) {
  switch (method) {
    case Method::FirstOrder:
      return regime == Regime::HB ? flux_hb(fiber, pump, omega) : flux_lb(fiber, pump, omega);
    case Method::ClosedForm: return closed_form_flux(fiber, pump, regime, omega);
    case Method::ExactOde: {
      if (regime == Regime::LB) {
        FiberParams f = fiber;
        PumpConfig p = pump;
        const bool swapped = to_x_pumped(f, p);
        FluxPair out = flux_from_transfer(integrate_transfer(f, p, regime, omega, steps));
        if (swapped) std::swap(out.f_x, out.f_y);
        return out;
      }
      return flux_from_transfer(integrate_transfer(fiber, pump, regime, omega, steps));
    }
  }
  return {};
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

SpectrumRecord compute_spectrum(const FiberParams& fiber, const PumpConfig& pump, Regime regime,
                                Method method, const FrequencyGrid& grid, unsigned threads,
                                std::optional<int> steps) {
  SpectrumRecord rec{grid, std::vector<double>(grid.size()), std::vector<double>(grid.size()),
                     method, regime, fiber.length,
                     params_hash(fiber, pump, regime, method, grid, steps)};
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const FluxPair f = flux_at(fiber, pump, regime, method, grid[i], steps);
    rec.f_x[i] = f.f_x;
    rec.f_y[i] = f.f_y;
  });
  return rec;
}

std::shared_ptr<const SpectrumRecord> SpectrumCache::get_or_compute(
    const FiberParams& fiber, const PumpConfig& pump, Regime regime, Method method,
    const FrequencyGrid& grid, unsigned threads, std::optional<int> steps) {
  const std::uint64_t key = params_hash(fiber, pump, regime, method, grid, steps);
  {
    std::lock_guard lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) {
      ++hits_;
      return it->second;
    }
  }
  auto rec = std::make_shared<const SpectrumRecord>(
      compute_spectrum(fiber, pump, regime, method, grid, threads, steps));
  std::lock_guard lock(mu_);
  return entries_.emplace(key, std::move(rec)).first->second;
}

std::size_t SpectrumCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::size_t SpectrumCache::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

}  // namespace fps
