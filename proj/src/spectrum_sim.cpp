#include "chanrank/spectrum_sim.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <cstddef>
#include <exception>

#include "chanrank/errors.hpp"

namespace chanrank {
namespace {

std::mt19937_64 make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

void check_run(int n_slots, int samples_per_slot) {
  if (n_slots < 1) throw ParameterError("n_slots must be at least 1");
  if (samples_per_slot < 1) throw ParameterError("samples_per_slot must be at least 1");
}

void check_pfa(double target_pfa) {
  if (!(target_pfa > 0.0 && target_pfa < 1.0)) {
    throw DomainError("target false-alarm probability must lie in (0, 1)");
  }
}

}  // namespace

void SimChannelConfig::validate() const {
  if (!std::isfinite(frequency_ghz) || frequency_ghz <= 0.0) {
    throw ParameterError("channel frequency must be positive");
  }
  if (!std::isfinite(true_snr_db)) throw ParameterError("channel SNR must be finite");
  if (!(duty_cycle > 0.0 && duty_cycle < 1.0)) {
    throw ParameterError("duty_cycle must lie in (0, 1)");
  }
  if (!std::isfinite(mean_hold_slots) || mean_hold_slots < 1.0) {
    throw ParameterError("mean_hold_slots must be at least 1");
  }
  if (!std::isfinite(noise_power) || noise_power <= 0.0) {
    throw ParameterError("noise_power must be positive");
  }
}

MarkovRates markov_rates(const SimChannelConfig& config) {
  config.validate();
  const double d = config.duty_cycle;
  const double h = config.mean_hold_slots;
  // Mean sojourns T_on, T_off with T_on / (T_on + T_off) = d; the shorter is h.
  const double t_on = d <= 0.5 ? h : h * d / (1.0 - d);
  const double t_off = d <= 0.5 ? h * (1.0 - d) / d : h;
  return {1.0 / t_on, 1.0 / t_off};
}

EnergyMeter::EnergyMeter(std::uint64_t seed, double noise_power, int samples_per_slot)
    : engine_(make_engine(seed)),
      noise_(0.0, std::sqrt(noise_power)),
      noise_power_(noise_power),
      samples_per_slot_(samples_per_slot) {
  if (!std::isfinite(noise_power) || noise_power <= 0.0) {
    throw ParameterError("noise_power must be positive");
  }
  if (samples_per_slot < 1) throw ParameterError("samples_per_slot must be at least 1");
}

double EnergyMeter::measure(ChannelState state, double snr_db) {
  const double amplitude =
      state == ChannelState::On ? std::sqrt(std::pow(10.0, snr_db / 10.0) * noise_power_) : 0.0;
  double sum = 0.0;
  for (int i = 0; i < samples_per_slot_; ++i) {
    const double sample = amplitude + noise_(engine_);
    sum += sample * sample;
  }
  return sum / samples_per_slot_;
}

Decision energy_detect(double measured_energy, double threshold) {
  if (std::isnan(measured_energy) || measured_energy < 0.0) {
    throw DomainError("measured energy must be non-negative");
  }
  if (!(threshold > 0.0)) throw ParameterError("detector threshold must be positive");
  return measured_energy > threshold ? Decision::Busy : Decision::Idle;
}

double false_alarm_probability(double threshold, int samples_per_slot, double noise_power) {
  if (samples_per_slot < 1) throw ParameterError("samples_per_slot must be at least 1");
  if (!(noise_power > 0.0)) throw ParameterError("noise_power must be positive");
  if (threshold <= 0.0) return 1.0;
  // N * mean / noise_power ~ chi-square(N); its tail is Q(N/2, x/2).
  const double n = samples_per_slot;
  return boost::math::gamma_q(n / 2.0, n * threshold / (2.0 * noise_power));
}

double threshold_for_false_alarm(double target_pfa, int samples_per_slot, double noise_power) {
  check_pfa(target_pfa);
  double lo = 0.0;
  double hi = noise_power;
  while (false_alarm_probability(hi, samples_per_slot, noise_power) > target_pfa) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (false_alarm_probability(mid, samples_per_slot, noise_power) > target_pfa) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SensingTrace simulate_trace(const SimChannelConfig& config, int n_slots, int samples_per_slot,
                            std::uint64_t seed, double threshold) {
  config.validate();
  check_run(n_slots, samples_per_slot);
  if (!(threshold > 0.0)) throw ParameterError("detector threshold must be positive");

  const MarkovRates rates = markov_rates(config);
  EnergyMeter meter(seed, config.noise_power, samples_per_slot);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto& engine = meter.engine();

  SensingTrace trace;
  trace.samples_per_slot = samples_per_slot;
  trace.seed = seed;
  trace.threshold = threshold;
  trace.slots.reserve(static_cast<std::size_t>(n_slots));

  ChannelState state = unit(engine) < config.duty_cycle ? ChannelState::On : ChannelState::Off;
  for (int slot = 0; slot < n_slots; ++slot) {
    if (slot > 0) {
      const double leave = state == ChannelState::On ? rates.p_on_to_off : rates.p_off_to_on;
      if (unit(engine) < leave) {
        state = state == ChannelState::On ? ChannelState::Off : ChannelState::On;
      }
    }
    const double energy = meter.measure(state, config.true_snr_db);
    trace.slots.push_back({state, energy, energy_detect(energy, threshold)});
  }
  return trace;
}

SensingTrace simulate_trace(const SimChannelConfig& config, int n_slots, int samples_per_slot,
                            std::uint64_t seed) {
  config.validate();
  check_run(n_slots, samples_per_slot);
  return simulate_trace(
      config, n_slots, samples_per_slot, seed,
      threshold_for_false_alarm(kDefaultTargetPfa, samples_per_slot, config.noise_power));
}

double estimate_occupancy_frequentist(const SensingTrace& trace) {
  if (trace.slots.empty()) throw EmptyInputError("sensing trace has no slots");
  std::size_t busy = 0;
  for (const auto& slot : trace.slots) {
    if (slot.decision == Decision::Busy) ++busy;
  }
  return static_cast<double>(busy) / static_cast<double>(trace.slots.size());
}

ChannelObservation observe_channel(const SimChannelConfig& config, int n_slots,
                                   int samples_per_slot, double target_pfa, std::uint64_t seed) {
  config.validate();
  check_run(n_slots, samples_per_slot);
  const double threshold =
      threshold_for_false_alarm(target_pfa, samples_per_slot, config.noise_power);
  const SensingTrace trace = simulate_trace(config, n_slots, samples_per_slot, seed, threshold);
  return {config.frequency_ghz, config.true_snr_db, estimate_occupancy_frequentist(trace)};
}

std::uint64_t channel_seed(std::uint64_t seed, std::size_t index) noexcept {
  // SplitMix64 finalizer over (seed, index).
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<ChannelObservation> simulate_scenario(const Scenario& scenario, std::uint64_t seed) {
  check_pfa(scenario.target_pfa);
  check_run(scenario.n_slots, scenario.samples_per_slot);
  const auto n = static_cast<std::ptrdiff_t>(scenario.channels.size());
  std::vector<ChannelObservation> out(scenario.channels.size());
  std::vector<std::exception_ptr> failures(scenario.channels.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = observe_channel(scenario.channels[k], scenario.n_slots, scenario.samples_per_slot,
                               scenario.target_pfa, channel_seed(seed, k));
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return out;
}

std::vector<ChannelObservation> simulate_scenario_serial(const Scenario& scenario,
                                                         std::uint64_t seed) {
  check_pfa(scenario.target_pfa);
  check_run(scenario.n_slots, scenario.samples_per_slot);
  std::vector<ChannelObservation> out;
  out.reserve(scenario.channels.size());
  for (std::size_t k = 0; k < scenario.channels.size(); ++k) {
    out.push_back(observe_channel(scenario.channels[k], scenario.n_slots,
                                  scenario.samples_per_slot, scenario.target_pfa,
                                  channel_seed(seed, k)));
  }
  return out;
}

}  // namespace chanrank
