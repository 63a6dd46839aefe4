#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chanrank/ces_ranking.hpp"

namespace chanrank {

struct SimChannelConfig {
  double frequency_ghz = 1.0;
  double true_snr_db = 0.0;    // SNR while the primary user is ON
  double duty_cycle = 0.5;     // stationary P(ON), in (0, 1)
  double mean_hold_slots = 1;  // mean sojourn of the rarer state, >= 1
  double noise_power = 1.0;    // linear noise variance

  void validate() const;
};

enum class ChannelState : std::uint8_t { Off, On };
enum class Decision : std::uint8_t { Idle, Busy };

struct SlotRecord {
  ChannelState true_state;
  double measured_energy;
  Decision decision;
};

struct SensingTrace {
  std::vector<SlotRecord> slots;
  int samples_per_slot = 0;
  std::uint64_t seed = 0;
  double threshold = 0.0;
};

// Per-slot switching probabilities of the two-state ON/OFF chain.
//
// The rarer state has mean sojourn mean_hold_slots; the other state's
// sojourn is stretched so that the stationary ON probability is duty_cycle:
//   p_on_off / (p_on_off + p_off_on) = 1 - duty_cycle.
struct MarkovRates {
  double p_on_to_off;
  double p_off_to_on;
};
MarkovRates markov_rates(const SimChannelConfig& config);

// Energy statistic of one sensing slot: the mean of N squared real samples.
// OFF samples are N(0, noise_power); ON samples add a constant amplitude
// sqrt(snr_linear * noise_power).
class EnergyMeter {
 public:
  EnergyMeter(std::uint64_t seed, double noise_power, int samples_per_slot);

  double measure(ChannelState state, double snr_db);
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> noise_;
  double noise_power_;
  int samples_per_slot_;
};

// Busy iff energy is strictly above the threshold. Throws DomainError on
// negative energy, ParameterError on a non-positive threshold.
Decision energy_detect(double measured_energy, double threshold);

// P(mean of N squared N(0, noise_power) samples > threshold).
double false_alarm_probability(double threshold, int samples_per_slot, double noise_power);

// Inverts false_alarm_probability by bisection (1e-10 relative tolerance).
double threshold_for_false_alarm(double target_pfa, int samples_per_slot, double noise_power);

inline constexpr double kDefaultTargetPfa = 0.01;

// Deterministic in (config, n_slots, samples_per_slot, seed, threshold). The
// first slot's state is drawn from the stationary distribution.
SensingTrace simulate_trace(const SimChannelConfig& config, int n_slots, int samples_per_slot,
                            std::uint64_t seed, double threshold);

// As above, with the threshold set for kDefaultTargetPfa.
SensingTrace simulate_trace(const SimChannelConfig& config, int n_slots, int samples_per_slot,
                            std::uint64_t seed);

// Busy slots / total slots. Throws EmptyInputError on an empty trace.
double estimate_occupancy_frequentist(const SensingTrace& trace);

ChannelObservation observe_channel(const SimChannelConfig& config, int n_slots,
                                   int samples_per_slot, double target_pfa, std::uint64_t seed);

struct Scenario {
  int n_slots = 10000;
  int samples_per_slot = 100;
  double target_pfa = kDefaultTargetPfa;
  std::vector<SimChannelConfig> channels;
};

// Seed for the index-th channel of a scenario run with the given seed.
std::uint64_t channel_seed(std::uint64_t seed, std::size_t index) noexcept;

// One observation per scenario channel, channels simulated in parallel.
std::vector<ChannelObservation> simulate_scenario(const Scenario& scenario, std::uint64_t seed);
std::vector<ChannelObservation> simulate_scenario_serial(const Scenario& scenario,
                                                         std::uint64_t seed);

}  // namespace chanrank
