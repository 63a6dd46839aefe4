#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chanrank/ces_ranking.hpp"
#include "chanrank/fit.hpp"
#include "chanrank/spectrum_sim.hpp"

namespace chanrank {

inline constexpr const char* kObservationHeader = "frequency_ghz,snr_db,occupancy_pct";
inline constexpr const char* kReferenceHeader = "index,rank";

// Observations CSV: header "frequency_ghz,snr_db,occupancy_pct", one record
// per line, occupancy in percent. All-or-nothing; throws ParseError with the
// 1-based line and column of the first problem.
std::vector<ChannelObservation> parse_observations(std::istream& in);

// Inverse of parse_observations for any list it produced.
void write_observations(std::ostream& out, std::span<const ChannelObservation> observations);

// Reference ranking CSV: header "index,rank", 0-based observation index.
std::vector<ReferenceEntry> parse_reference(std::istream& in);

// Scenario file (key = value, '#' comments). Top-level keys n_slots,
// samples_per_slot and target_pfa; each "[channel]" section opens a channel
// with keys frequency_ghz, true_snr_db, duty_cycle, mean_hold_slots and
// optional noise_power.
Scenario parse_scenario(std::istream& in);

// Shortest decimal text that parses back to the same double.
std::string format_shortest(double value);

// Percent text for a fraction, shortest form that percent_to_fraction maps
// back to the identical double ("1" for 0.01, "27.7" for 0.277).
std::string format_percent(double fraction);
double percent_to_fraction(std::string_view percent);

}  // namespace chanrank
