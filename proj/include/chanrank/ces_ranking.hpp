#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "chanrank/utility_models.hpp"

namespace chanrank {

struct ChannelObservation {
  double frequency_ghz = 0.0;
  double snr_db = 0.0;
  double occupancy = 0.0;  // fraction in [0, 1]

  // Throws DomainError unless frequency > 0, snr finite, occupancy in [0, 1].
  void validate() const;

  bool operator==(const ChannelObservation&) const = default;
};

// Weights and elasticity of the CES combiner
//
//   U = w_snr^(1 - sigma) * U_snr^sigma + w_occ^(1 - sigma) * U_occ^sigma
//
// Weights are normalized to sum to one on construction. sigma lies in (0, 1];
// rho = 1 / (1 - sigma) has no finite value at sigma = 1 (perfect substitutes).
class CesParams {
 public:
  CesParams(double w_snr, double w_occ, double sigma);

  static CesParams defaults() { return {0.5, 0.5, 0.5}; }

  double w_snr() const noexcept { return w_snr_; }
  double w_occ() const noexcept { return w_occ_; }
  double sigma() const noexcept { return sigma_; }
  std::optional<double> rho() const noexcept;
  bool perfect_substitutes() const noexcept { return sigma_ == 1.0; }

  // Largest raw combined value, reached at U_snr = U_occ = 1.
  double max_combined() const noexcept;

  bool operator==(const CesParams&) const = default;

 private:
  double w_snr_;
  double w_occ_;
  double sigma_;
};

// Raw CES value, unscaled.
double ces_combine(const CesParams& params, UtilityValue u_snr, UtilityValue u_occ);

// ces_combine divided by params.max_combined(), so in [0, 1].
double ces_combine_normalized(const CesParams& params, UtilityValue u_snr, UtilityValue u_occ);

struct RankedChannel {
  ChannelObservation observation;
  UtilityValue u_snr;
  UtilityValue u_occ;
  double combined = 0.0;  // normalized to [0, 1]
  int rank = 0;           // 1 = best

  double combined_display() const noexcept { return combined * 100.0; }
  // Half-up rounding of combined_display(), as printed in text reports.
  int combined_rounded() const noexcept;
};

struct RankingModel {
  UtilityCurve snr_curve;
  UtilityCurve occ_curve;
  CesParams params = CesParams::defaults();

  // Tanh-half curves (SNR alpha 0.1, occupancy alpha 0.5 about 0.5) with
  // sigma = 0.5 and equal weights.
  static RankingModel defaults();
};

// Scores each observation and sorts by combined utility, descending. Ties go
// to higher SNR, then lower occupancy, then higher frequency, then input order.
// Utilities are evaluated in parallel; the result does not depend on the
// thread count. Throws EmptyInputError on an empty list.
std::vector<RankedChannel> rank_channels(std::span<const ChannelObservation> observations,
                                         const UtilityCurve& snr_curve,
                                         const UtilityCurve& occ_curve, const CesParams& params);
std::vector<RankedChannel> rank_channels(std::span<const ChannelObservation> observations,
                                         const RankingModel& model);

// Single-threaded reference for rank_channels.
std::vector<RankedChannel> rank_channels_serial(std::span<const ChannelObservation> observations,
                                                const UtilityCurve& snr_curve,
                                                const UtilityCurve& occ_curve,
                                                const CesParams& params);

// Occupancy-only baseline: ascending occupancy, ties to higher SNR then lower
// frequency. Utility fields are filled from the model but do not affect order.
std::vector<RankedChannel> rank_by_occupancy(std::span<const ChannelObservation> observations,
                                             const RankingModel& model = RankingModel::defaults());

}  // namespace chanrank
