#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chanrank/ces_ranking.hpp"

namespace chanrank {

// One entry of a reference ranking: observation index -> rank (1 = best).
// Ranks may tie.
struct ReferenceEntry {
  std::size_t index;
  int rank;
};

struct FitGrid {
  std::vector<double> sigmas;
  std::vector<double> w_snrs;

  // sigma in {0.1, ..., 1.0}, w_snr in {0.05, ..., 0.95}.
  static FitGrid defaults();

  // sigma in {s, 2s, ..., 1}, w_snr in {w, 2w, ..., 1 - w}. Both steps must
  // divide 1 into a whole number of parts.
  static FitGrid uniform(double sigma_step, double w_step);

  std::size_t size() const noexcept { return sigmas.size() * w_snrs.size(); }
};

struct FitResult {
  CesParams params;
  double tau_b;
};

// Kendall rank correlation with tie correction. Pairs tied in both series
// are ignored; returns 0 when either series is constant. Requires equal
// lengths >= 2.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

// Grid search for the CES parameters whose induced ordering best matches the
// reference ranking (maximum tau-b; ties to smaller sigma, then smaller w_snr).
// Grid points are scored in parallel.
FitResult fit_ces_params(std::span<const ChannelObservation> observations,
                         std::span<const ReferenceEntry> reference,
                         const UtilityCurve& snr_curve, const UtilityCurve& occ_curve,
                         const FitGrid& grid = FitGrid::defaults());

FitResult fit_ces_params_serial(std::span<const ChannelObservation> observations,
                                std::span<const ReferenceEntry> reference,
                                const UtilityCurve& snr_curve, const UtilityCurve& occ_curve,
                                const FitGrid& grid = FitGrid::defaults());

}  // namespace chanrank
