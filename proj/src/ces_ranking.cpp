#include "chanrank/ces_ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>

#include "chanrank/errors.hpp"

namespace chanrank {
namespace {

struct Scored {
  UtilityValue u_snr;
  UtilityValue u_occ;
  double combined;
};

Scored score(const ChannelObservation& obs, const UtilityCurve& snr_curve,
             const UtilityCurve& occ_curve, const CesParams& params) {
  obs.validate();
  const UtilityValue u_snr = utility_snr(snr_curve, obs.snr_db);
  const UtilityValue u_occ = utility_occupancy(occ_curve, obs.occupancy);
  return {u_snr, u_occ, ces_combine_normalized(params, u_snr, u_occ)};
}

// Strict weak order on (combined desc, snr desc, occupancy asc, frequency desc);
// stable_sort supplies the final input-order tie-break.
bool utility_before(const RankedChannel& a, const RankedChannel& b) {
  if (a.combined != b.combined) return a.combined > b.combined;
  if (a.observation.snr_db != b.observation.snr_db) {
    return a.observation.snr_db > b.observation.snr_db;
  }
  if (a.observation.occupancy != b.observation.occupancy) {
    return a.observation.occupancy < b.observation.occupancy;
  }
  return a.observation.frequency_ghz > b.observation.frequency_ghz;
}

bool occupancy_before(const RankedChannel& a, const RankedChannel& b) {
  if (a.observation.occupancy != b.observation.occupancy) {
    return a.observation.occupancy < b.observation.occupancy;
  }
  if (a.observation.snr_db != b.observation.snr_db) {
    return a.observation.snr_db > b.observation.snr_db;
  }
  return a.observation.frequency_ghz < b.observation.frequency_ghz;
}

template <typename Less>
std::vector<RankedChannel> finish(std::vector<RankedChannel> rows, Less less) {
  std::stable_sort(rows.begin(), rows.end(), less);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<int>(i) + 1;
  return rows;
}

void require_nonempty(std::span<const ChannelObservation> observations) {
  if (observations.empty()) throw EmptyInputError("no observations to rank");
}

}  // namespace

void ChannelObservation::validate() const {
  if (!std::isfinite(frequency_ghz) || frequency_ghz <= 0.0) {
    throw DomainError("frequency must be positive");
  }
  if (!std::isfinite(snr_db)) throw DomainError("SNR must be finite");
  if (!(occupancy >= 0.0 && occupancy <= 1.0)) {
    throw DomainError("occupancy must lie in [0, 1]");
  }
}

CesParams::CesParams(double w_snr, double w_occ, double sigma) {
  if (!std::isfinite(w_snr) || !std::isfinite(w_occ) || w_snr <= 0.0 || w_occ <= 0.0) {
    throw ParameterError("CES weights must be positive");
  }
  if (!std::isfinite(sigma) || sigma <= 0.0 || sigma > 1.0) {
    throw ParameterError("CES sigma must lie in (0, 1]");
  }
  const double total = w_snr + w_occ;
  w_snr_ = w_snr / total;
  w_occ_ = w_occ / total;
  sigma_ = sigma;
}

std::optional<double> CesParams::rho() const noexcept {
  if (perfect_substitutes()) return std::nullopt;
  return 1.0 / (1.0 - sigma_);
}

double CesParams::max_combined() const noexcept {
  const double e = 1.0 - sigma_;
  return std::pow(w_snr_, e) + std::pow(w_occ_, e);
}

double ces_combine(const CesParams& params, UtilityValue u_snr, UtilityValue u_occ) {
  const double e = 1.0 - params.sigma();
  const double s = params.sigma();
  return std::pow(params.w_snr(), e) * std::pow(u_snr.value(), s) +
         std::pow(params.w_occ(), e) * std::pow(u_occ.value(), s);
}

double ces_combine_normalized(const CesParams& params, UtilityValue u_snr, UtilityValue u_occ) {
  return std::min(1.0, ces_combine(params, u_snr, u_occ) / params.max_combined());
}

int RankedChannel::combined_rounded() const noexcept {
  return static_cast<int>(std::floor(combined_display() + 0.5));
}

RankingModel RankingModel::defaults() {
  return {ranking_snr_curve(CurveFamily::TanhHalf), ranking_occupancy_curve(CurveFamily::TanhHalf),
          CesParams::defaults()};
}

std::vector<RankedChannel> rank_channels(std::span<const ChannelObservation> observations,
                                         const UtilityCurve& snr_curve,
                                         const UtilityCurve& occ_curve, const CesParams& params) {
  require_nonempty(observations);
  snr_curve.validate();
  occ_curve.validate();

  const auto n = static_cast<std::ptrdiff_t>(observations.size());
  std::vector<RankedChannel> rows(observations.size());
  std::vector<std::exception_ptr> failures(observations.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const auto& obs = observations[static_cast<std::size_t>(i)];
      const Scored s = score(obs, snr_curve, occ_curve, params);
      rows[static_cast<std::size_t>(i)] = {obs, s.u_snr, s.u_occ, s.combined, 0};
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return finish(std::move(rows), utility_before);
}

std::vector<RankedChannel> rank_channels(std::span<const ChannelObservation> observations,
                                         const RankingModel& model) {
  return rank_channels(observations, model.snr_curve, model.occ_curve, model.params);
}

std::vector<RankedChannel> rank_channels_serial(std::span<const ChannelObservation> observations,
                                                const UtilityCurve& snr_curve,
                                                const UtilityCurve& occ_curve,
                                                const CesParams& params) {
  require_nonempty(observations);
  std::vector<RankedChannel> rows;
  rows.reserve(observations.size());
  for (const auto& obs : observations) {
    const Scored s = score(obs, snr_curve, occ_curve, params);
    rows.push_back({obs, s.u_snr, s.u_occ, s.combined, 0});
  }
  return finish(std::move(rows), utility_before);
}

std::vector<RankedChannel> rank_by_occupancy(std::span<const ChannelObservation> observations,
                                             const RankingModel& model) {
  require_nonempty(observations);
  std::vector<RankedChannel> rows;
  rows.reserve(observations.size());
  for (const auto& obs : observations) {
    const Scored s = score(obs, model.snr_curve, model.occ_curve, model.params);
    rows.push_back({obs, s.u_snr, s.u_occ, s.combined, 0});
  }
  return finish(std::move(rows), occupancy_before);
}

}  // namespace chanrank
