#include "chanrank/fit.hpp"

#include <cmath>
#include <cstddef>
#include <exception>
#include <string>
#include <unordered_set>

#include "chanrank/errors.hpp"

namespace chanrank {
namespace {

// Values k * step for k in [first, last], snapped to 12 decimals so that
// 3 * 0.1 is 0.3 and not 0.30000000000000004.
std::vector<double> steps(double step, long first, long last) {
  std::vector<double> out;
  for (long k = first; k <= last; ++k) {
    out.push_back(std::round(static_cast<double>(k) * step * 1e12) / 1e12);
  }
  return out;
}

long parts_of_one(double step, const char* what) {
  if (!std::isfinite(step) || step <= 0.0 || step > 1.0) {
    throw ParameterError(std::string(what) + " step must lie in (0, 1]");
  }
  const double parts = 1.0 / step;
  const long n = std::lround(parts);
  if (std::abs(parts - static_cast<double>(n)) > 1e-9) {
    throw ParameterError(std::string(what) + " step must divide 1 evenly");
  }
  return n;
}

// Inputs shared by every grid point: per-reference-entry utilities and the
// reference scores (negated ranks, so larger is better for both series).
struct Prepared {
  std::vector<UtilityValue> u_snr;
  std::vector<UtilityValue> u_occ;
  std::vector<double> reference_score;
};

Prepared prepare(std::span<const ChannelObservation> observations,
                 std::span<const ReferenceEntry> reference, const UtilityCurve& snr_curve,
                 const UtilityCurve& occ_curve, const FitGrid& grid) {
  if (grid.sigmas.empty() || grid.w_snrs.empty()) throw ParameterError("fit grid is empty");
  if (reference.size() < 2) throw ConsistencyError("reference ranking needs at least two entries");

  Prepared p;
  std::unordered_set<std::size_t> seen;
  for (const auto& entry : reference) {
    if (entry.index >= observations.size()) {
      throw ConsistencyError("reference index " + std::to_string(entry.index) +
                             " does not name an observation");
    }
    if (!seen.insert(entry.index).second) {
      throw ConsistencyError("reference index " + std::to_string(entry.index) + " listed twice");
    }
    if (entry.rank < 1) throw ConsistencyError("reference ranks start at 1");
    const auto& obs = observations[entry.index];
    obs.validate();
    p.u_snr.push_back(utility_snr(snr_curve, obs.snr_db));
    p.u_occ.push_back(utility_occupancy(occ_curve, obs.occupancy));
    p.reference_score.push_back(-static_cast<double>(entry.rank));
  }
  return p;
}

double score_point(const Prepared& p, const CesParams& params, std::vector<double>& scratch) {
  scratch.resize(p.u_snr.size());
  for (std::size_t i = 0; i < p.u_snr.size(); ++i) {
    scratch[i] = ces_combine_normalized(params, p.u_snr[i], p.u_occ[i]);
  }
  return kendall_tau_b(scratch, p.reference_score);
}

CesParams params_at(const FitGrid& grid, std::size_t flat) {
  const double sigma = grid.sigmas[flat / grid.w_snrs.size()];
  const double w = grid.w_snrs[flat % grid.w_snrs.size()];
  return {w, 1.0 - w, sigma};
}

// Deterministic argmax over the flat score table, independent of how the
// table was filled.
FitResult select_best(const FitGrid& grid, const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    const CesParams a = params_at(grid, i);
    const CesParams b = params_at(grid, best);
    if (scores[i] > scores[best] ||
        (scores[i] == scores[best] &&
         (a.sigma() < b.sigma() || (a.sigma() == b.sigma() && a.w_snr() < b.w_snr())))) {
      best = i;
    }
  }
  return {params_at(grid, best), scores[best]};
}

void validate_grid(const FitGrid& grid) {
  for (double s : grid.sigmas) {
    if (!(s > 0.0 && s <= 1.0)) throw ParameterError("grid sigma outside (0, 1]");
  }
  for (double w : grid.w_snrs) {
    if (!(w > 0.0 && w < 1.0)) throw ParameterError("grid w_snr outside (0, 1)");
  }
}

}  // namespace

FitGrid FitGrid::defaults() { return uniform(0.1, 0.05); }

FitGrid FitGrid::uniform(double sigma_step, double w_step) {
  const long ns = parts_of_one(sigma_step, "sigma");
  const long nw = parts_of_one(w_step, "w_snr");
  if (nw < 2) throw ParameterError("w_snr step leaves no interior weights");
  return {steps(sigma_step, 1, ns), steps(w_step, 1, nw - 1)};
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ParameterError("tau-b series differ in length");
  if (x.size() < 2) throw ParameterError("tau-b needs at least two points");

  long long concordant = 0;
  long long discordant = 0;
  long long tied_x = 0;  // tied in x only
  long long tied_y = 0;  // tied in y only
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        ++tied_x;
      } else if (dy == 0.0) {
        ++tied_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const auto untied = static_cast<double>(concordant + discordant);
  const double denom = std::sqrt((untied + static_cast<double>(tied_x)) *
                                 (untied + static_cast<double>(tied_y)));
  if (denom == 0.0) return 0.0;
  return static_cast<double>(concordant - discordant) / denom;
}

FitResult fit_ces_params(std::span<const ChannelObservation> observations,
                         std::span<const ReferenceEntry> reference,
                         const UtilityCurve& snr_curve, const UtilityCurve& occ_curve,
                         const FitGrid& grid) {
  validate_grid(grid);
  const Prepared p = prepare(observations, reference, snr_curve, occ_curve, grid);

  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<double> scores(grid.size());
#pragma omp parallel
  {
    std::vector<double> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto flat = static_cast<std::size_t>(i);
      scores[flat] = score_point(p, params_at(grid, flat), scratch);
    }
  }
  return select_best(grid, scores);
}

FitResult fit_ces_params_serial(std::span<const ChannelObservation> observations,
                                std::span<const ReferenceEntry> reference,
                                const UtilityCurve& snr_curve, const UtilityCurve& occ_curve,
                                const FitGrid& grid) {
  validate_grid(grid);
  const Prepared p = prepare(observations, reference, snr_curve, occ_curve, grid);

  std::vector<double> scores(grid.size());
  std::vector<double> scratch;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    scores[i] = score_point(p, params_at(grid, i), scratch);
  }
  return select_best(grid, scores);
}

}  // namespace chanrank
