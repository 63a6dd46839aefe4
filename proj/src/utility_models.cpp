#include "chanrank/utility_models.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "chanrank/errors.hpp"

namespace chanrank {
namespace {

constexpr std::array<std::pair<CurveFamily, std::string_view>, 4> kFamilyNames{{
    {CurveFamily::LogisticMidpoint, "logistic-midpoint"},
    {CurveFamily::Logistic, "logistic"},
    {CurveFamily::TanhScaled, "tanh-scaled"},
    {CurveFamily::TanhHalf, "tanh-half"},
}};

double raw_value(const UtilityCurve& curve, double z) {
  switch (curve.family) {
    case CurveFamily::LogisticMidpoint:
      return curve.max_utility / (1.0 + std::exp(-z));
    case CurveFamily::Logistic: {
      // e^z / (1 + e^z), rewritten on the positive side so e^z cannot overflow.
      if (z <= 0.0) {
        const double e = std::exp(z);
        return curve.max_utility * (e / (1.0 + e));
      }
      return curve.max_utility / (1.0 + std::exp(-z));
    }
    case CurveFamily::TanhScaled:
      return curve.input_max * (1.0 + std::tanh(z));
    case CurveFamily::TanhHalf:
      return 0.5 + 0.5 * std::tanh(z);
  }
  throw ParameterError("unknown curve family");
}

UtilityValue evaluate(const UtilityCurve& curve, double z) {
  return UtilityValue::checked(raw_value(curve, z) / intrinsic_max(curve));
}

}  // namespace

std::string_view to_string(CurveFamily family) noexcept {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "unknown";
}

std::optional<CurveFamily> parse_curve_family(std::string_view name) noexcept {
  for (const auto& [f, n] : kFamilyNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

void UtilityCurve::validate() const {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw ParameterError("curve alpha must be positive and finite");
  }
  if (!std::isfinite(max_utility) || max_utility <= 0.0) {
    throw ParameterError("curve max_utility must be positive and finite");
  }
  if (!std::isfinite(midpoint) || !std::isfinite(input_max) || input_max <= midpoint) {
    throw ParameterError("curve input_max must exceed midpoint");
  }
  if (family == CurveFamily::TanhScaled && input_max <= 0.0) {
    throw ParameterError("tanh-scaled curve needs a positive input_max");
  }
}

double intrinsic_max(const UtilityCurve& curve) {
  switch (curve.family) {
    case CurveFamily::LogisticMidpoint:
    case CurveFamily::Logistic:
      return curve.max_utility;
    case CurveFamily::TanhScaled:
      return 2.0 * curve.input_max;
    case CurveFamily::TanhHalf:
      return 1.0;
  }
  throw ParameterError("unknown curve family");
}

UtilityValue UtilityValue::checked(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError("utility " + std::to_string(value) + " outside [0, 1]");
  }
  return UtilityValue(value);
}

UtilityValue utility_snr(const UtilityCurve& curve, double snr_db) {
  curve.validate();
  if (!std::isfinite(snr_db)) throw DomainError("SNR must be finite");
  return evaluate(curve, curve.alpha * (snr_db - curve.midpoint));
}

UtilityValue utility_occupancy(const UtilityCurve& curve, double occupancy) {
  curve.validate();
  if (!(occupancy >= 0.0 && occupancy <= 1.0)) {
    throw DomainError("occupancy must lie in [0, 1]");
  }
  return evaluate(curve, -curve.alpha * (occupancy - curve.midpoint));
}

UtilityValue utility_sinr_hard(double sinr_db, double threshold_db) {
  if (!std::isfinite(sinr_db) || !std::isfinite(threshold_db)) {
    throw DomainError("SINR and threshold must be finite");
  }
  return UtilityValue::checked(sinr_db >= threshold_db ? 1.0 : 0.0);
}

std::vector<CurveSample> sample_curve(const UtilityCurve& curve, double lo, double hi,
                                      int n_points, CurveSide side) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ParameterError("sample domain must satisfy lo < hi");
  }
  if (n_points < 2) throw ParameterError("need at least two sample points");

  std::vector<CurveSample> samples;
  samples.reserve(static_cast<std::size_t>(n_points));
  const double span = hi - lo;
  for (int i = 0; i < n_points; ++i) {
    const double x = (i == n_points - 1) ? hi : lo + span * i / (n_points - 1);
    const UtilityValue u =
        side == CurveSide::Snr ? utility_snr(curve, x) : utility_occupancy(curve, x);
    samples.push_back({x, u});
  }
  return samples;
}

UtilityCurve sweep_snr_curve(CurveFamily family) {
  switch (family) {
    case CurveFamily::LogisticMidpoint:
    case CurveFamily::Logistic:
      return {family, 0.2, 100.0, 0.0, 20.0};
    case CurveFamily::TanhScaled:
      return {family, 0.1, 100.0, 0.0, 20.0};
    case CurveFamily::TanhHalf:
      return {family, 0.5, 1.0, 0.0, 20.0};
  }
  throw ParameterError("unknown curve family");
}

UtilityCurve sweep_occupancy_curve(CurveFamily family) {
  const double alpha = family == CurveFamily::TanhHalf ? 0.5 : 5.0;
  const double max_utility = family == CurveFamily::TanhHalf ? 1.0 : 100.0;
  return {family, alpha, max_utility, 0.5, 1.0};
}

UtilityCurve ranking_snr_curve(CurveFamily family) {
  UtilityCurve curve = sweep_snr_curve(family);
  if (family == CurveFamily::TanhHalf) curve.alpha = 0.1;
  return curve;
}

UtilityCurve ranking_occupancy_curve(CurveFamily family) { return sweep_occupancy_curve(family); }

}  // namespace chanrank
