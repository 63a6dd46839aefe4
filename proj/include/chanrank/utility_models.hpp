#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace chanrank {

// The four sigmoid-family curves used to turn a channel parameter into a
// usefulness score. Every family is evaluated on z = alpha * (x - midpoint).
enum class CurveFamily {
  LogisticMidpoint,  // A / (1 + e^-z)
  Logistic,          // A * e^z / (1 + e^z)
  TanhScaled,        // X_max * (1 + tanh z)
  TanhHalf,          // 1/2 + 1/2 * tanh z
};

std::string_view to_string(CurveFamily family) noexcept;
std::optional<CurveFamily> parse_curve_family(std::string_view name) noexcept;

// Which way a curve faces. Snr curves rise with the input; Occupancy curves
// are the exact reflection about the midpoint and fall with the input.
enum class CurveSide { Snr, Occupancy };

struct UtilityCurve {
  CurveFamily family = CurveFamily::TanhHalf;
  double alpha = 0.5;        // steepness
  double max_utility = 1.0;  // A; only used by the logistic families
  double midpoint = 0.0;     // X_o / Y_o, in input units
  double input_max = 20.0;   // X_max / Y_max, in input units

  // Throws ParameterError unless alpha > 0, max_utility > 0 and
  // input_max > midpoint (all finite).
  void validate() const;

  bool operator==(const UtilityCurve&) const = default;
};

// The value a family's raw output approaches as z -> +inf. Dividing by it
// maps every family onto [0, 1].
double intrinsic_max(const UtilityCurve& curve);

// A utility normalized to [0, 1]. Display scaling to [0, 100] is left to
// reports.
class UtilityValue {
 public:
  constexpr UtilityValue() = default;

  // Throws DomainError if value is outside [0, 1] or NaN.
  static UtilityValue checked(double value);

  constexpr double value() const noexcept { return value_; }
  constexpr double display() const noexcept { return value_ * 100.0; }

  constexpr auto operator<=>(const UtilityValue&) const = default;

 private:
  constexpr explicit UtilityValue(double v) : value_(v) {}
  double value_ = 0.0;
};

UtilityValue utility_snr(const UtilityCurve& curve, double snr_db);

// occupancy is a fraction in [0, 1].
UtilityValue utility_occupancy(const UtilityCurve& curve, double occupancy);

// Hard-decision SINR utility: 1 at or above the threshold, 0 below.
UtilityValue utility_sinr_hard(double sinr_db, double threshold_db);

struct CurveSample {
  double input;
  UtilityValue utility;
};

// n_points evenly spaced samples over [lo, hi], both endpoints included.
std::vector<CurveSample> sample_curve(const UtilityCurve& curve, double lo, double hi,
                                      int n_points, CurveSide side);

// Parameter presets.
//
// sweep_*: the curves behind the SNR sweep (-20..20 dB; logistic alpha 0.2,
// A = 100, X_o = 0; tanh-scaled alpha 0.1, X_max = 20; tanh-half in its
// printed tanh(X/2) form) and the occupancy sweep (alpha 5, or 0.5 for
// tanh-half, midpoint 0.5).
//
// ranking_snr_curve differs from sweep_snr_curve only for TanhHalf, which
// uses alpha 0.1 so that SNR keeps discriminating between 8 and 19 dB.
UtilityCurve sweep_snr_curve(CurveFamily family);
UtilityCurve sweep_occupancy_curve(CurveFamily family);
UtilityCurve ranking_snr_curve(CurveFamily family);
UtilityCurve ranking_occupancy_curve(CurveFamily family);

}  // namespace chanrank
