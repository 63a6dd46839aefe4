// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chanrank/ces_ranking.hpp"
#include "chanrank/cli.hpp"
#include "chanrank/fit.hpp"
#include "chanrank/io.hpp"
#include "chanrank/spectrum_sim.hpp"
#include "chanrank/utility_models.hpp"

using namespace chanrank;

namespace {

std::string data_path(const std::string& name) {
  return std::string(CHANRANK_TEST_DATA_DIR) + "/" + name;
}

std::vector<ChannelObservation> load_csv(const std::string& name) {
  std::ifstream in(data_path(name));
  return parse_observations(in);
}

// Collects failed checks of one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& text) { notes_.push_back(text); }

  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s;
  std::function<void(Checks&)> body;
};

// 1 / (1 + e^-z) and 0.5 (1 + tanh z) at the sweep endpoints, from a
// 40-digit mpmath evaluation.
constexpr double kLogisticAtMinus4 = 0.017986209962091558026;
constexpr double kLogisticAtPlus4 = 0.98201379003790844197;
constexpr double kHalfTanhAtMinus2 = 0.017986209962091558026;  // 0.5(1 + tanh(-2))
constexpr double kHalfTanhAtPlus2 = 0.98201379003790844197;
constexpr double kHalfTanhAtMinus10 = 2.0611536181902035814e-9;
constexpr double kHalfTanhAtPlus10 = 0.99999999793884638181;

constexpr std::array kFamilies{CurveFamily::LogisticMidpoint, CurveFamily::Logistic,
                               CurveFamily::TanhScaled, CurveFamily::TanhHalf};

void snr_curve_sweep(Checks& c) {
  for (auto family : kFamilies) {
    const std::string name(to_string(family));
    const UtilityCurve curve = sweep_snr_curve(family);
    const auto sweep = sample_curve(curve, -20.0, 20.0, 4001, CurveSide::Snr);
    bool increasing = true;
    for (std::size_t i = 1; i < sweep.size(); ++i) {
      increasing = increasing && sweep[i].utility > sweep[i - 1].utility;
    }
    c.expect(increasing, name + " not strictly increasing on [-20, 20] dB");

    double worst = 0.0;
    for (double d = 0.0; d <= 20.0; d += 0.01) {
      worst = std::max(worst, std::abs(utility_snr(curve, d).value() +
                                       utility_snr(curve, -d).value() - 1.0));
    }
    c.expect(worst <= 1e-12, name + " midpoint symmetry error " + num(worst));

    double lo_ref = 0.0;
    double hi_ref = 0.0;
    switch (family) {
      case CurveFamily::LogisticMidpoint:
      case CurveFamily::Logistic:
        lo_ref = kLogisticAtMinus4;
        hi_ref = kLogisticAtPlus4;
        break;
      case CurveFamily::TanhScaled:
        lo_ref = kHalfTanhAtMinus2;
        hi_ref = kHalfTanhAtPlus2;
        break;
      case CurveFamily::TanhHalf:
        lo_ref = kHalfTanhAtMinus10;
        hi_ref = kHalfTanhAtPlus10;
        break;
    }
    const double lo_err = std::abs(sweep.front().utility.value() - lo_ref);
    const double hi_err = std::abs(sweep.back().utility.value() - hi_ref);
    c.expect(lo_err <= 1e-9 && hi_err <= 1e-9,
             name + " endpoint error " + num(std::max(lo_err, hi_err)));
  }
}

void occupancy_curve_sweep(Checks& c) {
  for (auto family : kFamilies) {
    const std::string name(to_string(family));
    const UtilityCurve curve = sweep_occupancy_curve(family);
    const auto sweep = sample_curve(curve, 0.0, 1.0, 1001, CurveSide::Occupancy);
    bool decreasing = true;
    for (std::size_t i = 1; i < sweep.size(); ++i) {
      decreasing = decreasing && sweep[i].utility < sweep[i - 1].utility;
    }
    c.expect(decreasing, name + " not strictly decreasing on [0, 1]");
  }

  const auto half =
      sample_curve(sweep_occupancy_curve(CurveFamily::TanhHalf), 0.0, 1.0, 10001, CurveSide::Occupancy);
  const double u0 = half.front().utility.value();
  const double u1 = half.back().utility.value();
  double deviation = 0.0;
  for (const auto& s : half) {
    const double line = u0 + (u1 - u0) * s.input;
    deviation = std::max(deviation, std::abs(s.utility.value() - line));
  }
  c.note("tanh-half max deviation from chord " + num(deviation));
  c.expect(deviation < 0.06, "tanh-half deviates from its chord by " + num(deviation));
}

void ces_algebra(Checks& c) {
  std::mt19937_64 rng(314159);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.01, 0.99);
  std::uniform_real_distribution<double> sigma(1e-6, 1.0);

  double worst_collapse = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double a = unit(rng);
    const double b = unit(rng);
    const double w = weight(rng);
    const double v = ces_combine(CesParams(w, 1.0 - w, 1.0), UtilityValue::checked(a),
                                 UtilityValue::checked(b));
    worst_collapse = std::max(worst_collapse, std::abs(v - (a + b)));
  }
  c.expect(worst_collapse <= std::numeric_limits<double>::epsilon(),
           "sigma=1 collapse error " + num(worst_collapse));

  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    double s = sigma(rng);
    while (s >= 1.0) s = sigma(rng);
    const double w = weight(rng);
    const CesParams p(w, 1.0 - w, s);
    double a = unit(rng);
    double b = unit(rng);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-9) continue;
    const auto other = UtilityValue::checked(unit(rng));
    const auto ua = UtilityValue::checked(a);
    const auto ub = UtilityValue::checked(b);
    if (!(ces_combine(p, ua, other) < ces_combine(p, ub, other))) ++violations;
    if (!(ces_combine(p, other, ua) < ces_combine(p, other, ub))) ++violations;
  }
  c.expect(violations == 0, std::to_string(violations) + " monotonicity violations");

  const CesParams half(0.5, 0.5, 0.5);
  const auto one = UtilityValue::checked(1.0);
  const double full = ces_combine(half, one, one);
  const double mixed = ces_combine(half, UtilityValue::checked(0.81), UtilityValue::checked(0.25));
  // 2 sqrt(0.5) and sqrt(0.5) (0.9 + 0.5), mpmath.
  c.expect(std::abs(full - 1.4142135623730950488) <= 1e-9, "CES(1, 1) = " + num(full));
  c.expect(std::abs(mixed - 0.98994949366116653416) <= 1e-9, "CES(0.81, 0.25) = " + num(mixed));
  c.expect(std::abs(ces_combine_normalized(half, UtilityValue::checked(0.81),
                                           UtilityValue::checked(0.25)) - 0.7) <= 1e-9,
           "normalized CES(0.81, 0.25) != 0.7");
}

std::vector<ReferenceEntry> survey_reference() {
  std::vector<ReferenceEntry> ref;
  for (std::size_t i = 0; i < 18; ++i) ref.push_back({i, static_cast<int>(i) + 1});
  return ref;
}

int rank_of(const std::vector<RankedChannel>& ranked, const ChannelObservation& obs) {
  for (const auto& r : ranked) {
    if (r.observation == obs) return r.rank;
  }
  return -1;
}

// Maximum over the default grid, from an independent Python search.
constexpr double kSurveyTauBDefaultGrid = 0.9836118442057922;

void survey_ranking(Checks& c) {
  const auto universe = load_csv("survey_union.csv");
  const auto model = RankingModel::defaults();
  const FitResult fit =
      fit_ces_params(universe, survey_reference(), model.snr_curve, model.occ_curve);
  c.note("fitted sigma=" + num(fit.params.sigma()) + " w_snr=" + num(fit.params.w_snr()) +
         " tau_b=" + num(fit.tau_b));
  c.expect(fit.tau_b >= 0.8, "tau-b " + num(fit.tau_b) + " < 0.8");
  c.expect(std::abs(fit.tau_b - kSurveyTauBDefaultGrid) <= 1e-12,
           "tau-b differs from the recorded oracle maximum");

  const auto ranked = rank_channels(universe, model.snr_curve, model.occ_curve, fit.params);
  c.expect(ranked[0].observation == ChannelObservation{2.462, 12, 0.01}, "rank 1 is not (2.462, 12, 1%)");
  c.expect(ranked[1].observation == ChannelObservation{2.437, 19, 0.06}, "rank 2 is not (2.437, 19, 6%)");

  const ChannelObservation red_a{5.765, -17, 0.01};
  const ChannelObservation red_b{5.765, -12, 0.05};
  int worst_good = 0;
  for (const auto& r : ranked) {
    if (r.observation.snr_db >= 5.0) worst_good = std::max(worst_good, r.rank);
  }
  const int ra = rank_of(ranked, red_a);
  const int rb = rank_of(ranked, red_b);
  c.note("red-flag utility ranks " + std::to_string(ra) + ", " + std::to_string(rb) +
         " (last SNR>=5 channel at " + std::to_string(worst_good) + ")");
  c.expect(ra > worst_good && rb > worst_good, "a red-flag channel outranks an SNR>=5 channel");

  const auto baseline = rank_by_occupancy(load_csv("occupancy_survey.csv"));
  const int ba = rank_of(baseline, red_a);
  const int bb = rank_of(baseline, red_b);
  c.note("red-flag baseline positions " + std::to_string(ba) + ", " + std::to_string(bb));
  c.expect(ba >= 1 && ba <= 4 && bb >= 1 && bb <= 4, "baseline does not place red flags in top 4");
}

void scenario_properties(Checks& c) {
  const RankingModel defaults = RankingModel::defaults();
  RankingModel fitted = defaults;
  fitted.params = CesParams(0.1, 0.9, 0.2);

  for (const auto& [label, model] : {std::pair{"default", defaults}, std::pair{"fitted", fitted}}) {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> snr(-25.0, 25.0);
    std::uniform_real_distribution<double> high_snr(10.0, 30.0);
    std::uniform_real_distribution<double> occ(0.0, 1.0);
    std::uniform_real_distribution<double> freq(0.5, 6.0);
    std::uniform_int_distribution<int> set_size(1, 10);
    const std::string tag = std::string(label) + ": ";

    auto random_set = [&] {
      std::vector<ChannelObservation> set(static_cast<std::size_t>(set_size(rng)));
      for (auto& o : set) o = {freq(rng), snr(rng), occ(rng)};
      return set;
    };

    int s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (int i = 0; i < 10000; ++i) {
      // (1) high SNR held fixed: more occupancy, less utility.
      const double x = high_snr(rng);
      double ya = occ(rng);
      double yb = occ(rng);
      if (ya > yb) std::swap(ya, yb);
      if (yb - ya > 1e-6) {
        const auto r = rank_channels_serial(
            std::vector<ChannelObservation>{{2.4, x, ya}, {2.4, x, yb}}, model.snr_curve,
            model.occ_curve, model.params);
        if (!(r[0].observation.occupancy == ya && r[0].combined > r[1].combined)) ++s1;
      }

      // (2) poor SNR with low occupancy ranks below good SNR with moderate occupancy.
      auto set = random_set();
      const ChannelObservation weak{freq(rng), -15.0, 0.05};
      const ChannelObservation good{freq(rng), 10.0, 0.30};
      set.push_back(weak);
      set.push_back(good);
      std::shuffle(set.begin(), set.end(), rng);
      auto ranked = rank_channels(set, model);
      if (!(rank_of(ranked, weak) > rank_of(ranked, good))) ++s2;

      // (3) Pareto consistency within a random set.
      const auto pool = random_set();
      ranked = rank_channels(pool, model);
      for (const auto& a : ranked) {
        for (const auto& b : ranked) {
          const bool dominates =
              a.observation.snr_db >= b.observation.snr_db &&
              a.observation.occupancy <= b.observation.occupancy &&
              (a.observation.snr_db > b.observation.snr_db ||
               a.observation.occupancy < b.observation.occupancy);
          if (dominates && a.rank > b.rank) ++s3;
        }
      }

      // (4) at the same low SNR, intermediate occupancy beats heavy occupancy.
      set = random_set();
      const ChannelObservation mid{freq(rng), 2.0, 0.50};
      const ChannelObservation busy{freq(rng), 2.0, 0.90};
      set.push_back(busy);
      set.push_back(mid);
      std::shuffle(set.begin(), set.end(), rng);
      ranked = rank_channels(set, model);
      if (!(rank_of(ranked, mid) < rank_of(ranked, busy))) ++s4;
    }
    c.expect(s1 == 0, tag + std::to_string(s1) + " occupancy-monotonicity violations");
    c.expect(s2 == 0, tag + std::to_string(s2) + " poor-SNR/low-occupancy violations");
    c.expect(s3 == 0, tag + std::to_string(s3) + " Pareto violations");
    c.expect(s4 == 0, tag + std::to_string(s4) + " intermediate-occupancy violations");
  }
}

void simulator_calibration(Checks& c) {
  for (const auto& [pfa, seed] : {std::pair{0.01, 101ULL}, std::pair{0.05, 102ULL}, std::pair{0.1, 103ULL}}) {
    const double threshold = threshold_for_false_alarm(pfa, 100, 1.0);
    EnergyMeter meter(seed, 1.0, 100);
    int alarms = 0;
    for (int i = 0; i < 100000; ++i) {
      if (energy_detect(meter.measure(ChannelState::Off, 0.0), threshold) == Decision::Busy) ++alarms;
    }
    const double rate = alarms / 100000.0;
    c.note("P_fa target " + num(pfa) + " measured " + num(rate));
    c.expect(std::abs(rate - pfa) <= 0.01, "P_fa " + num(rate) + " vs target " + num(pfa));
  }

  for (const auto& [duty, seed] : {std::pair{0.1, 201ULL}, std::pair{0.3, 202ULL}, std::pair{0.5, 203ULL}, std::pair{0.8, 204ULL}}) {
    const SimChannelConfig config{2.4, 10.0, duty, 2.0, 1.0};
    const SensingTrace trace = simulate_trace(config, 10000, 20, seed);
    const auto on = std::count_if(trace.slots.begin(), trace.slots.end(),
                                  [](const SlotRecord& s) { return s.true_state == ChannelState::On; });
    const double fraction = static_cast<double>(on) / 10000.0;
    c.note("duty " + num(duty) + " measured " + num(fraction));
    c.expect(std::abs(fraction - duty) <= 0.02, "duty " + num(fraction) + " vs " + num(duty));
  }

  const double threshold = threshold_for_false_alarm(0.01, 100, 1.0);
  EnergyMeter meter(301, 1.0, 100);
  int hits = 0;
  for (int i = 0; i < 100000; ++i) {
    if (energy_detect(meter.measure(ChannelState::On, 15.0), threshold) == Decision::Busy) ++hits;
  }
  const double pd = hits / 100000.0;
  c.note("detection at 15 dB, N=100: " + num(pd));
  c.expect(pd >= 0.99, "detection probability " + num(pd));
}

struct CliRun {
  int status;
  std::string out;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run_cli(args, out, err);
  return {status, out.str()};
}

std::vector<std::vector<std::string>> table_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    std::istringstream fields(line);
    std::vector<std::string> row;
    for (std::string f; fields >> f;) row.push_back(f);
    rows.push_back(row);
  }
  return rows;
}

void cli_contract(Checks& c) {
  const auto fit_default = cli({"fit", "--input", data_path("survey_union.csv"), "--reference",
                                data_path("ranked_survey_reference.csv"), "--json"});
  c.expect(fit_default.status == 0, "fit exited " + std::to_string(fit_default.status));
  const auto coarse = nlohmann::json::parse(fit_default.out);
  const std::string sigma = format_shortest(coarse["sigma"].get<double>());
  const std::string w_snr = format_shortest(coarse["w_snr"].get<double>());

  const auto rank = cli({"rank", "--input", data_path("ranked_survey.csv"), "--sigma", sigma, "--w-snr", w_snr});
  c.expect(rank.status == 0, "rank exited " + std::to_string(rank.status));
  const auto rows = table_rows(rank.out);
  const std::vector<std::vector<std::string>> top3{{"2.462", "12", "1"}, {"2.437", "19", "6"}, {"2.437", "8", "1"}};
  for (std::size_t i = 0; i < 3; ++i) {
    c.expect(rows.size() > i && std::vector<std::string>(rows[i].begin() + 1, rows[i].begin() + 4) == top3[i],
             "rank row " + std::to_string(i + 1) + " differs from the published order");
  }

  // The cross-reference needs the exact published order, which the 0.01 grid recovers.
  const auto fit_fine = cli({"fit", "--input", data_path("survey_union.csv"), "--reference",
                             data_path("ranked_survey_reference.csv"), "--sigma-step", "0.01",
                             "--w-step", "0.01", "--json"});
  const auto fine = nlohmann::json::parse(fit_fine.out);
  c.note("cross-reference params sigma=" + num(fine["sigma"].get<double>()) +
         " w_snr=" + num(fine["w_snr"].get<double>()));
  const auto baseline = cli({"baseline", "--input", data_path("occupancy_survey.csv"), "--universe",
                             data_path("survey_union.csv"), "--sigma",
                             format_shortest(fine["sigma"].get<double>()), "--w-snr",
                             format_shortest(fine["w_snr"].get<double>())});
  c.expect(baseline.status == 0, "baseline exited " + std::to_string(baseline.status));
  const auto brows = table_rows(baseline.out);
  c.expect(!brows.empty() && brows[0][3] == "1", "baseline first row is not 1% occupancy");

  std::ifstream printed(data_path("occupancy_survey_utility_ranks.csv"));
  std::string line;
  std::getline(printed, line);
  int matched = 0;
  int compared = 0;
  while (std::getline(printed, line)) {
    std::vector<std::string> f;
    std::istringstream fields(line);
    for (std::string v; std::getline(fields, v, ',');) f.push_back(v);
    if (std::stoi(f[3]) > 18) continue;
    ++compared;
    for (const auto& row : brows) {
      if (row[1] == f[0] && row[2] == f[1] && row[3] == f[2] && row[7] == f[3]) ++matched;
    }
  }
  c.note("cross-reference matches " + std::to_string(matched) + "/" + std::to_string(compared));
  c.expect(compared == 13 && matched == compared, "cross-reference column mismatch");

  // Round trip of every fixture and of simulator output.
  for (const auto* name : {"ranked_survey.csv", "occupancy_survey.csv", "survey_union.csv"}) {
    const auto obs = load_csv(name);
    std::ostringstream out;
    write_observations(out, obs);
    std::istringstream back(out.str());
    c.expect(parse_observations(back) == obs, std::string("round trip failed for ") + name);
  }
  const auto sim = cli({"simulate", "--scenario", data_path("scenario_example.cfg"), "--seed", "5"});
  std::istringstream sim_in(sim.out);
  const auto sim_obs = parse_observations(sim_in);
  std::ostringstream sim_out;
  write_observations(sim_out, sim_obs);
  c.expect(sim.status == 0 && sim_out.str() == sim.out, "simulate output does not round-trip");

  const std::vector<std::pair<std::vector<std::string>, int>> statuses{
      {{"rank", "--input", data_path("ranked_survey.csv")}, kExitOk},
      {{"curves", "--family", "tanh-half", "--domain", "snr", "--points", "2"}, kExitOk},
      {{"rank", "--input", data_path("ranked_survey.csv"), "--sigma", "1.5"}, kExitError},
      {{"rank", "--input", data_path("missing.csv")}, kExitError},
      {{"fit", "--input", data_path("ranked_survey.csv"), "--reference", data_path("ranked_survey.csv")}, kExitError},
      {{"explode"}, kExitUsage},
      {{"rank", "--nope"}, kExitUsage},
      {{}, kExitUsage},
  };
  for (const auto& [args, expected] : statuses) {
    const int got = cli(args).status;
    c.expect(got == expected, "exit " + std::to_string(got) + " (expected " +
                                  std::to_string(expected) + ") for '" +
                                  (args.empty() ? std::string() : args[0]) + "'");
  }
}

}  // namespace


int main() {
  const std::vector<Criterion> criteria{
      {"C1", "SNR curve sweep: monotone, symmetric, endpoints to 1e-9", 1.0, snr_curve_sweep},
      {"C2", "occupancy curve sweep: mirrored, decreasing, near-linear tanh-half", 1.0, occupancy_curve_sweep},
      {"C3", "CES algebra: sigma=1 collapse, monotonicity, reference values", 1e9, ces_algebra},
      {"C4", "survey ranking: fitted tau-b >= 0.8, top two, red flags vs baseline", 10.0, survey_ranking},
      {"C5", "desirability scenarios over 1e4 random instances", 1e9, scenario_properties},
      {"C6", "simulator calibration: P_fa, duty cycle, detection", 30.0, simulator_calibration},
      {"C7", "CLI contract: rank, baseline cross-reference, round trip, exit codes", 1e9, cli_contract},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(checks);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criterion.time_limit_s) {
      checks.expect(false, "took " + num(elapsed) + " s, limit " + num(criterion.time_limit_s) + " s");
    }
    const bool ok = checks.ok();
    if (!ok) ++failed;
    std::printf("[%s] %s %s (%.3f s)\n", ok ? "PASS" : "FAIL", criterion.id.c_str(),
                criterion.title.c_str(), elapsed);
    for (const auto& n : checks.notes()) std::printf("       %s\n", n.c_str());
    for (const auto& f : checks.failures()) std::printf("       FAILED: %s\n", f.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
