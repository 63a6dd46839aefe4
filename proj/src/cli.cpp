#include "chanrank/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <vector>

#include "chanrank/errors.hpp"
#include "chanrank/fit.hpp"
#include "chanrank/io.hpp"
#include "chanrank/report.hpp"
#include "chanrank/spectrum_sim.hpp"

namespace chanrank {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<ChannelObservation> load_observations(const std::string& bytes) {
  std::istringstream in(bytes);
  return parse_observations(in);
}

// Writes to the named file, or to `fallback` when path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  write(out);
  if (!out) throw Error("write to '" + path + "' failed");
}

CurveFamily family_or_throw(const std::string& name) {
  if (auto f = parse_curve_family(name)) return *f;
  throw ParameterError("unknown curve family '" + name + "'");
}

// Curve and CES options shared by rank, baseline and fit.
struct ModelOptions {
  std::string curve = "tanh-half";
  std::optional<double> snr_alpha;
  std::optional<double> occ_alpha;
  double sigma = 0.5;
  double w_snr = 0.5;

  void add_to(CLI::App& app, bool with_params) {
    app.add_option("--curve", curve, "Curve family for both SNR and occupancy")
        ->check(CLI::IsMember({"logistic-midpoint", "logistic", "tanh-scaled", "tanh-half"}));
    app.add_option("--snr-alpha", snr_alpha, "Override the SNR curve steepness");
    app.add_option("--occ-alpha", occ_alpha, "Override the occupancy curve steepness");
    if (with_params) {
      app.add_option("--sigma", sigma, "CES elasticity in (0, 1]");
      app.add_option("--w-snr", w_snr, "SNR weight in (0, 1); occupancy gets 1 - w");
    }
  }

  std::pair<UtilityCurve, UtilityCurve> curves() const {
    const CurveFamily family = family_or_throw(curve);
    UtilityCurve snr = ranking_snr_curve(family);
    UtilityCurve occ = ranking_occupancy_curve(family);
    if (snr_alpha) snr.alpha = *snr_alpha;
    if (occ_alpha) occ.alpha = *occ_alpha;
    snr.validate();
    occ.validate();
    return {snr, occ};
  }

  RankingModel model() const {
    auto [snr, occ] = curves();
    return {snr, occ, CesParams(w_snr, 1.0 - w_snr, sigma)};
  }
};

void print_report(std::ostream& out, const RankReport& report, bool json) {
  if (json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    write_text(out, report);
  }
}

void cmd_rank(const std::string& input, const ModelOptions& opts, bool json, std::ostream& out) {
  const std::string bytes = read_file(input);
  const auto observations = load_observations(bytes);
  RankReport report;
  report.kind = ReportKind::Utility;
  report.metadata = {opts.model(), utc_timestamp(), sha256_hex(bytes)};
  report.rows = rank_channels(observations, report.metadata.model);
  print_report(out, report, json);
}

void cmd_baseline(const std::string& input, const std::string& universe_path,
                  const ModelOptions& opts, bool json, std::ostream& out) {
  const std::string bytes = read_file(input);
  const auto observations = load_observations(bytes);
  const auto universe =
      universe_path.empty() ? observations : load_observations(read_file(universe_path));

  RankReport report;
  report.kind = ReportKind::Occupancy;
  report.metadata = {opts.model(), utc_timestamp(), sha256_hex(bytes)};
  report.rows = rank_by_occupancy(observations, report.metadata.model);

  // Each baseline row takes the best still-unclaimed utility rank of an
  // identical universe observation.
  auto ranked = rank_channels(universe, report.metadata.model);
  std::vector<bool> claimed(ranked.size(), false);
  for (const auto& row : report.rows) {
    const auto it = std::find_if(ranked.begin(), ranked.end(), [&](const RankedChannel& r) {
      return !claimed[static_cast<std::size_t>(r.rank - 1)] && r.observation == row.observation;
    });
    if (it == ranked.end()) {
      throw ConsistencyError("observation (" + format_shortest(row.observation.frequency_ghz) +
                             ", " + format_shortest(row.observation.snr_db) +
                             ") is missing from the ranking universe");
    }
    claimed[static_cast<std::size_t>(it->rank - 1)] = true;
    report.cross_reference.push_back(it->rank);
  }
  print_report(out, report, json);
}

void cmd_curves(const std::string& family_name, const std::string& domain, int points,
                std::optional<double> alpha, std::optional<double> lo, std::optional<double> hi,
                const std::string& out_path, std::ostream& out) {
  const CurveFamily family = family_or_throw(family_name);
  const bool snr = domain == "snr";
  UtilityCurve curve = snr ? sweep_snr_curve(family) : sweep_occupancy_curve(family);
  if (alpha) curve.alpha = *alpha;
  const double from = lo.value_or(snr ? -20.0 : 0.0);
  const double to = hi.value_or(snr ? 20.0 : 1.0);
  const auto samples =
      sample_curve(curve, from, to, points, snr ? CurveSide::Snr : CurveSide::Occupancy);

  emit(out_path, out, [&](std::ostream& o) {
    o << "input,utility\n";
    char line[64];
    for (const auto& s : samples) {
      std::snprintf(line, sizeof line, "%.6g,%.6g\n", s.input, s.utility.value());
      o << line;
    }
  });
}

void cmd_fit(const std::string& input, const std::string& reference_path,
             const ModelOptions& opts, double sigma_step, double w_step, bool json,
             std::ostream& out) {
  const auto observations = load_observations(read_file(input));
  std::istringstream ref_in(read_file(reference_path));
  const auto reference = parse_reference(ref_in);
  const auto [snr, occ] = opts.curves();
  const FitGrid grid = FitGrid::uniform(sigma_step, w_step);
  const FitResult fit = fit_ces_params(observations, reference, snr, occ, grid);

  if (json) {
    nlohmann::json j = {{"sigma", fit.params.sigma()},
                        {"w_snr", fit.params.w_snr()},
                        {"w_occ", fit.params.w_occ()},
                        {"tau_b", fit.tau_b},
                        {"grid_points", grid.size()},
                        {"snr_curve", to_json(snr)},
                        {"occ_curve", to_json(occ)}};
    out << j.dump(2) << '\n';
    return;
  }
  out << "sigma=" << format_shortest(fit.params.sigma()) << '\n'
      << "w_snr=" << format_shortest(fit.params.w_snr()) << '\n'
      << "w_occ=" << format_shortest(fit.params.w_occ()) << '\n'
      << "tau_b=" << format_shortest(fit.tau_b) << '\n'
      << "grid_points=" << grid.size() << '\n';
}

void cmd_simulate(const std::string& scenario_path, std::uint64_t seed,
                  const std::string& out_path, std::ostream& out) {
  std::istringstream in(read_file(scenario_path));
  const Scenario scenario = parse_scenario(in);
  if (scenario.channels.empty()) throw EmptyInputError("scenario lists no channels");
  const auto observations = simulate_scenario(scenario, seed);
  emit(out_path, out, [&](std::ostream& o) { write_observations(o, observations); });
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Utility-based channel ranking for cognitive radio", "chanrank"};
  app.require_subcommand(1);

  std::string input;
  std::string universe;
  std::string reference;
  std::string scenario;
  std::string out_path;
  bool json = false;
  ModelOptions rank_opts;
  ModelOptions baseline_opts;
  ModelOptions fit_opts;

  auto* rank = app.add_subcommand("rank", "Rank channels by combined CES utility");
  rank->add_option("--input", input, "Observations CSV")->required();
  rank->add_flag("--json", json, "Emit JSON instead of a text table");
  rank_opts.add_to(*rank, true);

  auto* baseline = app.add_subcommand("baseline", "Occupancy-only ordering with utility ranks");
  baseline->add_option("--input", input, "Observations CSV")->required();
  baseline->add_option("--universe", universe,
                       "Observations CSV the utility ranks are taken over (default: input)");
  baseline->add_flag("--json", json, "Emit JSON instead of a text table");
  baseline_opts.add_to(*baseline, true);

  std::string family;
  std::string domain;
  int points = 41;
  std::optional<double> alpha;
  std::optional<double> lo;
  std::optional<double> hi;
  auto* curves = app.add_subcommand("curves", "Sample a utility curve to CSV");
  curves->add_option("--family", family, "Curve family")
      ->required()
      ->check(CLI::IsMember({"logistic-midpoint", "logistic", "tanh-scaled", "tanh-half"}));
  curves->add_option("--domain", domain, "snr or occupancy")
      ->required()
      ->check(CLI::IsMember({"snr", "occupancy"}));
  curves->add_option("--points", points, "Number of samples (>= 2)");
  curves->add_option("--alpha", alpha, "Override the curve steepness");
  curves->add_option("--lo", lo, "Domain start");
  curves->add_option("--hi", hi, "Domain end");
  curves->add_option("--out", out_path, "Output CSV (default: stdout)");

  double sigma_step = 0.1;
  double w_step = 0.05;
  auto* fit = app.add_subcommand("fit", "Grid-search CES parameters against a reference ranking");
  fit->add_option("--input", input, "Observations CSV")->required();
  fit->add_option("--reference", reference, "Reference ranking CSV (index,rank)")->required();
  fit->add_option("--sigma-step", sigma_step, "Grid step for sigma");
  fit->add_option("--w-step", w_step, "Grid step for w_snr");
  fit->add_flag("--json", json, "Emit JSON");
  fit_opts.add_to(*fit, false);

  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Simulate sensing and emit observations CSV");
  simulate->add_option("--scenario", scenario, "Scenario file")->required();
  simulate->add_option("--seed", seed, "RNG seed")->required();
  simulate->add_option("--out", out_path, "Output CSV (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (rank->parsed()) {
      cmd_rank(input, rank_opts, json, out);
    } else if (baseline->parsed()) {
      cmd_baseline(input, universe, baseline_opts, json, out);
    } else if (curves->parsed()) {
      cmd_curves(family, domain, points, alpha, lo, hi, out_path, out);
    } else if (fit->parsed()) {
      cmd_fit(input, reference, fit_opts, sigma_step, w_step, json, out);
    } else if (simulate->parsed()) {
      cmd_simulate(scenario, seed, out_path, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace chanrank
