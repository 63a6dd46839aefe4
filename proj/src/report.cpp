#include "chanrank/report.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "chanrank/errors.hpp"
#include "chanrank/io.hpp"

namespace chanrank {
namespace {

std::string describe(const UtilityCurve& c) {
  std::ostringstream s;
  s << to_string(c.family) << " alpha=" << format_shortest(c.alpha)
    << " max_utility=" << format_shortest(c.max_utility)
    << " midpoint=" << format_shortest(c.midpoint) << " input_max=" << format_shortest(c.input_max);
  return s.str();
}

std::string fixed(double v, int precision) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

}  // namespace

void write_text(std::ostream& out, const RankReport& report) {
  const auto& meta = report.metadata;
  const bool baseline = report.kind == ReportKind::Occupancy;
  out << (baseline ? "# occupancy-based channel selection\n" : "# utility-based channel ranking\n")
      << "# snr_curve: " << describe(meta.model.snr_curve) << '\n'
      << "# occ_curve: " << describe(meta.model.occ_curve) << '\n'
      << "# sigma=" << format_shortest(meta.model.params.sigma())
      << " w_snr=" << format_shortest(meta.model.params.w_snr())
      << " w_occ=" << format_shortest(meta.model.params.w_occ()) << '\n'
      << "# input_sha256: " << meta.input_digest << '\n'
      << "# timestamp: " << meta.timestamp << '\n';

  out << std::setw(5) << (baseline ? "pos" : "rank") << std::setw(15) << "frequency_ghz"
      << std::setw(9) << "snr_db" << std::setw(15) << "occupancy_pct" << std::setw(9) << "u_snr"
      << std::setw(9) << "u_occ" << std::setw(10) << "combined";
  if (baseline) out << std::setw(14) << "utility_rank";
  out << '\n';

  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    out << std::setw(5) << row.rank << std::setw(15) << format_shortest(row.observation.frequency_ghz)
        << std::setw(9) << format_shortest(row.observation.snr_db) << std::setw(15)
        << format_percent(row.observation.occupancy) << std::setw(9)
        << fixed(row.u_snr.display(), 2) << std::setw(9) << fixed(row.u_occ.display(), 2)
        << std::setw(10) << row.combined_rounded();
    if (baseline) out << std::setw(14) << report.cross_reference.at(i);
    out << '\n';
  }
}

nlohmann::json to_json(const UtilityCurve& curve) {
  return {{"family", std::string(to_string(curve.family))},
          {"alpha", curve.alpha},
          {"max_utility", curve.max_utility},
          {"midpoint", curve.midpoint},
          {"input_max", curve.input_max}};
}

nlohmann::json to_json(const RankReport& report) {
  const auto& meta = report.metadata;
  const auto& params = meta.model.params;
  nlohmann::json j;
  j["kind"] = report.kind == ReportKind::Occupancy ? "occupancy" : "utility";
  j["metadata"] = {
      {"snr_curve", to_json(meta.model.snr_curve)},
      {"occ_curve", to_json(meta.model.occ_curve)},
      {"sigma", params.sigma()},
      {"rho", params.rho() ? nlohmann::json(*params.rho()) : nlohmann::json(nullptr)},
      {"w_snr", params.w_snr()},
      {"w_occ", params.w_occ()},
      {"timestamp", meta.timestamp},
      {"input_sha256", meta.input_digest},
  };
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    nlohmann::json r = {
        {"rank", row.rank},
        {"frequency_ghz", row.observation.frequency_ghz},
        {"snr_db", row.observation.snr_db},
        {"occupancy_pct", std::stod(format_percent(row.observation.occupancy))},
        {"u_snr_display", row.u_snr.display()},
        {"u_occ_display", row.u_occ.display()},
        {"combined_display", row.combined_display()},
        {"combined_rounded", row.combined_rounded()},
    };
    if (report.kind == ReportKind::Occupancy) r["utility_rank"] = report.cross_reference.at(i);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  hex << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) hex << std::setw(2) << static_cast<int>(digest[i]);
  return hex.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

}  // namespace chanrank
