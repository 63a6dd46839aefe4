#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chanrank/ces_ranking.hpp"

namespace chanrank {

enum class ReportKind { Utility, Occupancy };

struct ReportMetadata {
  RankingModel model;
  std::string timestamp;     // ISO-8601 UTC
  std::string input_digest;  // SHA-256 of the input file bytes
};

// Rows in report order. For occupancy reports, cross_reference[i] holds the
// utility-based rank of rows[i] within the ranking universe.
struct RankReport {
  ReportKind kind = ReportKind::Utility;
  std::vector<RankedChannel> rows;
  std::vector<int> cross_reference;
  ReportMetadata metadata;
};

void write_text(std::ostream& out, const RankReport& report);
nlohmann::json to_json(const RankReport& report);

nlohmann::json to_json(const UtilityCurve& curve);

std::string sha256_hex(std::string_view bytes);
std::string utc_timestamp();

}  // namespace chanrank
