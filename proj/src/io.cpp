#include "chanrank/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string_view>
#include <system_error>
#include <type_traits>

#include "chanrank/errors.hpp"

namespace chanrank {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based position of the field's first character
};

std::vector<Field> split_csv(std::string_view line) {
  std::vector<Field> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto end = comma == std::string_view::npos ? line.size() : comma;
    fields.push_back({trim(line.substr(start, end - start)), start + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_number(const Field& field, std::size_t line, const char* name) {
  T value{};
  const char* first = field.text.data();
  const char* last = first + field.text.size();
  if (field.text.empty()) throw ParseError(line, field.column, std::string("missing ") + name);
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, field.column,
                     std::string("malformed ") + name + " '" + std::string(field.text) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) {
      throw ParseError(line, field.column, std::string(name) + " must be finite");
    }
  }
  return value;
}

// Reads lines, tracking 1-based line numbers and skipping blank lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!trim(line).empty()) return true;
    }
    return false;
  }
  std::size_t number() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

void expect_header(LineReader& reader, std::string_view header) {
  std::string line;
  if (!reader.next(line)) throw ParseError(1, 1, "missing header '" + std::string(header) + "'");
  std::string normalized;
  for (const auto& f : split_csv(line)) {
    if (!normalized.empty()) normalized += ',';
    normalized += f.text;
  }
  if (normalized != header) {
    throw ParseError(reader.number(), 1, "expected header '" + std::string(header) + "'");
  }
}

}  // namespace

std::vector<ChannelObservation> parse_observations(std::istream& in) {
  LineReader reader(in);
  expect_header(reader, kObservationHeader);

  std::vector<ChannelObservation> out;
  std::string line;
  while (reader.next(line)) {
    const std::size_t n = reader.number();
    const auto fields = split_csv(line);
    if (fields.size() < 3) {
      throw ParseError(n, line.size() + 1, "expected 3 columns, found " +
                                               std::to_string(fields.size()));
    }
    if (fields.size() > 3) throw ParseError(n, fields[3].column, "unexpected extra column");

    const double freq = parse_number<double>(fields[0], n, "frequency_ghz");
    const double snr = parse_number<double>(fields[1], n, "snr_db");
    const double pct = parse_number<double>(fields[2], n, "occupancy_pct");
    if (freq <= 0.0) throw ParseError(n, fields[0].column, "frequency_ghz must be positive");
    if (pct < 0.0 || pct > 100.0) {
      throw ParseError(n, fields[2].column, "occupancy_pct must lie in [0, 100]");
    }
    out.push_back({freq, snr, percent_to_fraction(fields[2].text)});
  }
  return out;
}

void write_observations(std::ostream& out, std::span<const ChannelObservation> observations) {
  out << kObservationHeader << '\n';
  for (const auto& obs : observations) {
    out << format_shortest(obs.frequency_ghz) << ',' << format_shortest(obs.snr_db) << ','
        << format_percent(obs.occupancy) << '\n';
  }
}

std::vector<ReferenceEntry> parse_reference(std::istream& in) {
  LineReader reader(in);
  expect_header(reader, kReferenceHeader);

  std::vector<ReferenceEntry> out;
  std::string line;
  while (reader.next(line)) {
    const std::size_t n = reader.number();
    const auto fields = split_csv(line);
    if (fields.size() != 2) throw ParseError(n, 1, "expected 2 columns");
    const auto index = parse_number<std::size_t>(fields[0], n, "index");
    const int rank = parse_number<int>(fields[1], n, "rank");
    if (rank < 1) throw ParseError(n, fields[1].column, "rank must be at least 1");
    out.push_back({index, rank});
  }
  return out;
}

Scenario parse_scenario(std::istream& in) {
  Scenario scenario;
  SimChannelConfig* channel = nullptr;
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line != "[channel]") throw ParseError(n, 1, "unknown section '" + std::string(line) + "'");
      channel = &scenario.channels.emplace_back();
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(n, 1, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const auto value_start = raw.find('=') + 1;
    const Field value{trim(line.substr(eq + 1)), value_start + 1};

    if (channel == nullptr) {
      if (key == "n_slots") {
        scenario.n_slots = parse_number<int>(value, n, "n_slots");
      } else if (key == "samples_per_slot") {
        scenario.samples_per_slot = parse_number<int>(value, n, "samples_per_slot");
      } else if (key == "target_pfa") {
        scenario.target_pfa = parse_number<double>(value, n, "target_pfa");
      } else {
        throw ParseError(n, 1, "unknown scenario key '" + key + "'");
      }
    } else if (key == "frequency_ghz") {
      channel->frequency_ghz = parse_number<double>(value, n, "frequency_ghz");
    } else if (key == "true_snr_db") {
      channel->true_snr_db = parse_number<double>(value, n, "true_snr_db");
    } else if (key == "duty_cycle") {
      channel->duty_cycle = parse_number<double>(value, n, "duty_cycle");
    } else if (key == "mean_hold_slots") {
      channel->mean_hold_slots = parse_number<double>(value, n, "mean_hold_slots");
    } else if (key == "noise_power") {
      channel->noise_power = parse_number<double>(value, n, "noise_power");
    } else {
      throw ParseError(n, 1, "unknown channel key '" + key + "'");
    }
  }
  for (const auto& c : scenario.channels) c.validate();
  return scenario;
}

std::string format_shortest(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw Error("cannot format number");
  return {buf.data(), ptr};
}

std::string format_percent(double fraction) {
  // Shortest digits of the fraction, decimal point moved two places right.
  std::array<char, 40> buf{};
  const auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), fraction, std::chars_format::scientific);
  if (ec != std::errc()) throw Error("cannot format number");
  const std::string_view text(buf.data(), static_cast<std::size_t>(end - buf.data()));
  const auto e = text.find('e');
  std::string_view mantissa = text.substr(0, e);
  const int exponent = std::stoi(std::string(text.substr(e + 1))) + 2;

  std::string out;
  if (!mantissa.empty() && mantissa.front() == '-') {
    out += '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  for (char c : mantissa) {
    if (c != '.') digits += c;
  }
  if (digits.find_first_not_of('0') == std::string::npos) return out + "0";

  const int point = exponent + 1;  // digits before the decimal point
  if (point <= 0) {
    out += "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
  } else if (static_cast<std::size_t>(point) >= digits.size()) {
    out += digits + std::string(static_cast<std::size_t>(point) - digits.size(), '0');
  } else {
    out += digits.substr(0, static_cast<std::size_t>(point)) + "." +
           digits.substr(static_cast<std::size_t>(point));
  }
  return out;
}

double percent_to_fraction(std::string_view percent) {
  // Same digits with the exponent lowered by two: one correctly rounded
  // conversion, so format_percent/percent_to_fraction round-trip exactly.
  std::string text(percent);
  if (!text.empty() && text.front() == '+') text.erase(0, 1);
  const auto e = text.find_first_of("eE");
  long exponent = 0;
  if (e != std::string::npos) {
    exponent = std::stol(text.substr(e + 1));
    text.resize(e);
  }
  text += "e" + std::to_string(exponent - 2);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("malformed percent '" + std::string(percent) + "'");
  }
  return value;
}

}  // namespace chanrank
