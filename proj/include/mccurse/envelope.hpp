#pragma once

// Structured result emission for the command-line surface. Every invocation
// produces one ResultEnvelope (command echo, numeric payload, provenance)
// rendered as JSON, CSV, or a human-readable table.
//
// Payload conventions by format tag:
//   record : flat object of name -> value
//   table  : {"columns": [...], "rows": [{"label": ..., "values": [...]}]}
//   series : {"columns": [...], "points": [[...], ...]}

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mccurse/bounds.hpp"

namespace mccurse::cli {

using json = nlohmann::ordered_json;

struct ResultEnvelope {
  std::string command;
  std::string format_tag;  // "record" | "table" | "series"
  json payload;
  std::optional<std::uint64_t> seed;
  std::string version;
  std::string timestamp;  // ISO-8601 UTC
};

inline std::string iso_utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline ResultEnvelope make_envelope(std::string command, std::string format_tag,
                                    json payload,
                                    std::optional<std::uint64_t> seed = {}) {
  ResultEnvelope env;
  env.command = std::move(command);
  env.format_tag = std::move(format_tag);
  env.payload = std::move(payload);
  env.seed = seed;
  env.version = "0.1.0";
  env.timestamp = iso_utc_now();
  return env;
}

// 17 significant digits: doubles round-trip losslessly through text.
inline std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

// Counts print exactly when exact, otherwise in 6-significant-digit
// scientific form (d.dddddde+XX).
inline std::string format_count(const bounds::SampleCount& count) {
  char buf[40];
  if (count.is_ceiled && count.value < 1e15)
    std::snprintf(buf, sizeof(buf), "%.0f", count.value);
  else
    std::snprintf(buf, sizeof(buf), "%.5e", count.value);
  return buf;
}

inline json to_json(const ResultEnvelope& env) {
  json j;
  j["command"] = env.command;
  j["format"] = env.format_tag;
  j["payload"] = env.payload;
  json prov;
  if (env.seed) prov["seed"] = *env.seed;
  prov["version"] = env.version;
  prov["timestamp"] = env.timestamp;
  j["provenance"] = prov;
  return j;
}

namespace detail {

inline std::string csv_cell(const json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace detail

// Comma-separated, header row, LF line endings, '.' decimal point.
inline std::string to_csv(const ResultEnvelope& env) {
  std::string out;
  if (env.format_tag == "record") {
    std::string header, values;
    bool first = true;
    for (const auto& [key, value] : env.payload.items()) {
      if (!first) {
        header += ',';
        values += ',';
      }
      header += key;
      values += detail::csv_cell(value);
      first = false;
    }
    out = header + "\n" + values + "\n";
  } else if (env.format_tag == "table") {
    out = "label";
    for (const auto& c : env.payload.at("columns"))
      out += "," + detail::csv_cell(c);
    out += "\n";
    for (const auto& row : env.payload.at("rows")) {
      out += detail::csv_cell(row.at("label"));
      for (const auto& v : row.at("values")) out += "," + detail::csv_cell(v);
      out += "\n";
    }
  } else {  // series
    std::string header;
    bool first = true;
    for (const auto& c : env.payload.at("columns")) {
      if (!first) header += ',';
      header += detail::csv_cell(c);
      first = false;
    }
    out = header + "\n";
    for (const auto& point : env.payload.at("points")) {
      first = true;
      for (const auto& v : point) {
        if (!first) out += ',';
        out += detail::csv_cell(v);
        first = false;
      }
      out += "\n";
    }
  }
  return out;
}

namespace detail {

// shortest round-trip form; nicer on a terminal than %.17g
inline std::string text_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace detail

// Plain aligned text for terminals.
inline void render_text(std::ostream& os, const ResultEnvelope& env) {
  os << "# " << env.command << " (v" << env.version;
  if (env.seed) os << ", seed " << *env.seed;
  os << ")\n";
  if (env.format_tag == "record") {
    // flatten one level of nesting (e.g. count records) into dotted keys
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& [key, value] : env.payload.items()) {
      if (value.is_object()) {
        for (const auto& [sub, subvalue] : value.items())
          rows.emplace_back(key + "." + sub, detail::text_cell(subvalue));
      } else {
        rows.emplace_back(key, detail::text_cell(value));
      }
    }
    std::size_t width = 0;
    for (const auto& [key, value] : rows) width = std::max(width, key.size());
    for (const auto& [key, value] : rows) {
      os << key;
      for (std::size_t i = key.size(); i < width + 2; ++i) os << ' ';
      os << value << "\n";
    }
  } else if (env.format_tag == "table") {
    os << to_csv(env);
  } else {
    os << env.payload.at("points").size() << " points, columns:";
    for (const auto& c : env.payload.at("columns"))
      os << ' ' << detail::text_cell(c);
    os << "\n";
  }
}

}  // namespace mccurse::cli
