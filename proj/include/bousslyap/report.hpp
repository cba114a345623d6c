#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace bousslyap {

inline constexpr const char* kVersion = "0.1.0";

/// Structured verification output. kind is one of run, operators,
/// consistency, convergence, stability, solvability, oracle. Serialization
/// is canonical (ordered keys, shortest round-trip numbers), so identical
/// inputs and seeds reproduce the bytes; the timestamp honors
/// SOURCE_DATE_EPOCH for reproducible reruns.
struct Report {
  std::string kind;
  nlohmann::ordered_json payload;
  nlohmann::ordered_json config_echo;
  std::uint64_t seed = 0;
  std::string timestamp;
  std::string version = kVersion;

  nlohmann::ordered_json to_json() const;
  std::string canonical() const;  // to_json().dump(2) + newline

  static Report from_json(const nlohmann::ordered_json& doc);
  static Report parse(const std::string& text);
};

/// UTC ISO-8601; uses SOURCE_DATE_EPOCH when set.
std::string report_timestamp();

Report make_report(const std::string& kind, nlohmann::ordered_json payload,
                   nlohmann::ordered_json config_echo, std::uint64_t seed);

void write_report(const Report& report, const std::string& path);

}  // namespace bousslyap
