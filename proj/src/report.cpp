#include "bousslyap/report.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>

#include "bousslyap/errors.hpp"

namespace bousslyap {

std::string report_timestamp() {
  std::time_t t = 0;
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"); sde != nullptr) {
    t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
  } else {
    t = std::time(nullptr);
  }
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json doc;
  doc["kind"] = kind;
  doc["payload"] = payload;
  doc["metadata"] = {{"config", config_echo},
                     {"seed", seed},
                     {"timestamp", timestamp},
                     {"version", version}};
  return doc;
}

std::string Report::canonical() const { return to_json().dump(2) + "\n"; }

Report Report::from_json(const nlohmann::ordered_json& doc) {
  Report r;
  try {
    r.kind = doc.at("kind").get<std::string>();
    r.payload = doc.at("payload");
    const auto& meta = doc.at("metadata");
    r.config_echo = meta.at("config");
    r.seed = meta.at("seed").get<std::uint64_t>();
    r.timestamp = meta.at("timestamp").get<std::string>();
    r.version = meta.at("version").get<std::string>();
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ValidationError(std::string("report: malformed document: ") +
                          e.what());
  }
  return r;
}

Report Report::parse(const std::string& text) {
  try {
    return from_json(nlohmann::ordered_json::parse(text));
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw ValidationError(std::string("report: JSON parse error: ") +
                          e.what());
  }
}

Report make_report(const std::string& kind, nlohmann::ordered_json payload,
                   nlohmann::ordered_json config_echo, std::uint64_t seed) {
  Report r;
  r.kind = kind;
  r.payload = std::move(payload);
  r.config_echo = std::move(config_echo);
  r.seed = seed;
  r.timestamp = report_timestamp();
  return r;
}

void write_report(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << report.canonical();
  if (!out) throw IoError("write failure on '" + path + "'");
}

}  // namespace bousslyap
