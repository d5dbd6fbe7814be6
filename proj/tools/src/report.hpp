#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qfa::cli {

/// Ordered key/value output, printed as `key=value` lines or one JSON object.
class Report {
 public:
  using Json = nlohmann::ordered_json;

  void add(const std::string& key, double value);
  void add(const std::string& key, std::uint64_t value);
  void add(const std::string& key, int value) { add(key, static_cast<std::uint64_t>(value)); }
  void add(const std::string& key, bool value);
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  /// Arbitrary JSON value with its own text rendering.
  void add(const std::string& key, Json value, std::string text);
  /// Appended to a JSON array under `key`; one text line each.
  void append(const std::string& key, Json value, std::string text);

  void write(std::ostream& out, bool json) const;

 private:
  Json fields_ = Json::object();
  std::vector<std::pair<std::string, std::string>> lines_;
};

/// Fixed 12-decimal rendering used for every probability.
std::string format_probability(double value);

}  // namespace qfa::cli
