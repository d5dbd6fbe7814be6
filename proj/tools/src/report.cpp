#include "report.hpp"

#include <cstdio>

namespace qfa::cli {

std::string format_probability(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", value);
  return buf;
}

void Report::add(const std::string& key, double value) { add(key, Json(value), format_probability(value)); }

void Report::add(const std::string& key, std::uint64_t value) {
  add(key, Json(value), std::to_string(value));
}

void Report::add(const std::string& key, bool value) { add(key, Json(value), value ? "yes" : "no"); }

void Report::add(const std::string& key, const std::string& value) { add(key, Json(value), value); }

void Report::add(const std::string& key, Json value, std::string text) {
  fields_[key] = std::move(value);
  lines_.emplace_back(key, std::move(text));
}

void Report::append(const std::string& key, Json value, std::string text) {
  if (!fields_.contains(key)) fields_[key] = Json::array();
  fields_[key].push_back(std::move(value));
  lines_.emplace_back(key, std::move(text));
}

void Report::write(std::ostream& out, bool json) const {
  if (json) {
    out << fields_.dump(2) << '\n';
    return;
  }
  for (const auto& [key, text] : lines_) out << key << '=' << text << '\n';
}

}  // namespace qfa::cli
