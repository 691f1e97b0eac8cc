#include "cassini/report.hpp"

#include <cmath>

#include <json.hpp>

#include "cassini/system_io.hpp"

namespace cassini {

namespace {

struct TextVisitor {
  std::string operator()(double v) const { return format_double(v); }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(const std::string& v) const { return v; }
  std::string operator()(const std::vector<double>& v) const {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      s += (i ? " " : "") + format_double(v[i]);
    }
    return s;
  }
};

// JSON has no inf/nan; those become strings.
nlohmann::ordered_json real(double v) {
  if (std::isfinite(v)) {
    return v;
  }
  return format_double(v);
}

struct JsonVisitor {
  nlohmann::ordered_json operator()(double v) const { return real(v); }
  nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
  nlohmann::ordered_json operator()(bool v) const { return v; }
  nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  nlohmann::ordered_json operator()(const std::vector<double>& v) const {
    auto arr = nlohmann::ordered_json::array();
    for (double x : v) {
      arr.push_back(real(x));
    }
    return arr;
  }
};

}  // namespace

std::string Report::text() const {
  std::string out;
  for (const auto& [key, value] : entries_) {
    out += key + ": " + std::visit(TextVisitor{}, value) + "\n";
  }
  return out;
}

std::string Report::json() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [key, value] : entries_) {
    doc[key] = std::visit(JsonVisitor{}, value);
  }
  return doc.dump(2) + "\n";
}

}  // namespace cassini
