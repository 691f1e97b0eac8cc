#pragma once

// Line-oriented key: value reports with a JSON twin holding the same keys.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cassini {

class Report {
 public:
  using Value = std::variant<double, std::int64_t, bool, std::string, std::vector<double>>;

  void add(std::string key, double v) { entries_.emplace_back(std::move(key), v); }
  void add(std::string key, std::int64_t v) { entries_.emplace_back(std::move(key), v); }
  void add(std::string key, int v) { add(std::move(key), static_cast<std::int64_t>(v)); }
  void add(std::string key, std::size_t v) { add(std::move(key), static_cast<std::int64_t>(v)); }
  void add(std::string key, bool v) { entries_.emplace_back(std::move(key), v); }
  void add(std::string key, std::string v) { entries_.emplace_back(std::move(key), std::move(v)); }
  void add(std::string key, const char* v) { add(std::move(key), std::string(v)); }
  void add(std::string key, std::vector<double> v) {
    entries_.emplace_back(std::move(key), std::move(v));
  }

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }

  /// "key: value" per line; reals at 17 significant digits, lists space
  /// separated.
  std::string text() const;
  /// Flat JSON object in insertion order.
  std::string json() const;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

}  // namespace cassini
