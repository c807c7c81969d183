#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ncrec {

// Flat declarative config: `key = value` lines grouped by [section] headers,
// `#` comments.  List values are whitespace-separated; element lists use `;`
// between elements.
class IniFile {
 public:
  static IniFile parse_file(const std::string& path);
  static IniFile parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  std::int64_t get_int(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  std::vector<std::int64_t> get_int_list(const std::string& section, const std::string& key) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

struct ExperimentConfig {
  std::string scenario;

  // [group]
  int d = 1;
  std::int64_t m = 12;

  // [net]
  std::vector<std::int64_t> schedule;

  // [dynamics]
  std::vector<std::int64_t> subset;
  double theta = 1.0;
  std::vector<std::int64_t> exponents;

  // [recurrence]
  double epsilon = 0.05;
  std::string side;  // empty = scenario default
  int h_radius = 3;
  std::vector<std::vector<std::int64_t>> h_extra;

  // [tolerances]
  double rank_tol = 1e-10;
  double validation_tol = 1e-10;
  int validation_samples = 32;

  // [run]
  std::uint64_t seed = 1;
  std::string output = "out";

  void apply(const IniFile& file);
};

}  // namespace ncrec
