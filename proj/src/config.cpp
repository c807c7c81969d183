#include "ncrec/config.hpp"

#include <fstream>
#include <sstream>

#include "ncrec/errors.hpp"

namespace ncrec {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

IniFile IniFile::parse_string(const std::string& text) {
  IniFile file;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    file.sections_[section][key] = value;
  }
  return file;
}

IniFile IniFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string IniFile::get_string(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end() || !s->second.count(key))
    throw ConfigError("missing config key [" + section + "] " + key);
  return s->second.at(key);
}

std::int64_t IniFile::get_int(const std::string& section, const std::string& key) const {
  try {
    return std::stoll(get_string(section, key));
  } catch (const std::logic_error&) {
    throw ConfigError("config key [" + section + "] " + key + " is not an integer");
  }
}

double IniFile::get_double(const std::string& section, const std::string& key) const {
  try {
    return std::stod(get_string(section, key));
  } catch (const std::logic_error&) {
    throw ConfigError("config key [" + section + "] " + key + " is not a number");
  }
}

std::vector<std::int64_t> IniFile::get_int_list(const std::string& section,
                                                const std::string& key) const {
  std::istringstream in(get_string(section, key));
  std::vector<std::int64_t> out;
  std::string token;
  while (in >> token) {
    try {
      out.push_back(std::stoll(token));
    } catch (const std::logic_error&) {
      throw ConfigError("config key [" + section + "] " + key + " is not an integer list");
    }
  }
  return out;
}

void ExperimentConfig::apply(const IniFile& file) {
  if (file.has("", "scenario")) scenario = file.get_string("", "scenario");
  if (file.has("group", "d")) d = static_cast<int>(file.get_int("group", "d"));
  if (file.has("group", "m")) m = file.get_int("group", "m");
  if (file.has("net", "schedule")) schedule = file.get_int_list("net", "schedule");
  if (file.has("dynamics", "subset")) subset = file.get_int_list("dynamics", "subset");
  if (file.has("dynamics", "theta")) theta = file.get_double("dynamics", "theta");
  if (file.has("dynamics", "exponents")) exponents = file.get_int_list("dynamics", "exponents");
  if (file.has("recurrence", "epsilon")) epsilon = file.get_double("recurrence", "epsilon");
  if (file.has("recurrence", "side")) side = file.get_string("recurrence", "side");
  if (file.has("recurrence", "h_radius"))
    h_radius = static_cast<int>(file.get_int("recurrence", "h_radius"));
  if (file.has("recurrence", "h_extra")) {
    h_extra.clear();
    std::istringstream in(file.get_string("recurrence", "h_extra"));
    std::string group;
    while (std::getline(in, group, ';')) {
      std::istringstream gin(group);
      std::vector<std::int64_t> coords;
      std::int64_t v;
      while (gin >> v) coords.push_back(v);
      if (!coords.empty()) h_extra.push_back(std::move(coords));
    }
  }
  if (file.has("tolerances", "rank_tol")) rank_tol = file.get_double("tolerances", "rank_tol");
  if (file.has("tolerances", "validation_tol"))
    validation_tol = file.get_double("tolerances", "validation_tol");
  if (file.has("tolerances", "validation_samples"))
    validation_samples = static_cast<int>(file.get_int("tolerances", "validation_samples"));
  if (file.has("run", "seed")) seed = static_cast<std::uint64_t>(file.get_int("run", "seed"));
  if (file.has("run", "output")) output = file.get_string("run", "output");
}

}  // namespace ncrec
