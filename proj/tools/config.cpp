#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ionrot/table.hpp"

namespace ionrot::cli {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "configuration invalid:";
  for (const auto& i : issues) out += "\n  - " + i;
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

RawConfig RawConfig::parse_string(const std::string& text) {
  RawConfig cfg;
  std::vector<std::string> issues;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      issues.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    if (cfg.has(key)) {
      issues.push_back("duplicate key '" + key + "'");
      continue;
    }
    cfg.entries.emplace_back(key, value);
  }
  if (!issues.empty()) throw ConfigError(issues);
  return cfg;
}

RawConfig RawConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

bool RawConfig::has(const std::string& key) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const auto& e) { return e.first == key; });
}

std::string RawConfig::serialize() const {
  std::vector<std::pair<std::string, std::string>> sorted = entries;
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (const auto& [k, v] : sorted) out += k + " = " + v + "\n";
  return out;
}

ConfigReader::ConfigReader(const RawConfig& raw) : raw_(raw) {}

const std::string* ConfigReader::find(const std::string& key) {
  for (const auto& [k, v] : raw_.entries) {
    if (k == key) {
      consumed_.insert(key);
      return &v;
    }
  }
  return nullptr;
}

void ConfigReader::record(const std::string& key, const std::string& value) {
  for (auto& [k, v] : resolved_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  resolved_.emplace_back(key, value);
}

double parse_double(const std::string& s) {
  double v = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::string format_value(double v) { return format_double(v); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : s) {
    if (ch == ',' || ch == ';') {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += ch;
    }
  }
  item = trim(item);
  if (!item.empty()) out.push_back(item);
  return out;
}

double ConfigReader::require_double(const std::string& key) {
  const std::string* v = find(key);
  if (!v) {
    issues_.push_back("missing required key '" + key + "'");
    return 0;
  }
  record(key, *v);
  try {
    return parse_double(*v);
  } catch (const std::invalid_argument&) {
    issues_.push_back("key '" + key + "': not a number ('" + *v + "')");
    return 0;
  }
}

double ConfigReader::get_double(const std::string& key, double fallback) {
  const std::string* v = find(key);
  if (!v) {
    record(key, format_value(fallback));
    return fallback;
  }
  record(key, *v);
  try {
    return parse_double(*v);
  } catch (const std::invalid_argument&) {
    issues_.push_back("key '" + key + "': not a number ('" + *v + "')");
    return fallback;
  }
}

long long ConfigReader::require_int(const std::string& key) {
  const double d = require_double(key);
  const long long i = static_cast<long long>(d);
  if (static_cast<double>(i) != d)
    issues_.push_back("key '" + key + "': expected an integer");
  return i;
}

long long ConfigReader::get_int(const std::string& key, long long fallback) {
  if (!raw_.has(key)) {
    record(key, std::to_string(fallback));
    return fallback;
  }
  const double d = get_double(key, static_cast<double>(fallback));
  const long long i = static_cast<long long>(d);
  if (static_cast<double>(i) != d)
    issues_.push_back("key '" + key + "': expected an integer");
  return i;
}

std::string ConfigReader::require_string(const std::string& key) {
  const std::string* v = find(key);
  if (!v) {
    issues_.push_back("missing required key '" + key + "'");
    return "";
  }
  record(key, *v);
  return *v;
}

std::string ConfigReader::get_string(const std::string& key, const std::string& fallback) {
  const std::string* v = find(key);
  if (!v) {
    record(key, fallback);
    return fallback;
  }
  record(key, *v);
  return *v;
}

bool ConfigReader::get_bool(const std::string& key, bool fallback) {
  const std::string* v = find(key);
  if (!v) {
    record(key, fallback ? "true" : "false");
    return fallback;
  }
  record(key, *v);
  if (*v == "true" || *v == "1") return true;
  if (*v == "false" || *v == "0") return false;
  issues_.push_back("key '" + key + "': expected true/false");
  return fallback;
}

std::vector<double> ConfigReader::get_double_list(const std::string& key,
                                                  const std::vector<double>& fallback) {
  const std::string* v = find(key);
  if (!v) {
    std::string repr;
    for (size_t i = 0; i < fallback.size(); ++i)
      repr += (i ? ", " : "") + format_value(fallback[i]);
    record(key, repr);
    return fallback;
  }
  record(key, *v);
  std::vector<double> out;
  for (const auto& item : split_list(*v)) {
    try {
      out.push_back(parse_double(item));
    } catch (const std::invalid_argument&) {
      issues_.push_back("key '" + key + "': list item '" + item + "' is not a number");
    }
  }
  return out;
}

std::vector<std::string> ConfigReader::get_string_list(
    const std::string& key, const std::vector<std::string>& fallback) {
  const std::string* v = find(key);
  if (!v) {
    std::string repr;
    for (size_t i = 0; i < fallback.size(); ++i) repr += (i ? ", " : "") + fallback[i];
    record(key, repr);
    return fallback;
  }
  record(key, *v);
  return split_list(*v);
}

void ConfigReader::finish() {
  for (const auto& [k, v] : raw_.entries)
    if (!consumed_.contains(k)) issues_.push_back("unknown key '" + k + "'");
  if (!issues_.empty()) throw ConfigError(issues_);
}

}  // namespace ionrot::cli
