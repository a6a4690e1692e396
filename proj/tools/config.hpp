// Key-value run configuration. One `key = value` pair per line, `#` starts
// a comment, lists are comma- or semicolon-separated. Physical quantities
// carry their unit in the key name (omega_x_khz, t_swap_us, ...); conversion
// to SI happens here at the boundary. Validation collects every violation
// before failing, and unknown keys are rejected.
#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ionrot::cli {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

struct RawConfig {
  std::vector<std::pair<std::string, std::string>> entries;  // in file order

  static RawConfig parse_string(const std::string& text);
  static RawConfig parse_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string serialize() const;  // canonical `key = value` lines, sorted
};

class ConfigReader {
 public:
  explicit ConfigReader(const RawConfig& raw);

  double require_double(const std::string& key);
  double get_double(const std::string& key, double fallback);
  long long require_int(const std::string& key);
  long long get_int(const std::string& key, long long fallback);
  std::string require_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback);
  std::vector<std::string> get_string_list(const std::string& key,
                                           const std::vector<std::string>& fallback);

  void add_issue(const std::string& issue) { issues_.push_back(issue); }

  // Rejects unknown keys and throws ConfigError with all collected issues.
  void finish();

  // Resolved key/value pairs (provided + defaulted), for the sidecar.
  const std::vector<std::pair<std::string, std::string>>& resolved() const {
    return resolved_;
  }

 private:
  const std::string* find(const std::string& key);
  void record(const std::string& key, const std::string& value);

  const RawConfig& raw_;
  std::set<std::string> consumed_;
  std::vector<std::string> issues_;
  std::vector<std::pair<std::string, std::string>> resolved_;
};

double parse_double(const std::string& s);           // throws std::invalid_argument
std::string format_value(double v);                  // shortest round-trip
std::vector<std::string> split_list(const std::string& s);

}  // namespace ionrot::cli
