#pragma once

#include <map>
#include <string>
#include <vector>

namespace expara {

inline constexpr const char* kToolVersion = "expara 0.1.0";

// Flat key-value text:
//   # comment
//   [section]
//   key = value            lists are comma separated
// Numbers accept arithmetic with pi, e.g. "pi/128" or "14/2^16".
class ExperimentConfig {
 public:
  static ExperimentConfig parse(const std::string& text, const std::string& origin = "config");
  static ExperimentConfig load(const std::string& path);

  // Canonical text: schema order, only keys that were set.
  std::string serialize() const;
  std::string hash() const;

  bool has(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, const std::string& value);

  std::string str(const std::string& section, const std::string& key) const;
  long integer(const std::string& section, const std::string& key) const;
  double real(const std::string& section, const std::string& key) const;
  std::vector<long> int_list(const std::string& section, const std::string& key) const;
  std::vector<double> real_list(const std::string& section, const std::string& key) const;
  std::vector<std::string> str_list(const std::string& section, const std::string& key) const;

  struct Entry {
    std::string section, key, value;
  };
  std::vector<Entry> entries() const;

  bool operator==(const ExperimentConfig& o) const { return values_ == o.values_; }

 private:
  std::string raw(const std::string& section, const std::string& key) const;
  std::map<std::string, std::string> values_;  // "section.key" -> value
};

double eval_number(const std::string& expr);

struct PresetInfo {
  std::string name;
  std::string summary;
  std::string text;
};

const std::vector<PresetInfo>& presets();
const PresetInfo& find_preset(const std::string& name);
// One-line listing including the key numeric parameters of the preset.
std::string describe_preset(const PresetInfo& p);

}  // namespace expara
