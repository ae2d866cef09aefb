#include "expara/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "expara/errors.hpp"
#include "expara/format.hpp"

namespace expara {

namespace {

enum class Type { string, integer, real, int_list, real_list, str_list };

struct KeySpec {
  const char* section;
  const char* key;
  Type type;
  const char* fallback;  // nullptr: required when read
};

// The full schema; anything else in a config file is rejected.
const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> s = {
      {"experiment", "kind", Type::string, nullptr},
      {"experiment", "preset", Type::string, ""},
      {"experiment", "name", Type::string, "result"},
      {"problem", "type", Type::string, "none"},
      {"problem", "nx", Type::integer, nullptr},
      {"problem", "ny", Type::integer, nullptr},
      {"problem", "ic", Type::string, "smooth"},
      {"problem", "delta", Type::real, "0.022"},
      {"problem", "tfinal", Type::real, nullptr},
      {"method", "order", Type::str_list, "erk4"},
      {"method", "steps", Type::int_list, nullptr},
      {"method", "reference", Type::string, "rk4"},
      {"method", "reference_steps", Type::integer, "0"},
      {"method", "reference_rho", Type::real, "0"},
      {"method", "track_times", Type::real_list, ""},
      {"method", "snapshots", Type::real_list, ""},
      {"repartition", "kind", Type::string, "none"},
      {"repartition", "rho", Type::real_list, "0"},
      {"repartition", "epsilon", Type::real, nullptr},
      {"repartition", "power", Type::integer, "2"},
      {"repartition", "hyper_order", Type::integer, "8"},
      {"repartition", "gamma", Type::real, "0"},
      {"repartition", "q", Type::integer, "4"},
      {"parareal", "np", Type::integer, nullptr},
      {"parareal", "nf", Type::integer, nullptr},
      {"parareal", "ng", Type::int_list, "1"},
      {"parareal", "k", Type::integer, "0"},
      {"parareal", "fine", Type::string, "erk4"},
      {"parareal", "coarse", Type::string, "erk3"},
      {"parareal", "t0", Type::real, "0"},
      {"parareal", "tfinal", Type::real, nullptr},
      {"parareal", "cost_coarse", Type::real, "0"},
      {"parareal", "cost_fine", Type::real, "0"},
      {"analysis", "target", Type::string, "method"},
      {"analysis", "iteration", Type::integer, "0"},
      {"analysis", "r1_min", Type::real, "0"},
      {"analysis", "r1_max", Type::real, "1"},
      {"analysis", "r1_points", Type::integer, "101"},
      {"analysis", "r2_min", Type::real, "-1"},
      {"analysis", "r2_max", Type::real, "1"},
      {"analysis", "r2_points", Type::integer, "101"},
      {"analysis", "c2", Type::real_list, "0"},
      {"analysis", "r2_samples", Type::integer, "33"},
      {"analysis", "tolerance", Type::real, "1e-10"},
      {"analysis", "k_list", Type::int_list, "0"},
  };
  return s;
}

const KeySpec* lookup(const std::string& section, const std::string& key) {
  for (const auto& k : schema())
    if (section == k.section && key == k.key) return &k;
  return nullptr;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Recursive-descent evaluator for + - * / ^ ( ) pi and decimal literals.
class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}
  double parse() {
    double v = sum();
    skip();
    if (pos_ != s_.size()) fail();
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail() const { throw ConfigError("cannot parse number '" + s_ + "'"); }
  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  double power() {
    double b = atom();
    if (eat('^')) return std::pow(b, unary());
    return b;
  }
  double atom() {
    skip();
    if (eat('(')) {
      double v = sum();
      if (!eat(')')) fail();
      return v;
    }
    if (s_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return std::numbers::pi;
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail();
    pos_ += std::size_t(end - begin);
    return v;
  }
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

double eval_number(const std::string& expr) {
  double v = ExprParser(expr).parse();
  if (!std::isfinite(v)) throw ConfigError("number '" + expr + "' is not finite");
  return v;
}

void ExperimentConfig::set(const std::string& section, const std::string& key,
                           const std::string& value) {
  const KeySpec* spec = lookup(section, key);
  if (!spec) throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
  values_[section + "." + key] = trim(value);
  // Validate eagerly so malformed values fail at load time.
  switch (spec->type) {
    case Type::integer: integer(section, key); break;
    case Type::real: real(section, key); break;
    case Type::int_list: int_list(section, key); break;
    case Type::real_list: real_list(section, key); break;
    default: break;
  }
}

ExperimentConfig ExperimentConfig::parse(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      bool known = false;
      for (const auto& k : schema()) known = known || section == k.section;
      if (!known) throw ConfigError(where + "unknown section [" + section + "]");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    if (section.empty()) throw ConfigError(where + "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    if (cfg.has(section, key)) throw ConfigError(where + "duplicate key '" + key + "'");
    try {
      cfg.set(section, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream os;
  std::string current;
  for (const auto& k : schema()) {
    auto it = values_.find(std::string(k.section) + "." + k.key);
    if (it == values_.end()) continue;
    if (current != k.section) {
      if (!current.empty()) os << '\n';
      os << '[' << k.section << "]\n";
      current = k.section;
    }
    os << k.key << " = " << it->second << '\n';
  }
  return os.str();
}

std::vector<ExperimentConfig::Entry> ExperimentConfig::entries() const {
  std::vector<Entry> out;
  for (const auto& k : schema()) {
    auto it = values_.find(std::string(k.section) + "." + k.key);
    if (it != values_.end()) out.push_back({k.section, k.key, it->second});
  }
  return out;
}

std::string ExperimentConfig::hash() const { return hex64(fnv1a64(serialize())); }

bool ExperimentConfig::has(const std::string& section, const std::string& key) const {
  return values_.count(section + "." + key) > 0;
}

std::string ExperimentConfig::raw(const std::string& section, const std::string& key) const {
  const KeySpec* spec = lookup(section, key);
  if (!spec) throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
  auto it = values_.find(section + "." + key);
  if (it != values_.end()) return it->second;
  if (!spec->fallback)
    throw ConfigError("missing required key '" + key + "' in section [" + section + "]");
  return spec->fallback;
}

std::string ExperimentConfig::str(const std::string& section, const std::string& key) const {
  return raw(section, key);
}

long ExperimentConfig::integer(const std::string& section, const std::string& key) const {
  const double v = eval_number(raw(section, key));
  if (v != std::floor(v) || std::abs(v) > 9e15)
    throw ConfigError("key '" + key + "' must be an integer");
  return long(v);
}

double ExperimentConfig::real(const std::string& section, const std::string& key) const {
  return eval_number(raw(section, key));
}

std::vector<long> ExperimentConfig::int_list(const std::string& section,
                                             const std::string& key) const {
  std::vector<long> out;
  for (const auto& item : split_list(raw(section, key))) {
    const double v = eval_number(item);
    if (v != std::floor(v)) throw ConfigError("key '" + key + "' must hold integers");
    out.push_back(long(v));
  }
  return out;
}

std::vector<double> ExperimentConfig::real_list(const std::string& section,
                                                const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(raw(section, key))) out.push_back(eval_number(item));
  return out;
}

std::vector<std::string> ExperimentConfig::str_list(const std::string& section,
                                                    const std::string& key) const {
  return split_list(raw(section, key));
}

}  // namespace expara
