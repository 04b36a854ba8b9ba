#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwom/io/units.hpp"

namespace cwom {

enum class KeyKind { quantity, quantity_list, integer, real, text, boolean, choice };

struct KeySpec {
  std::string section;
  std::string key;
  KeyKind kind = KeyKind::quantity;
  Dimension dim;                     // quantity, quantity_list
  std::string default_text;          // "" = no default (key optional, absent)
  std::vector<std::string> choices;  // choice
  std::string help;
};

using ConfigSchema = std::vector<KeySpec>;

/// Every problem found in a config, one line each.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Sectioned key-value configuration checked against a schema.
///
///   [bath]
///   kappa = 1e9 /s      # comment
///   n_th  = 0
///
/// Unknown sections or keys, malformed values and wrong units are all
/// collected and reported together.
class Config {
 public:
  explicit Config(ConfigSchema schema);

  static Config parse(std::istream& in, ConfigSchema schema);
  static Config parse_file(const std::string& path, ConfigSchema schema);

  /// Overrides a value (re-validated).
  void set(const std::string& section, const std::string& key, const std::string& text);
  bool has(const std::string& section, const std::string& key) const;

  double quantity(const std::string& section, const std::string& key) const;
  std::vector<double> quantities(const std::string& section, const std::string& key) const;
  long integer(const std::string& section, const std::string& key) const;
  double real(const std::string& section, const std::string& key) const;
  std::string text(const std::string& section, const std::string& key) const;
  bool flag(const std::string& section, const std::string& key) const;

  /// All values, defaults included, in SI units at full precision. Parsing
  /// the output reproduces every value bit for bit.
  void write_effective(std::ostream& out) const;
  const ConfigSchema& schema() const { return schema_; }

 private:
  const KeySpec& spec(const std::string& section, const std::string& key) const;
  const std::string& raw(const std::string& section, const std::string& key) const;
  /// Empty if valid, else the reason.
  static std::string check(const KeySpec& s, const std::string& text);

  ConfigSchema schema_;
  std::map<std::string, std::string> values_;  // "section.key" -> text
};

}  // namespace cwom
