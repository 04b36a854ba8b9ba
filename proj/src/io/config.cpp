#include "cwom/io/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cwom {
namespace {

std::string id(const std::string& section, const std::string& key) { return section + "." + key; }

std::string join(const std::vector<std::string>& lines) {
  std::string s = "invalid configuration:";
  for (const auto& l : lines) s += "\n  " + l;
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

long parse_integer(const std::string& text) {
  long v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) throw std::invalid_argument("expected an integer");
  return v;
}

double parse_real(const std::string& text) {
  const Quantity q = parse_quantity(text);
  if (!(q.dim == dims::none)) throw std::invalid_argument("expected a plain number");
  return q.value;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
  if (text == "false" || text == "no" || text == "off" || text == "0") return false;
  throw std::invalid_argument("expected true or false");
}

std::string trimmed(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strips a trailing "# ..." or "; ..." comment from a value.
std::string strip_comment(const std::string& v) {
  const auto p = v.find_first_of("#;");
  return trimmed(p == std::string::npos ? v : v.substr(0, p));
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::invalid_argument(join(problems)), problems_(std::move(problems)) {}

Config::Config(ConfigSchema schema) : schema_(std::move(schema)) {
  for (const auto& s : schema_)
    if (!s.default_text.empty()) values_[id(s.section, s.key)] = s.default_text;
}

std::string Config::check(const KeySpec& s, const std::string& text) {
  try {
    switch (s.kind) {
      case KeyKind::quantity:
        parse_value(text, s.dim);
        break;
      case KeyKind::quantity_list:
        for (const auto& item : split_list(text)) parse_value(item, s.dim);
        break;
      case KeyKind::integer:
        parse_integer(text);
        break;
      case KeyKind::real:
        parse_real(text);
        break;
      case KeyKind::boolean:
        parse_bool(text);
        break;
      case KeyKind::choice: {
        for (const auto& c : s.choices)
          if (c == text) return {};
        std::string opts;
        for (const auto& c : s.choices) opts += (opts.empty() ? "" : ", ") + c;
        return "must be one of: " + opts;
      }
      case KeyKind::text:
        break;
    }
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

Config Config::parse(std::istream& in, ConfigSchema schema) {
  Config c(std::move(schema));
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError({"line " + std::to_string(e.line()) + ": " + e.message()});
  }
  std::vector<std::string> problems;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      problems.push_back("key '" + section + "' outside of a section");
      continue;
    }
    bool known = false;
    for (const auto& s : c.schema_) known = known || s.section == section;
    if (!known) {
      problems.push_back("[" + section + "]: unknown section");
      continue;
    }
    for (const auto& [key, node] : body) {
      const std::string text = strip_comment(node.data());
      const KeySpec* spec = nullptr;
      for (const auto& s : c.schema_)
        if (s.section == section && s.key == key) spec = &s;
      if (!spec) {
        problems.push_back("[" + section + "] " + key + ": unknown key");
        continue;
      }
      if (const std::string why = check(*spec, text); !why.empty()) {
        problems.push_back("[" + section + "] " + key + " = " + text + ": " + why);
        continue;
      }
      c.values_[id(section, key)] = text;
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

Config Config::parse_file(const std::string& path, ConfigSchema schema) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  return parse(in, std::move(schema));
}

const KeySpec& Config::spec(const std::string& section, const std::string& key) const {
  for (const auto& s : schema_)
    if (s.section == section && s.key == key) return s;
  throw std::out_of_range("config key [" + section + "] " + key + " is not in the schema");
}

void Config::set(const std::string& section, const std::string& key, const std::string& text) {
  const KeySpec& s = spec(section, key);
  if (const std::string why = check(s, text); !why.empty())
    throw ConfigError({"[" + section + "] " + key + " = " + text + ": " + why});
  values_[id(section, key)] = text;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return values_.count(id(section, key)) != 0;
}

const std::string& Config::raw(const std::string& section, const std::string& key) const {
  spec(section, key);
  const auto it = values_.find(id(section, key));
  if (it == values_.end()) throw ConfigError({"[" + section + "] " + key + ": required key is missing"});
  return it->second;
}

double Config::quantity(const std::string& section, const std::string& key) const {
  return parse_value(raw(section, key), spec(section, key).dim);
}

std::vector<double> Config::quantities(const std::string& section, const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(raw(section, key))) out.push_back(parse_value(item, spec(section, key).dim));
  return out;
}

long Config::integer(const std::string& section, const std::string& key) const {
  return parse_integer(raw(section, key));
}

double Config::real(const std::string& section, const std::string& key) const { return parse_real(raw(section, key)); }

std::string Config::text(const std::string& section, const std::string& key) const { return raw(section, key); }

bool Config::flag(const std::string& section, const std::string& key) const { return parse_bool(raw(section, key)); }

void Config::write_effective(std::ostream& out) const {
  std::string current;
  for (const auto& s : schema_) {
    if (!has(s.section, s.key)) continue;
    if (s.section != current) {
      out << (current.empty() ? "" : "\n") << "[" << s.section << "]\n";
      current = s.section;
    }
    out << s.key << " = ";
    const std::string unit = s.dim.canonical();
    const std::string suffix = unit == "1" ? "" : " " + unit;
    switch (s.kind) {
      case KeyKind::quantity:
        out << full(quantity(s.section, s.key)) << suffix;
        break;
      case KeyKind::quantity_list: {
        const auto v = quantities(s.section, s.key);
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << full(v[i]) << suffix;
        break;
      }
      case KeyKind::real:
        out << full(real(s.section, s.key));
        break;
      case KeyKind::boolean:
        out << (flag(s.section, s.key) ? "true" : "false");
        break;
      default:
        out << text(s.section, s.key);
    }
    out << "\n";
  }
}

}  // namespace cwom
