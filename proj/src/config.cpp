#include "resup/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "resup/errors.hpp"

namespace resup {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
  KeyValueConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw DataError("config line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                      trimmed + "'");
    }
    const std::string key = trim(trimmed.substr(0, eq));
    const std::string value = trim(trimmed.substr(eq + 1));
    if (key.empty()) {
      throw DataError("config line " + std::to_string(line_no) + ": empty key");
    }
    config.set(key, value);
  }
  return config;
}

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

bool KeyValueConfig::has(const std::string& key) const { return find(key).has_value(); }

std::optional<std::string> KeyValueConfig::find(const std::string& key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->first == key) return it->second;
  }
  return std::nullopt;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  return find(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto v = find(key);
  if (!v) return fallback;
  if (*v == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double parsed = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return parsed;
  } catch (const std::exception&) {
    throw DataError("config key '" + key + "': cannot parse '" + *v + "' as a number");
  }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  const auto v = find(key);
  if (!v) return fallback;
  int parsed = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), parsed);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    throw DataError("config key '" + key + "': cannot parse '" + *v + "' as an integer");
  }
  return parsed;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  const auto v = find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  throw DataError("config key '" + key + "': cannot parse '" + *v + "' as a boolean");
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  for (auto& entry : entries_) {
    if (entry.first == key) {
      entry.second = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void KeyValueConfig::set_double(const std::string& key, double value) {
  set(key, format_double(value));
}

void KeyValueConfig::set_int(const std::string& key, long long value) {
  set(key, std::to_string(value));
}

void KeyValueConfig::set_bool(const std::string& key, bool value) {
  set(key, value ? "true" : "false");
}

void KeyValueConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError("override must look like key=value, got '" + assignment + "'");
  }
  std::string key = assignment.substr(0, eq);
  std::string value = assignment.substr(eq + 1);
  // Allow spaces around '=' in quoted shell arguments.
  while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
  std::size_t begin = 0;
  while (begin < value.size() && (value[begin] == ' ' || value[begin] == '\t')) ++begin;
  set(key, value.substr(begin));
}

std::string KeyValueConfig::to_text() const {
  std::string out;
  for (const auto& [key, value] : entries_) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

void KeyValueConfig::write_file(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write config file: " + path.string());
  out << to_text();
}

}  // namespace resup
