#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace resup {

// Ordered `key = value` store backing config files and artifact manifests.
// Lines starting with '#' are comments; later assignments win.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_text(const std::string& text);
  static KeyValueConfig parse_file(const std::filesystem::path& path);

  bool has(const std::string& key) const;
  std::optional<std::string> find(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  void set(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);
  void set_int(const std::string& key, long long value);
  void set_bool(const std::string& key, bool value);

  // Applies a "key=value" override string (CLI --set).
  void apply_override(const std::string& assignment);

  std::string to_text() const;
  void write_file(const std::filesystem::path& path) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Formats a double with round-trip precision so emitted artifacts are
// bit-stable across identical runs.
std::string format_double(double value);

}  // namespace resup
