#pragma once

#include <map>
#include <optional>
#include <string>

namespace afdforge::config {

// Flat key=value text file, '#' comments. Unknown keys are kept; callers
// validate against their own key set.
class Config {
 public:
  static Config load_file(const std::string& path);
  static Config parse(std::istream& in);

  std::optional<std::string> get(const std::string& key) const;
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  const std::map<std::string, std::string>& values() const { return values_; }

  // Resolution order: explicit flag, AFDFORGE_<KEY> environment variable,
  // config file, built-in default.
  std::string resolve(const std::string& key, const std::optional<std::string>& flag,
                      const std::string& fallback) const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace afdforge::config
