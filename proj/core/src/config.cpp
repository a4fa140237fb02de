#include "afdforge/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "afdforge/text_util.hpp"

namespace afdforge::config {

Config Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse(in);
}

Config Config::parse(std::istream& in) {
  Config cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view t = util::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string_view::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key=value, got '" + std::string(t) + "'");
    std::string key(util::trim(t.substr(0, eq)));
    std::string value(util::trim(t.substr(eq + 1)));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
    if (cfg.values_.count(key))
      throw std::runtime_error("config line " + std::to_string(lineno) + ": duplicate key '" +
                               key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::resolve(const std::string& key, const std::optional<std::string>& flag,
                            const std::string& fallback) const {
  if (flag) return *flag;
  std::string env_key = "AFDFORGE_";
  for (char c : key) env_key.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (const char* env = std::getenv(env_key.c_str())) return env;
  if (auto v = get(key)) return *v;
  return fallback;
}

}  // namespace afdforge::config
