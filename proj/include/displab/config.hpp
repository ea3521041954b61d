#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace displab {

/// Flat key = value configuration with dotted section keys, '#' comments.
/// Values stay strings; typed getters parse on demand.
class Config {
  public:
    Config() = default;
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& key, const std::string& value) {
        values_[key] = value;
    }
    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;

    /// Comma-separated list of reals.
    std::vector<double> get_list(const std::string& key) const;

    /// All keys with the given dotted prefix, prefix stripped.
    std::map<std::string, std::string> section(const std::string& prefix) const;

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace displab
