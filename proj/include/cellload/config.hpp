#pragma once

// Flat key=value configuration: a text file of `key = value` lines ('#'
// comments), overridden by command-line pairs. Every key is declared in a
// schema table with a type, default, and help line; unknown keys and
// malformed values are reported with their origin (file:line or the command
// line). The resolved configuration (effective value of every key) is what
// output metadata records.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cellload {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ConfigKeyInfo {
    const char* key;
    const char* type;  // "real" | "int" | "uint" | "string" | "real_list" | "flag"
    const char* def;
    const char* help;
};

class Config {
  public:
    static const std::vector<ConfigKeyInfo>& schema();

    // Parses a config file; throws ConfigError naming file and line.
    static Config from_file(const std::string& path);

    // Command-line override; throws ConfigError on unknown key.
    void set_override(const std::string& key, const std::string& value);

    bool is_set(const std::string& key) const;  // set explicitly (file or override)

    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;
    unsigned long long get_uint(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
    bool get_flag(const std::string& key) const;

    // Effective value of every schema key, as strings, for metadata output.
    std::map<std::string, std::string> resolved() const;

  private:
    struct Entry {
        std::string value;
        std::string origin;
    };
    const ConfigKeyInfo& info(const std::string& key) const;
    const std::string& effective(const std::string& key, const char*& origin) const;

    std::map<std::string, Entry> entries_;
};

}  // namespace cellload
