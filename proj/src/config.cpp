#include "cellload/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cellload {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key, const std::string& origin) {
    errno = 0;
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || errno == ERANGE) {
        throw ConfigError("config key '" + key + "' (" + origin + "): '" + v +
                          "' is not a real number");
    }
    return x;
}

}  // namespace

const std::vector<ConfigKeyInfo>& Config::schema() {
    static const std::vector<ConfigKeyInfo> s = {
        {"pt_dbm", "real", "30", "transmit power [dBm]"},
        {"g0_db", "real", "0", "antenna gain [dB]"},
        {"k_pathloss_db", "real", "0", "path-loss coefficient at 1 m [dB]"},
        {"fc_ghz", "real", "0",
         "carrier frequency [GHz]; if set, derives k_pathloss_db = -(32.4 + 20 log10 fc)"},
        {"alpha", "real", "2", "path-loss exponent (>= 2)"},
        {"bandwidth_hz", "real", "1e9", "system bandwidth [Hz]"},
        {"noise_dbm_hz", "real", "-174", "noise power spectral density [dBm/Hz]"},
        {"lambda_bs", "real", "1e-5", "station density [1/m^2]"},
        {"lambda_u", "real", "1e-4", "flow arrival intensity [1/(m^2 s)]"},
        {"sigma_bits", "real", "1e8", "mean flow size [bits]"},
        {"constant_mode", "string", "rederived",
         "load-constant convention: rederived | printed"},
        {"approx_mode", "string", "reference",
         "exponential-integral pipeline: reference | printed"},
        {"snr_floor_db", "real", "-10", "SNR floor truncating the mean-cell integral [dB]"},
        {"quad_rel_tol", "real", "1e-8", "adaptive quadrature relative tolerance"},
        {"quad_rel_tol_nested", "real", "1e-6", "outer tolerance for nested quadratures"},
        {"sweep_variable", "string", "lambda_bs",
         "swept parameter: lambda_bs | lambda_u | sigma_bits | g0_db"},
        {"sweep_values", "real_list", "",
         "comma-separated strictly increasing grid for the swept parameter"},
        {"realizations", "int", "100", "Monte-Carlo realizations"},
        {"points_per_cell", "int", "1500", "integration points per expected station"},
        {"window_spacings", "real", "8", "outer window half-width [units of 1/sqrt(lambda_bs)]"},
        {"guard_spacings", "real", "3", "guard margin [units of 1/sqrt(lambda_bs)], >= 3"},
        {"seed", "uint", "1", "master RNG seed"},
        {"jobs", "int", "1", "worker threads for Monte-Carlo realizations"},
        {"duration_s", "real", "2000", "traffic-simulation duration [s]"},
        {"warmup_s", "real", "0", "discarded warmup [s]; 0 = adaptive settling rule"},
        {"max_users_cap", "int", "100000", "per-cell flow cap marking a cell unstable"},
        {"static_draws", "int", "200", "user-layout draws per cell in the static baseline"},
        {"mean_users", "real", "0",
         "static-baseline mean users per cell; 0 = match rho/(1-rho) from the dynamic run"},
        {"selftest_tol_scale", "real", "1",
         "multiplier on all selftest tolerances (diagnostic; < 1 tightens)"},
    };
    return s;
}

const ConfigKeyInfo& Config::info(const std::string& key) const {
    for (const auto& k : schema()) {
        if (key == k.key) return k;
    }
    throw ConfigError("unknown config key '" + key + "'");
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    Config c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (auto hash = s.find('#'); hash != std::string::npos) s = trim(s.substr(0, hash));
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + s + "'");
        }
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        std::string origin = path + ":" + std::to_string(lineno);
        try {
            c.info(key);
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ": " + e.what());
        }
        if (c.entries_.count(key)) {
            throw ConfigError(origin + ": duplicate key '" + key + "' (first at " +
                              c.entries_[key].origin + ")");
        }
        c.entries_[key] = {value, origin};
    }
    return c;
}

void Config::set_override(const std::string& key, const std::string& value) {
    info(key);
    entries_[key] = {value, "command line"};
}

bool Config::is_set(const std::string& key) const { return entries_.count(key) != 0; }

const std::string& Config::effective(const std::string& key, const char*& origin) const {
    auto it = entries_.find(key);
    if (it != entries_.end()) {
        origin = it->second.origin.c_str();
        return it->second.value;
    }
    static thread_local std::string def;
    def = info(key).def;
    origin = "default";
    return def;
}

double Config::get_double(const std::string& key) const {
    const char* origin = nullptr;
    const std::string& v = effective(key, origin);
    return parse_double(v, key, origin);
}

long long Config::get_int(const std::string& key) const {
    const char* origin = nullptr;
    const std::string& v = effective(key, origin);
    errno = 0;
    char* end = nullptr;
    long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0' || errno == ERANGE) {
        throw ConfigError("config key '" + key + "' (" + std::string(origin) + "): '" + v +
                          "' is not an integer");
    }
    return x;
}

unsigned long long Config::get_uint(const std::string& key) const {
    const char* origin = nullptr;
    const std::string& v = effective(key, origin);
    errno = 0;
    char* end = nullptr;
    unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0' || errno == ERANGE || v.find('-') != std::string::npos) {
        throw ConfigError("config key '" + key + "' (" + std::string(origin) + "): '" + v +
                          "' is not a nonnegative integer");
    }
    return x;
}

std::string Config::get_string(const std::string& key) const {
    const char* origin = nullptr;
    return effective(key, origin);
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    const char* origin = nullptr;
    const std::string& v = effective(key, origin);
    std::vector<double> out;
    if (trim(v).empty()) return out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(trim(item), key, origin));
    }
    return out;
}

bool Config::get_flag(const std::string& key) const {
    std::string v = get_string(key);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "': '" + v + "' is not a boolean");
}

std::map<std::string, std::string> Config::resolved() const {
    std::map<std::string, std::string> out;
    for (const auto& k : schema()) {
        const char* origin = nullptr;
        out[k.key] = effective(k.key, origin);
    }
    return out;
}

}  // namespace cellload
