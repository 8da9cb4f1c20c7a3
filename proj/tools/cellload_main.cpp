#include "cellload/config.hpp"
#include "cellload/params.hpp"
#include "cellload/selftest.hpp"
#include "cellload/sweep.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace cellload;

constexpr const char* kUsage =
    "usage: cellload <command> [options] [--KEY VALUE ...]\n"
    "\n"
    "commands:\n"
    "  stable-fraction     analytic stable fraction over a parameter sweep\n"
    "  mean-load           mean typical-cell load: quadrature, closed form, mean-cell\n"
    "  throughput-compare  dynamic (processor sharing) vs static full-buffer throughput\n"
    "  selftest            frozen-discrepancy diagnostics; nonzero exit on failure\n"
    "\n"
    "options:\n"
    "  --config PATH       flat key = value file ('#' comments)\n"
    "  --validate          add Monte-Carlo columns and fail (exit 2) if the\n"
    "                      analytic values leave the sampling bands\n"
    "  --realizations N    Monte-Carlo realization count (same as the config key)\n"
    "  --seed N            master seed (fallback: CELLLOAD_SEED, then 1)\n"
    "  --jobs N            worker threads for Monte-Carlo realizations\n"
    "  --out PATH          write the table to PATH and metadata to PATH.meta.json\n"
    "  --format csv|json   table format (default csv)\n"
    "  --help              this text, plus every config key\n"
    "\n"
    "Any config key can be overridden as --KEY VALUE. Power values are dBm,\n"
    "gains dB, noise density dBm/Hz; all other quantities are SI (meters,\n"
    "seconds, hertz, bits). The mean SNR at 1 m is\n"
    "  xi = 10^((pt_dbm + g0_db + k_pathloss_db - noise_dbm_hz\n"
    "            - 10 log10(bandwidth_hz) - 30 + 30) / 10)\n"
    "with both dBm values converted consistently; see README for details.\n"
    "Exit codes: 0 success, 1 usage or config error, 2 validation failure.\n";

int usage_error(const std::string& msg) {
    std::cerr << "cellload: " << msg << "\n\n" << kUsage;
    return 1;
}

void print_help() {
    std::cout << kUsage << "\nconfig keys (key, type, default, meaning):\n";
    for (const auto& k : Config::schema()) {
        std::cout << "  " << k.key << "  [" << k.type << ", default "
                  << (k.def[0] ? k.def : "empty") << "]\n      " << k.help << "\n";
    }
}

struct CliArgs {
    std::string command;
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    bool validate = false;
    bool help = false;
    std::vector<std::pair<std::string, std::string>> overrides;
};

bool parse_args(int argc, char** argv, CliArgs& args, std::string& err) {
    int i = 1;
    if (i < argc && argv[i][0] != '-') args.command = argv[i++];
    for (; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--help" || a == "-h") {
            args.help = true;
            continue;
        }
        if (a == "--validate") {
            args.validate = true;
            continue;
        }
        if (a.rfind("--", 0) != 0) {
            err = "unexpected argument '" + a + "'";
            return false;
        }
        if (i + 1 >= argc) {
            err = "option '" + a + "' needs a value";
            return false;
        }
        std::string key = a.substr(2);
        std::string value = argv[++i];
        if (key == "config") {
            args.config_path = value;
        } else if (key == "out") {
            args.out_path = value;
        } else if (key == "format") {
            if (value != "csv" && value != "json") {
                err = "--format must be csv or json";
                return false;
            }
            args.format = value;
        } else {
            args.overrides.emplace_back(key, value);
        }
    }
    return true;
}

LoadModel model_from_config(const Config& cfg) {
    LoadModel m;
    m.net.pt_dbm = cfg.get_double("pt_dbm");
    m.net.g0_db = cfg.get_double("g0_db");
    if (cfg.is_set("fc_ghz")) {
        if (cfg.is_set("k_pathloss_db")) {
            throw ConfigError("set either k_pathloss_db or fc_ghz, not both");
        }
        m.net.k_pathloss_db = k_pathloss_db_from_fc(cfg.get_double("fc_ghz"));
    } else {
        m.net.k_pathloss_db = cfg.get_double("k_pathloss_db");
    }
    m.net.alpha = cfg.get_double("alpha");
    m.net.bandwidth_hz = cfg.get_double("bandwidth_hz");
    m.net.noise_dbm_hz = cfg.get_double("noise_dbm_hz");
    m.net.lambda_bs = cfg.get_double("lambda_bs");
    m.traffic.lambda_u = cfg.get_double("lambda_u");
    m.traffic.sigma_bits = cfg.get_double("sigma_bits");
    std::string cm = cfg.get_string("constant_mode");
    if (cm == "rederived") {
        m.constant_mode = ConstantMode::Rederived;
    } else if (cm == "printed") {
        m.constant_mode = ConstantMode::Printed;
    } else {
        throw ConfigError("constant_mode must be rederived or printed, got '" + cm + "'");
    }
    m.snr_floor_db = cfg.get_double("snr_floor_db");
    m.quad_rel_tol = cfg.get_double("quad_rel_tol");
    m.quad_rel_tol_nested = cfg.get_double("quad_rel_tol_nested");
    m.validate();
    return m;
}

ApproxMode approx_from_config(const Config& cfg) {
    std::string am = cfg.get_string("approx_mode");
    if (am == "reference") return ApproxMode::Reference;
    if (am == "printed") return ApproxMode::Printed;
    throw ConfigError("approx_mode must be reference or printed, got '" + am + "'");
}

void write_outputs(const CliArgs& args, const Config& cfg, const std::string& table) {
    if (args.out_path.empty()) {
        std::cout << table;
        return;
    }
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + args.out_path + "'");
    out << table;
    out.close();

    nlohmann::json meta;
    meta["command"] = args.command;
    meta["format"] = args.format;
    meta["table"] = args.out_path;
    meta["validate"] = args.validate;
    nlohmann::json jcfg = nlohmann::json::object();
    for (const auto& [k, v] : cfg.resolved()) jcfg[k] = v;
    meta["config"] = jcfg;
    std::ofstream ms(args.out_path + ".meta.json", std::ios::binary);
    if (!ms) throw std::runtime_error("cannot write '" + args.out_path + ".meta.json'");
    ms << meta.dump(2) << "\n";
}

GeoMcOptions geomc_options(const Config& cfg) {
    GeoMcOptions mc;
    mc.window_half_in_spacings = cfg.get_double("window_spacings");
    mc.guard_in_spacings = cfg.get_double("guard_spacings");
    mc.points_per_cell = static_cast<int>(cfg.get_int("points_per_cell"));
    mc.realizations = static_cast<int>(cfg.get_int("realizations"));
    mc.seed = cfg.get_uint("seed");
    mc.jobs = static_cast<int>(cfg.get_int("jobs"));
    return mc;
}

int cmd_sweep_table(const CliArgs& args, const Config& cfg, bool stable, bool loads) {
    LoadModel m = model_from_config(cfg);
    SweepRequest req;
    req.spec.variable = sweep_variable_from_string(cfg.get_string("sweep_variable"));
    req.spec.values = cfg.get_double_list("sweep_values");
    if (req.spec.values.empty()) {
        throw ConfigError("sweep_values is empty; give a comma-separated increasing grid");
    }
    req.spec.validate();
    req.want_stable_fraction = stable;
    req.want_mean_loads = loads;
    req.approx = approx_from_config(cfg);
    req.validate_mc = args.validate;
    req.mc = geomc_options(cfg);

    std::vector<SweepRow> rows = run_sweep(m, req);
    write_outputs(args, cfg,
                  args.format == "csv" ? sweep_csv(rows, req) : sweep_json(rows, req));

    if (!args.validate) return 0;
    bool ok = true;
    for (const auto& row : rows) {
        const McColumns& mc = *row.mc;
        if (stable) {
            // KS-style sampling band plus the measured circular-model
            // allowance; the analytic CDF is not the empirical CDF's truth.
            double band = 1.36 / std::sqrt(std::max(1.0, static_cast<double>(mc.cells))) + 0.02;
            if (std::abs(row.stable_fraction - mc.stable_fraction) > band) {
                std::cerr << "validate: stable fraction off at " << to_string(req.spec.variable)
                          << " = " << row.value << ": analytic " << row.stable_fraction
                          << " vs empirical " << mc.stable_fraction << " (band " << band
                          << ")\n";
                ok = false;
            }
        }
        if (loads) {
            double band = 1.96 * mc.typical_se + 0.05 * mc.typical_load;
            if (std::abs(row.ei_mean_load - mc.typical_load) > band) {
                std::cerr << "validate: mean load off at " << to_string(req.spec.variable)
                          << " = " << row.value << ": quadrature " << row.ei_mean_load
                          << " vs Monte-Carlo " << mc.typical_load << " (band " << band
                          << ")\n";
                ok = false;
            }
            // Regime-free orderings: the mean-cell route overestimates the
            // typical-cell mean, and area weighting inflates the zero cell.
            if (row.mean_cell_load < row.ei_mean_load * (1.0 - 1e-9)) {
                std::cerr << "validate: mean-cell estimate below the typical-cell mean at "
                          << to_string(req.spec.variable) << " = " << row.value << "\n";
                ok = false;
            }
            if (mc.zero_load < mc.typical_load - 1.96 * (mc.zero_se + mc.typical_se)) {
                std::cerr << "validate: zero-cell load below the typical-cell band at "
                          << to_string(req.spec.variable) << " = " << row.value << "\n";
                ok = false;
            }
        }
    }
    return ok ? 0 : 2;
}

int cmd_throughput_compare(const CliArgs& args, const Config& cfg) {
    LoadModel m = model_from_config(cfg);
    std::string var = cfg.get_string("sweep_variable");
    if (var != "lambda_u") {
        throw ConfigError("throughput-compare sweeps the arrival intensity; set "
                          "sweep_variable = lambda_u");
    }
    ThroughputRequest req;
    req.lambda_u_values = cfg.get_double_list("sweep_values");
    if (req.lambda_u_values.empty()) {
        throw ConfigError("sweep_values is empty; give a comma-separated increasing grid");
    }
    SweepSpec spec;
    spec.variable = SweepVariable::LambdaU;
    spec.values = req.lambda_u_values;
    spec.validate();
    req.realizations = static_cast<int>(cfg.get_int("realizations"));
    req.window_half_in_spacings = cfg.get_double("window_spacings");
    req.guard_in_spacings = cfg.get_double("guard_spacings");
    req.sim.duration_s = cfg.get_double("duration_s");
    req.sim.warmup_s = cfg.get_double("warmup_s");
    req.sim.seed = cfg.get_uint("seed");
    req.sim.max_users_cap = static_cast<int>(cfg.get_int("max_users_cap"));
    req.mean_users_override = cfg.get_double("mean_users");
    req.static_draws = static_cast<int>(cfg.get_int("static_draws"));

    std::vector<ThroughputRow> rows = run_throughput_compare(m, req);
    write_outputs(args, cfg,
                  args.format == "csv" ? throughput_csv(rows) : throughput_json(rows));
    return 0;
}

int cmd_selftest(const CliArgs& args, const Config& cfg) {
    LoadModel m = model_from_config(cfg);
    SelftestReport rep = run_selftest(m, cfg.get_double("selftest_tol_scale"));
    write_outputs(args, cfg, selftest_text(rep));
    return rep.all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CliArgs args;
    std::string err;
    if (!parse_args(argc, argv, args, err)) return usage_error(err);
    if (args.help || args.command.empty()) {
        if (args.help) {
            print_help();
            return 0;
        }
        return usage_error("missing command");
    }

    try {
        Config cfg;
        if (!args.config_path.empty()) cfg = Config::from_file(args.config_path);
        for (const auto& [k, v] : args.overrides) {
            try {
                cfg.set_override(k, v);
            } catch (const ConfigError& e) {
                return usage_error(std::string(e.what()) + " (from --" + k + ")");
            }
        }
        if (!cfg.is_set("seed")) {
            if (const char* env = std::getenv("CELLLOAD_SEED")) {
                cfg.set_override("seed", env);
            }
        }

        if (args.command == "stable-fraction") return cmd_sweep_table(args, cfg, true, false);
        if (args.command == "mean-load") return cmd_sweep_table(args, cfg, false, true);
        if (args.command == "throughput-compare") return cmd_throughput_compare(args, cfg);
        if (args.command == "selftest") return cmd_selftest(args, cfg);
        return usage_error("unknown command '" + args.command + "'");
    } catch (const ConfigError& e) {
        std::cerr << "cellload: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "cellload: " << e.what() << "\n";
        return 1;
    }
}
