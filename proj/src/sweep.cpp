#include "cellload/sweep.hpp"

#include "cellload/config.hpp"
#include "cellload/rng.hpp"
#include "cellload/stats.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cellload {

namespace {

constexpr std::uint64_t kSeedTagSweepMc = 0x73777065;
constexpr std::uint64_t kSeedTagDynPpp = 0x64707070;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Area-weighted mean with a delta-method (ratio estimator) standard error.
void weighted_mean_se(const std::vector<double>& areas, const std::vector<double>& vals,
                      double& mean, double& se) {
    double sa = 0.0, sx = 0.0;
    std::size_t n = areas.size();
    for (std::size_t i = 0; i < n; ++i) {
        sa += areas[i];
        sx += areas[i] * vals[i];
    }
    mean = sx / sa;
    if (n < 2) {
        se = 0.0;
        return;
    }
    double abar = sa / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = areas[i] * (vals[i] - mean);
        ss += d * d;
    }
    se = std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n))) / abar;
}

}  // namespace

SweepVariable sweep_variable_from_string(const std::string& s) {
    if (s == "lambda_bs") return SweepVariable::LambdaBs;
    if (s == "lambda_u") return SweepVariable::LambdaU;
    if (s == "sigma_bits") return SweepVariable::SigmaBits;
    if (s == "g0_db") return SweepVariable::G0Db;
    throw ConfigError("unknown sweep variable '" + s +
                      "' (expected lambda_bs | lambda_u | sigma_bits | g0_db)");
}

const char* to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::LambdaBs: return "lambda_bs";
        case SweepVariable::LambdaU: return "lambda_u";
        case SweepVariable::SigmaBits: return "sigma_bits";
        case SweepVariable::G0Db: return "g0_db";
    }
    return "?";
}

void SweepSpec::validate() const {
    if (values.empty()) throw std::invalid_argument("sweep: empty value list");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw std::invalid_argument("sweep: values must be strictly increasing");
        }
    }
}

LoadModel with_sweep_value(LoadModel base, SweepVariable v, double value) {
    switch (v) {
        case SweepVariable::LambdaBs: base.net.lambda_bs = value; break;
        case SweepVariable::LambdaU: base.traffic.lambda_u = value; break;
        case SweepVariable::SigmaBits: base.traffic.sigma_bits = value; break;
        case SweepVariable::G0Db: base.net.g0_db = value; break;
    }
    return base;
}

std::vector<SweepRow> run_sweep(const LoadModel& base, const SweepRequest& req) {
    req.spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(req.spec.values.size());
    for (std::size_t k = 0; k < req.spec.values.size(); ++k) {
        double value = req.spec.values[k];
        LoadModel m = with_sweep_value(base, req.spec.variable, value);
        m.validate();
        SweepRow row;
        row.value = value;
        if (req.want_stable_fraction) row.stable_fraction = stable_fraction(m, req.approx);
        if (req.want_mean_loads) {
            row.ei_mean_load = ei_mean_load(m, req.approx);
            row.mean_cell_load = mean_load_mc_baseline(m);
            try {
                row.cf_mean_load = cf_mean_load(m);
                row.cf_valid = true;
            } catch (const std::domain_error&) {
                row.cf_mean_load = std::nan("");
                row.cf_valid = false;
            }
        }
        if (req.validate_mc) {
            GeoMcOptions opts = req.mc;
            opts.seed = derive_seed(req.mc.seed, kSeedTagSweepMc, k);
            GeoMcSummary sum = run_geomc(m, opts);
            McColumns mc;
            mc.cells = static_cast<long long>(sum.inner_loads.size());
            MeanStderr typ = mean_stderr(sum.inner_loads);
            mc.typical_load = typ.mean;
            mc.typical_se = typ.stderr_;
            weighted_mean_se(sum.inner_areas, sum.inner_loads, mc.zero_load, mc.zero_se);
            long long stable = 0;
            for (double l : sum.inner_loads) {
                if (l < 1.0) ++stable;
            }
            double n = static_cast<double>(mc.cells);
            mc.stable_fraction = n > 0 ? static_cast<double>(stable) / n : 0.0;
            mc.stable_fraction_se =
                n > 0 ? std::sqrt(mc.stable_fraction * (1.0 - mc.stable_fraction) / n) : 0.0;
            row.mc = mc;
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::vector<std::string> sweep_columns(const SweepRequest& req) {
    std::vector<std::string> cols{to_string(req.spec.variable)};
    if (req.want_stable_fraction) cols.push_back("stable_fraction");
    if (req.want_mean_loads) {
        cols.insert(cols.end(),
                    {"ei_mean_load", "cf_mean_load", "cf_valid", "mean_cell_load"});
    }
    if (req.validate_mc) {
        if (req.want_stable_fraction) {
            cols.insert(cols.end(), {"mc_stable_fraction", "mc_stable_fraction_se"});
        }
        if (req.want_mean_loads) {
            cols.insert(cols.end(),
                        {"mc_typical_load", "mc_typical_load_se", "mc_zero_load",
                         "mc_zero_load_se"});
        }
        cols.push_back("mc_cells");
    }
    return cols;
}

std::vector<std::string> sweep_cells(const SweepRow& row, const SweepRequest& req) {
    std::vector<std::string> out{fmt(row.value)};
    if (req.want_stable_fraction) out.push_back(fmt(row.stable_fraction));
    if (req.want_mean_loads) {
        out.push_back(fmt(row.ei_mean_load));
        out.push_back(fmt(row.cf_mean_load));
        out.push_back(row.cf_valid ? "1" : "0");
        out.push_back(fmt(row.mean_cell_load));
    }
    if (req.validate_mc) {
        const McColumns& mc = *row.mc;
        if (req.want_stable_fraction) {
            out.push_back(fmt(mc.stable_fraction));
            out.push_back(fmt(mc.stable_fraction_se));
        }
        if (req.want_mean_loads) {
            out.push_back(fmt(mc.typical_load));
            out.push_back(fmt(mc.typical_se));
            out.push_back(fmt(mc.zero_load));
            out.push_back(fmt(mc.zero_se));
        }
        out.push_back(std::to_string(mc.cells));
    }
    return out;
}

std::string to_csv(const std::vector<std::string>& cols,
                   const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out += cols[i];
        out += (i + 1 < cols.size()) ? ',' : '\n';
    }
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out += r[i];
            out += (i + 1 < r.size()) ? ',' : '\n';
        }
    }
    return out;
}

std::string to_json(const std::vector<std::string>& cols,
                    const std::vector<std::vector<std::string>>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < cols.size(); ++i) obj[cols[i]] = r[i];
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows, const SweepRequest& req) {
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& r : rows) cells.push_back(sweep_cells(r, req));
    return to_csv(sweep_columns(req), cells);
}

std::string sweep_json(const std::vector<SweepRow>& rows, const SweepRequest& req) {
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& r : rows) cells.push_back(sweep_cells(r, req));
    return to_json(sweep_columns(req), cells);
}

std::vector<ThroughputRow> run_throughput_compare(const LoadModel& base,
                                                  const ThroughputRequest& req) {
    if (req.lambda_u_values.empty()) {
        throw std::invalid_argument("throughput compare: empty lambda_u grid");
    }
    if (req.realizations < 1) {
        throw std::invalid_argument("throughput compare: realizations must be >= 1");
    }
    std::vector<ThroughputRow> rows;
    double lam = base.net.lambda_bs;
    double spacing = 1.0 / std::sqrt(lam);
    double h = req.window_half_in_spacings * spacing;
    double guard = req.guard_in_spacings * spacing;

    for (std::size_t k = 0; k < req.lambda_u_values.size(); ++k) {
        LoadModel m = with_sweep_value(base, SweepVariable::LambdaU, req.lambda_u_values[k]);
        m.validate();
        ThroughputRow row;
        row.lambda_u = req.lambda_u_values[k];
        row.w = traffic_density(m.traffic);

        double rho_wsum = 0.0, users_match_wsum = 0.0;
        long long rho_cells = 0;
        double dyn_sum = 0.0, dyn_sumsq = 0.0;
        long long dyn_n = 0;
        double st_sum = 0.0, st_sumsq = 0.0;
        long long st_n = 0;

        for (int j = 0; j < req.realizations; ++j) {
            PppRealization r = [&] {
                for (int attempt = 0;; ++attempt) {
                    if (attempt >= 64) {
                        throw std::runtime_error("throughput compare: empty realizations");
                    }
                    std::uint64_t s = derive_seed(
                        req.sim.seed, kSeedTagDynPpp,
                        (k * static_cast<std::uint64_t>(req.realizations) + j) * 64 + attempt);
                    try {
                        return sample_ppp(lam, h, s, guard);
                    } catch (const EmptyRealizationError&) {
                    }
                }
            }();

            SimConfig cfg = req.sim;
            cfg.seed = r.seed;
            DynSimResult dyn = simulate_dynamic(r, m, cfg);
            row.unstable_cells += dyn.unstable_cells;
            row.stable_inner_cells += dyn.stable_inner_cells;
            row.completed_flows += dyn.completed_flows;
            if (dyn.stable_inner_cells == 0) continue;

            rho_wsum += dyn.rho_hat_mean * static_cast<double>(dyn.stable_inner_cells);
            rho_cells += dyn.stable_inner_cells;
            if (dyn.completed_flows > 0) {
                double nflows = static_cast<double>(dyn.completed_flows);
                double m2 = dyn.flow_throughput_se * dyn.flow_throughput_se * nflows +
                            dyn.flow_throughput_hat * dyn.flow_throughput_hat;
                dyn_sum += dyn.flow_throughput_hat * nflows;
                dyn_sumsq += m2 * nflows;
                dyn_n += dyn.completed_flows;
            }

            double matched = req.mean_users_override > 0.0
                                 ? req.mean_users_override
                                 : dyn.rho_hat_mean / std::max(1e-12, 1.0 - dyn.rho_hat_mean);
            matched = std::min(std::max(matched, 1e-3), 1e4);
            users_match_wsum += matched * static_cast<double>(dyn.stable_inner_cells);
            StaticPppResult st =
                simulate_static_ppp_users(r, m, matched, cfg, req.static_draws);
            if (st.user_samples > 0) {
                double nu = static_cast<double>(st.user_samples);
                double m2 = st.throughput_se * st.throughput_se * nu +
                            st.throughput_hat * st.throughput_hat;
                st_sum += st.throughput_hat * nu;
                st_sumsq += m2 * nu;
                st_n += st.user_samples;
            }
        }

        if (rho_cells == 0) {
            row.unstable_run = true;  // every inner cell hit the cap: report 0 by convention
            rows.push_back(row);
            continue;
        }
        row.rho_hat = rho_wsum / static_cast<double>(rho_cells);
        row.mean_users_matched = users_match_wsum / static_cast<double>(rho_cells);
        if (dyn_n > 0) {
            double n = static_cast<double>(dyn_n);
            row.r_dyn_hat = dyn_sum / n;
            double var = std::max(0.0, dyn_sumsq / n - row.r_dyn_hat * row.r_dyn_hat);
            row.r_dyn_se = std::sqrt(var / n);
        }
        if (st_n > 0) {
            double n = static_cast<double>(st_n);
            row.r_static_hat = st_sum / n;
            double var = std::max(0.0, st_sumsq / n - row.r_static_hat * row.r_static_hat);
            row.r_static_se = std::sqrt(var / n);
        }
        if (row.rho_hat > 0.0 && row.rho_hat < 1.0) {
            row.r_dyn_analytic = dyn_throughput(row.rho_hat, m).throughput_bits_s;
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

const std::vector<std::string>& throughput_columns() {
    static const std::vector<std::string> cols{
        "lambda_u",         "w",           "rho_hat",        "mean_users_matched",
        "r_dyn_hat",        "r_dyn_se",    "r_static_hat",   "r_static_se",
        "r_dyn_analytic",   "completed_flows", "unstable_cells", "stable_inner_cells",
        "unstable_run"};
    return cols;
}

std::vector<std::string> throughput_cells(const ThroughputRow& r) {
    return {fmt(r.lambda_u),
            fmt(r.w),
            fmt(r.rho_hat),
            fmt(r.mean_users_matched),
            fmt(r.r_dyn_hat),
            fmt(r.r_dyn_se),
            fmt(r.r_static_hat),
            fmt(r.r_static_se),
            fmt(r.r_dyn_analytic),
            std::to_string(r.completed_flows),
            std::to_string(r.unstable_cells),
            std::to_string(r.stable_inner_cells),
            r.unstable_run ? "1" : "0"};
}

}  // namespace

std::string throughput_csv(const std::vector<ThroughputRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& r : rows) cells.push_back(throughput_cells(r));
    return to_csv(throughput_columns(), cells);
}

std::string throughput_json(const std::vector<ThroughputRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& r : rows) cells.push_back(throughput_cells(r));
    return to_json(throughput_columns(), cells);
}

}  // namespace cellload
