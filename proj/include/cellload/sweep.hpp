#pragma once

// Parameter-sweep orchestration behind the table-producing CLI commands.
// Rows are computed in grid order; Monte-Carlo validation columns reuse the
// geometric oracle with a per-row seed derived from the master seed, so a
// sweep's output is a pure function of (config, seed) regardless of the
// worker count.

#include "cellload/analytic.hpp"
#include "cellload/dynsim.hpp"
#include "cellload/geomc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cellload {

enum class SweepVariable { LambdaBs, LambdaU, SigmaBits, G0Db };

SweepVariable sweep_variable_from_string(const std::string& s);
const char* to_string(SweepVariable v);

struct SweepSpec {
    SweepVariable variable = SweepVariable::LambdaBs;
    std::vector<double> values;

    void validate() const;  // nonempty, strictly increasing
};

LoadModel with_sweep_value(LoadModel base, SweepVariable v, double value);

struct McColumns {
    double typical_load = 0.0, typical_se = 0.0;
    double zero_load = 0.0, zero_se = 0.0;
    double stable_fraction = 0.0, stable_fraction_se = 0.0;
    long long cells = 0;
};

struct SweepRow {
    double value = 0.0;
    double stable_fraction = 0.0;
    double ei_mean_load = 0.0;
    double cf_mean_load = 0.0;
    bool cf_valid = false;  // closed form needs alpha = 2 and t1 > 0
    double mean_cell_load = 0.0;
    std::optional<McColumns> mc;
};

struct SweepRequest {
    SweepSpec spec;
    bool want_stable_fraction = false;
    bool want_mean_loads = false;
    ApproxMode approx = ApproxMode::Reference;
    bool validate_mc = false;
    GeoMcOptions mc;  // seed here is the master seed; rows derive their own
};

std::vector<SweepRow> run_sweep(const LoadModel& base, const SweepRequest& req);

std::string sweep_csv(const std::vector<SweepRow>& rows, const SweepRequest& req);
std::string sweep_json(const std::vector<SweepRow>& rows, const SweepRequest& req);

struct ThroughputRow {
    double lambda_u = 0.0;
    double w = 0.0;  // offered traffic density lambda_u * sigma
    double rho_hat = 0.0;
    double mean_users_matched = 0.0;
    double r_dyn_hat = 0.0, r_dyn_se = 0.0;
    double r_static_hat = 0.0, r_static_se = 0.0;
    double r_dyn_analytic = 0.0;  // w (1 - rho) / (rho lambda) at the measured rho
    long long completed_flows = 0;
    long long unstable_cells = 0;
    long long stable_inner_cells = 0;
    bool unstable_run = false;  // no stable inner cell; throughputs reported as 0
};

struct ThroughputRequest {
    std::vector<double> lambda_u_values;
    int realizations = 4;
    double window_half_in_spacings = 6.0;
    double guard_in_spacings = 3.0;
    SimConfig sim;                    // seed here is the master seed
    double mean_users_override = 0.0; // 0 = match rho/(1-rho) per realization
    int static_draws = 200;
};

std::vector<ThroughputRow> run_throughput_compare(const LoadModel& base,
                                                  const ThroughputRequest& req);

std::string throughput_csv(const std::vector<ThroughputRow>& rows);
std::string throughput_json(const std::vector<ThroughputRow>& rows);

}  // namespace cellload
