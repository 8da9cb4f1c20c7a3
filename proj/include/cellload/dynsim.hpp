#pragma once

// Discrete-event traffic oracle. Flows arrive as a space-time Poisson
// process over the window, attach to the nearest station, and share that
// station's time equally (egalitarian processor sharing, the fluid model of
// Round Robin): with n concurrent flows, a flow at distance d progresses at
// C(d)/n where C(d) = B log2(1 + xi d^-alpha). File sizes are exponential
// with mean sigma. Service accounting is exact between events; there is no
// time discretization.
//
// Accounting runs on a fixed grid of 20 checkpoints so that warmup can be
// chosen after the fact: with warmup_s = 0 the run discards checkpoints
// until the cumulative mean user count settles to within 1% per checkpoint.
// Busy fraction, user counts, and per-flow throughput are reported over the
// post-warmup window; cells that ever exceed max_users_cap are flagged
// unstable and excluded from aggregates (overload cannot be distinguished
// from slow mixing in finite time, so it is capped and counted, not chased).
//
// The static baseline answers the same throughput question without queueing:
// each cell draws a Poisson number of simultaneous full-buffer users placed
// uniformly in the cell, every user getting a 1/n time share.

#include "cellload/analytic.hpp"
#include "cellload/geomc.hpp"

#include <cstdint>
#include <vector>

namespace cellload {

struct SimConfig {
    double duration_s = 0.0;
    double warmup_s = 0.0;  // 0 = adaptive (cumulative-mean settling rule)
    std::uint64_t seed = 1;
    int max_users_cap = 100000;
    // > 0 restricts arrivals to a disk of this radius at the window centre;
    // used by single-cell sanity runs that compare against the disk load.
    double disk_radius_m = 0.0;

    void validate() const;
};

struct CellSimResult {
    int bs_index = -1;
    bool in_inner_window = false;
    bool unstable = false;
    double rho_hat = 0.0;        // busy fraction over the measurement window
    double mean_users = 0.0;     // time average of the flow count
    double mean_users_se = 0.0;  // batch-means standard error
    long long arrivals = 0;      // arrivals inside the measurement window
    long long completed_flows = 0;
    double mean_sojourn_s = 0.0;
    double flow_throughput_hat = 0.0;  // mean over completed flows of size/sojourn
    double busy_s = 0.0;
    double served_bits = 0.0;          // work-conservation bookkeeping
    double max_rate_bits_s = 0.0;      // largest single-flow peak rate seen
};

struct DynSimResult {
    std::vector<CellSimResult> cells;
    double warmup_used_s = 0.0;
    // Aggregates over stable inner-window cells.
    double rho_hat_mean = 0.0;
    double mean_users_mean = 0.0;
    double flow_throughput_hat = 0.0;
    double flow_throughput_se = 0.0;
    long long completed_flows = 0;
    long long unstable_cells = 0;
    long long stable_inner_cells = 0;
};

DynSimResult simulate_dynamic(const PppRealization& r, const LoadModel& m, const SimConfig& cfg);

struct StaticPppResult {
    double throughput_hat = 0.0;  // per-user mean of (1/n time share) * peak rate
    double throughput_se = 0.0;
    long long user_samples = 0;
    int draws = 0;
};

// Full-buffer baseline with a Poisson number of uniformly placed users per
// inner cell (users are placed by rejection against the nearest-station
// partition). Draws with n = 0 contribute no user samples.
StaticPppResult simulate_static_ppp_users(const PppRealization& r, const LoadModel& m,
                                          double mean_users, const SimConfig& cfg,
                                          int draws = 200);

}  // namespace cellload
