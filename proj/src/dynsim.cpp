#include "cellload/dynsim.hpp"

#include "cellload/rng.hpp"
#include "nearest_grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cellload {

namespace {

constexpr int kSegments = 20;  // checkpoint boundaries at k * T / kSegments
constexpr std::uint64_t kSeedTagArrivals = 0x61727276;
constexpr std::uint64_t kSeedTagStatic = 0x73746174;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Arrival {
    double t = 0.0;
    double size_bits = 0.0;
    double rate = 0.0;  // peak Shannon rate at the flow's position
};

// Cumulative counters snapshotted at each checkpoint boundary; window
// statistics are differences of snapshots, which is what lets warmup be
// chosen after the simulation has run.
struct CellTrace {
    std::array<double, kSegments> busy{};
    std::array<double, kSegments> user_time{};  // integral of the flow count
    std::array<double, kSegments> served{};
    std::array<long long, kSegments> arrivals{};
    std::array<long long, kSegments> completions{};
    std::array<double, kSegments> sojourn_sum{};
    std::array<double, kSegments> tput_sum{};
    std::array<double, kSegments> tput_sumsq{};
    double max_rate = 0.0;
    bool unstable = false;
};

struct ActiveFlow {
    double remaining = 0.0;
    double rate = 0.0;
    double size = 0.0;
    double arrived = 0.0;
};

void simulate_cell(const std::vector<Arrival>& arr, double duration, int cap, CellTrace& tr) {
    double t = 0.0;
    std::size_t ai = 0;
    int seg = 0;  // next checkpoint index; boundary time (seg+1) * duration / kSegments
    std::vector<ActiveFlow> active;

    double busy = 0.0, user_time = 0.0, served = 0.0, sojourn = 0.0;
    double tput = 0.0, tput2 = 0.0;
    long long arrivals = 0, completions = 0;

    auto snapshot = [&](int k) {
        tr.busy[k] = busy;
        tr.user_time[k] = user_time;
        tr.served[k] = served;
        tr.arrivals[k] = arrivals;
        tr.completions[k] = completions;
        tr.sojourn_sum[k] = sojourn;
        tr.tput_sum[k] = tput;
        tr.tput_sumsq[k] = tput2;
    };

    while (seg < kSegments) {
        const double n = static_cast<double>(active.size());
        double t_arr = ai < arr.size() ? arr[ai].t : kInf;
        double t_ck = (seg + 1) * duration / kSegments;

        std::size_t dep_idx = active.size();
        double dep_dt = kInf;
        for (std::size_t f = 0; f < active.size(); ++f) {
            double dt = active[f].remaining * n / active[f].rate;
            if (dt < dep_dt) {
                dep_dt = dt;
                dep_idx = f;
            }
        }
        double t_dep = dep_idx < active.size() ? t + dep_dt : kInf;

        double t_next = std::min({t_ck, t_dep, t_arr});
        double dt = t_next - t;
        if (dt > 0.0) {
            if (!active.empty()) {
                busy += dt;
                user_time += n * dt;
                double share = dt / n;
                for (auto& f : active) {
                    double bits = f.rate * share;
                    served += bits;
                    f.remaining = std::max(0.0, f.remaining - bits);
                }
            }
            t = t_next;
        }

        // Accounting boundary first, then departures, then arrivals; any
        // fixed order keeps the run deterministic.
        if (t_ck <= t_dep && t_ck <= t_arr) {
            snapshot(seg);
            ++seg;
        } else if (t_dep <= t_arr) {
            ActiveFlow f = active[dep_idx];
            active.erase(active.begin() + static_cast<std::ptrdiff_t>(dep_idx));
            double s = t - f.arrived;
            if (s > 0.0) {
                ++completions;
                sojourn += s;
                double th = f.size / s;
                tput += th;
                tput2 += th * th;
            }
        } else {
            const Arrival& a = arr[ai++];
            ++arrivals;
            active.push_back({a.size_bits, a.rate, a.size_bits, a.t});
            tr.max_rate = std::max(tr.max_rate, a.rate);
            if (static_cast<int>(active.size()) > cap) {
                tr.unstable = true;
                return;
            }
        }
    }
}

struct WindowStats {
    double busy = 0.0, user_time = 0.0, served = 0.0, sojourn = 0.0, tput = 0.0, tput2 = 0.0;
    long long arrivals = 0, completions = 0;
};

WindowStats window_diff(const CellTrace& tr, int w_seg) {
    WindowStats s;
    int last = kSegments - 1;
    int base = w_seg - 1;
    auto d = [&](const auto& cum) { return base >= 0 ? cum[last] - cum[base] : cum[last]; };
    s.busy = d(tr.busy);
    s.user_time = d(tr.user_time);
    s.served = d(tr.served);
    s.sojourn = d(tr.sojourn_sum);
    s.tput = d(tr.tput_sum);
    s.tput2 = d(tr.tput_sumsq);
    s.arrivals = d(tr.arrivals);
    s.completions = d(tr.completions);
    return s;
}

}  // namespace

void SimConfig::validate() const {
    if (!(duration_s > 0.0)) throw std::invalid_argument("SimConfig: duration_s must be > 0");
    if (!(warmup_s >= 0.0) || warmup_s >= duration_s) {
        throw std::invalid_argument("SimConfig: warmup_s must lie in [0, duration_s)");
    }
    if (max_users_cap < 1) throw std::invalid_argument("SimConfig: max_users_cap must be >= 1");
    if (disk_radius_m < 0.0) throw std::invalid_argument("SimConfig: disk_radius_m must be >= 0");
}

DynSimResult simulate_dynamic(const PppRealization& r, const LoadModel& m, const SimConfig& cfg) {
    m.validate();
    cfg.validate();
    if (r.points.empty()) {
        throw std::invalid_argument("simulate_dynamic: realization has no stations");
    }

    const double h = r.window_half;
    const double inner = r.inner_half();
    const double snr_1m = xi(m.net);
    const double half_alpha = 0.5 * m.net.alpha;
    const double bandwidth = m.net.bandwidth_hz;
    const double lam_u = m.traffic.lambda_u;
    const double sigma = m.traffic.sigma_bits;

    // One global space-time arrival stream, split by nearest station; the
    // per-cell queues then evolve independently (noise-limited network: no
    // service coupling between cells).
    std::vector<std::vector<Arrival>> per_cell(r.points.size());
    if (lam_u > 0.0) {
        detail::NearestGrid grid(r.points, h);
        Rng rng(derive_seed(cfg.seed, kSeedTagArrivals, 0));
        double window_rate = lam_u * 4.0 * h * h;
        double r2_cap = cfg.disk_radius_m > 0.0 ? cfg.disk_radius_m * cfg.disk_radius_m : kInf;
        double t = 0.0;
        for (;;) {
            t += rng.exponential(window_rate);
            if (t >= cfg.duration_s) break;
            double px = rng.uniform(-h, h);
            double py = rng.uniform(-h, h);
            double size = rng.exponential(1.0 / sigma);
            if (px * px + py * py > r2_cap) continue;  // thinning outside the disk
            auto [bs, d2] = grid.nearest(px, py);
            double rate = bandwidth * std::log2(1.0 + snr_1m * std::pow(d2, -half_alpha));
            per_cell[bs].push_back({t, size, rate});
        }
    }

    std::vector<CellTrace> traces(r.points.size());
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        simulate_cell(per_cell[i], cfg.duration_s, cfg.max_users_cap, traces[i]);
    }

    // Warmup: explicit values are rounded up to a checkpoint boundary;
    // warmup_s = 0 discards segments until the cumulative mean user count
    // over stable cells settles to within 1% per segment (at most half the
    // run).
    int w_seg;
    double seg_len = cfg.duration_s / kSegments;
    if (cfg.warmup_s > 0.0) {
        w_seg = std::min(kSegments - 1,
                         static_cast<int>(std::ceil(cfg.warmup_s / seg_len - 1e-12)));
    } else {
        w_seg = kSegments / 2;
        for (int k = 2; k <= kSegments / 2; ++k) {
            double u_prev = 0.0, u_cur = 0.0;
            for (const auto& tr : traces) {
                if (tr.unstable) continue;
                u_prev += tr.user_time[k - 2];
                u_cur += tr.user_time[k - 1];
            }
            double m_prev = u_prev / ((k - 1) * seg_len);
            double m_cur = u_cur / (k * seg_len);
            if (std::abs(m_cur - m_prev) <= 0.01 * std::max(m_prev, 1e-300)) {
                w_seg = k;
                break;
            }
        }
    }
    double t_meas = cfg.duration_s - w_seg * seg_len;

    DynSimResult out;
    out.warmup_used_s = w_seg * seg_len;
    out.cells.resize(r.points.size());
    double rho_sum = 0.0, users_sum = 0.0, tput_sum = 0.0, tput_sumsq = 0.0;
    long long flows = 0;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        CellSimResult& c = out.cells[i];
        c.bs_index = static_cast<int>(i);
        c.in_inner_window =
            std::abs(r.points[i].x()) <= inner && std::abs(r.points[i].y()) <= inner;
        c.unstable = traces[i].unstable;
        if (c.unstable) {
            ++out.unstable_cells;
            continue;
        }
        WindowStats ws = window_diff(traces[i], w_seg);
        c.rho_hat = ws.busy / t_meas;
        c.mean_users = ws.user_time / t_meas;
        c.arrivals = ws.arrivals;
        c.completed_flows = ws.completions;
        c.mean_sojourn_s = ws.completions > 0 ? ws.sojourn / static_cast<double>(ws.completions) : 0.0;
        c.flow_throughput_hat =
            ws.completions > 0 ? ws.tput / static_cast<double>(ws.completions) : 0.0;
        c.busy_s = ws.busy;
        c.served_bits = ws.served;
        c.max_rate_bits_s = traces[i].max_rate;

        int batches = kSegments - w_seg;
        if (batches >= 2) {
            double sum = 0.0, sumsq = 0.0;
            for (int k = w_seg; k < kSegments; ++k) {
                double prev = k > 0 ? traces[i].user_time[k - 1] : 0.0;
                double u = (traces[i].user_time[k] - prev) / seg_len;
                sum += u;
                sumsq += u * u;
            }
            double bm = sum / batches;
            double var = std::max(0.0, sumsq / batches - bm * bm);
            c.mean_users_se = std::sqrt(var / batches);
        }

        if (c.in_inner_window) {
            ++out.stable_inner_cells;
            rho_sum += c.rho_hat;
            users_sum += c.mean_users;
            tput_sum += ws.tput;
            tput_sumsq += ws.tput2;
            flows += ws.completions;
        }
    }
    if (out.stable_inner_cells > 0) {
        out.rho_hat_mean = rho_sum / static_cast<double>(out.stable_inner_cells);
        out.mean_users_mean = users_sum / static_cast<double>(out.stable_inner_cells);
    }
    out.completed_flows = flows;
    if (flows > 0) {
        out.flow_throughput_hat = tput_sum / static_cast<double>(flows);
        double var =
            std::max(0.0, tput_sumsq / static_cast<double>(flows) -
                              out.flow_throughput_hat * out.flow_throughput_hat);
        out.flow_throughput_se = std::sqrt(var / static_cast<double>(flows));
    }
    return out;
}

StaticPppResult simulate_static_ppp_users(const PppRealization& r, const LoadModel& m,
                                          double mean_users, const SimConfig& cfg, int draws) {
    m.validate();
    cfg.validate();
    if (r.points.empty()) {
        throw std::invalid_argument("simulate_static_ppp_users: realization has no stations");
    }
    if (!(mean_users > 0.0)) {
        throw std::invalid_argument("simulate_static_ppp_users: mean_users must be > 0");
    }
    if (draws < 1) throw std::invalid_argument("simulate_static_ppp_users: draws must be >= 1");

    const double h = r.window_half;
    const double inner = r.inner_half();
    const double snr_1m = xi(m.net);
    const double half_alpha = 0.5 * m.net.alpha;
    const double bandwidth = m.net.bandwidth_hz;
    detail::NearestGrid grid(r.points, h);

    double sum = 0.0, sumsq = 0.0;
    long long count = 0;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        if (std::abs(r.points[i].x()) > inner || std::abs(r.points[i].y()) > inner) continue;
        Rng rng(derive_seed(cfg.seed, kSeedTagStatic, i));
        for (int d = 0; d < draws; ++d) {
            std::uint64_t n = rng.poisson(mean_users);
            for (std::uint64_t u = 0; u < n; ++u) {
                // Uniform position in this cell by rejection against the
                // nearest-station partition.
                double d2 = 0.0;
                long long tries = 0;
                for (;;) {
                    double px = rng.uniform(-h, h);
                    double py = rng.uniform(-h, h);
                    auto [bs, dist2] = grid.nearest(px, py);
                    if (bs == static_cast<int>(i)) {
                        d2 = dist2;
                        break;
                    }
                    if (++tries > 10000000) {
                        throw std::runtime_error(
                            "simulate_static_ppp_users: cell rejection sampling stuck");
                    }
                }
                double tput = bandwidth / static_cast<double>(n) *
                              std::log2(1.0 + snr_1m * std::pow(d2, -half_alpha));
                if (std::isfinite(tput)) {
                    sum += tput;
                    sumsq += tput * tput;
                    ++count;
                }
            }
        }
    }

    StaticPppResult out;
    out.draws = draws;
    out.user_samples = count;
    if (count > 0) {
        out.throughput_hat = sum / static_cast<double>(count);
        double var = std::max(0.0, sumsq / static_cast<double>(count) -
                                       out.throughput_hat * out.throughput_hat);
        out.throughput_se = std::sqrt(var / static_cast<double>(count));
    }
    return out;
}

}  // namespace cellload
