#include "cellload/geomc.hpp"

#include "cellload/rng.hpp"
#include "cellload/stats.hpp"
#include "nearest_grid.hpp"

#include <atomic>
#include <cmath>
#include <cstddef>
#include <string>
#include <thread>
#include <utility>

namespace cellload {

namespace {

constexpr std::uint64_t kSeedTagScatter = 0x73636174;  // integration-point stream
constexpr std::uint64_t kSeedTagRealize = 0x7265616c;  // per-realization station stream

}  // namespace

PppRealization sample_ppp(double lambda_bs, double window_half, std::uint64_t seed,
                          double guard) {
    if (!(lambda_bs > 0.0)) throw std::invalid_argument("sample_ppp: lambda_bs must be > 0");
    if (!(window_half > 0.0)) throw std::invalid_argument("sample_ppp: window_half must be > 0");
    double min_guard = 3.0 / std::sqrt(lambda_bs);
    if (guard == 0.0) guard = min_guard;
    // Tolerant comparison: callers may assemble the same margin with a
    // different rounding order.
    if (guard < min_guard * (1.0 - 1e-12)) {
        throw std::invalid_argument("sample_ppp: guard below 3/sqrt(lambda_bs)");
    }
    if (!(guard < window_half)) {
        throw std::invalid_argument("sample_ppp: guard leaves an empty inner window");
    }

    PppRealization r;
    r.window_half = window_half;
    r.guard = guard;
    r.seed = seed;
    Rng rng(seed);
    double mean = lambda_bs * 4.0 * window_half * window_half;
    std::uint64_t n = rng.poisson(mean);
    if (n == 0) throw EmptyRealizationError("sample_ppp: empty realization");
    r.points.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        double x = rng.uniform(-window_half, window_half);
        double y = rng.uniform(-window_half, window_half);
        r.points.emplace_back(x, y);
    }
    return r;
}

std::vector<CellLoadSample> cell_loads(const PppRealization& r, const LoadModel& m,
                                       int n_integration_points) {
    m.validate();
    if (r.points.empty()) throw std::invalid_argument("cell_loads: realization has no stations");
    if (n_integration_points < 1) {
        throw std::invalid_argument("cell_loads: need at least one integration point");
    }

    const double h = r.window_half;
    const double inner = r.inner_half();
    const double w = traffic_density(m.traffic);
    const double snr_1m = xi(m.net);
    const double half_alpha = 0.5 * m.net.alpha;
    const double bandwidth = m.net.bandwidth_hz;
    const double point_weight = 4.0 * h * h / static_cast<double>(n_integration_points);

    detail::NearestGrid grid(r.points, h);
    std::vector<long long> counts(r.points.size(), 0);
    std::vector<double> inv_rate_sum(r.points.size(), 0.0);

    // Single fixed-order stream derived from the realization seed: the
    // estimate is a pure function of (realization, model, n).
    Rng rng(derive_seed(r.seed, kSeedTagScatter, 0));
    for (int p = 0; p < n_integration_points; ++p) {
        double px = rng.uniform(-h, h);
        double py = rng.uniform(-h, h);
        auto [bs, d2] = grid.nearest(px, py);
        ++counts[bs];
        if (w > 0.0) {
            double snr = snr_1m * std::pow(d2, -half_alpha);
            double rate = bandwidth * std::log2(1.0 + snr);
            double inv = w / rate;
            if (std::isfinite(inv)) inv_rate_sum[bs] += inv;
        }
    }

    std::vector<CellLoadSample> out(r.points.size());
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        out[i].bs_index = static_cast<int>(i);
        out[i].area_m2 = point_weight * static_cast<double>(counts[i]);
        out[i].load = point_weight * inv_rate_sum[i];
        out[i].in_inner_window =
            std::abs(r.points[i].x()) <= inner && std::abs(r.points[i].y()) <= inner;
    }
    return out;
}

TypicalZeroStats typical_vs_zero_stats(const std::vector<CellLoadSample>& samples,
                                       const std::vector<double>& load_grid,
                                       long long min_samples) {
    std::vector<double> areas, loads;
    for (const auto& s : samples) {
        if (s.in_inner_window && s.area_m2 > 0.0) {
            areas.push_back(s.area_m2);
            loads.push_back(s.load);
        }
    }
    long long n = static_cast<long long>(areas.size());
    if (n < min_samples) {
        throw InsufficientSamplesError("typical_vs_zero_stats: " + std::to_string(n) +
                                       " usable inner cells, need " +
                                       std::to_string(min_samples));
    }

    TypicalZeroStats st;
    st.n_cells = n;
    double sa = 0.0, sl = 0.0, saa = 0.0, sal = 0.0;
    for (long long i = 0; i < n; ++i) {
        sa += areas[i];
        sl += loads[i];
        saa += areas[i] * areas[i];
        sal += areas[i] * loads[i];
    }
    st.typical_mean_area = sa / static_cast<double>(n);
    st.typical_mean_load = sl / static_cast<double>(n);
    st.zero_mean_area = saa / sa;
    st.zero_mean_load = sal / sa;
    st.load_grid = load_grid;
    if (!load_grid.empty()) st.empirical_load_cdf = empirical_cdf(loads, load_grid);
    return st;
}

namespace {

struct RealizationOut {
    std::vector<double> areas, loads;
    long long total = 0, zero = 0, retries = 0;
};

RealizationOut run_one(const LoadModel& m, const GeoMcOptions& opts, int index) {
    double lam = m.net.lambda_bs;
    double spacing = 1.0 / std::sqrt(lam);
    double h = opts.window_half_in_spacings * spacing;
    double guard = opts.guard_in_spacings * spacing;
    double expected = lam * 4.0 * h * h;
    int n_points =
        static_cast<int>(std::ceil(expected)) * opts.points_per_cell;

    RealizationOut out;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 64) {
            throw std::runtime_error("run_geomc: 64 empty realizations in a row");
        }
        std::uint64_t seed =
            derive_seed(opts.seed, kSeedTagRealize,
                        static_cast<std::uint64_t>(index) * 64 + attempt);
        try {
            PppRealization r = sample_ppp(lam, h, seed, guard);
            auto samples = cell_loads(r, m, n_points);
            for (const auto& s : samples) {
                if (!s.in_inner_window) continue;
                ++out.total;
                if (s.area_m2 <= 0.0) {
                    ++out.zero;
                } else {
                    out.areas.push_back(s.area_m2);
                    out.loads.push_back(s.load);
                }
            }
            return out;
        } catch (const EmptyRealizationError&) {
            ++out.retries;
        }
    }
}

}  // namespace

GeoMcSummary run_geomc(const LoadModel& m, const GeoMcOptions& opts) {
    m.validate();
    if (opts.realizations < 1) throw std::invalid_argument("run_geomc: realizations must be >= 1");
    if (opts.points_per_cell < 1) {
        throw std::invalid_argument("run_geomc: points_per_cell must be >= 1");
    }
    if (!(opts.window_half_in_spacings > opts.guard_in_spacings)) {
        throw std::invalid_argument("run_geomc: window must exceed the guard margin");
    }

    std::vector<RealizationOut> slots(opts.realizations);
    int jobs = std::max(1, std::min(opts.jobs, opts.realizations));
    if (jobs == 1) {
        for (int i = 0; i < opts.realizations; ++i) slots[i] = run_one(m, opts, i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    int i = next.fetch_add(1);
                    if (i >= opts.realizations) break;
                    slots[i] = run_one(m, opts, i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    GeoMcSummary sum;
    sum.realizations = opts.realizations;
    for (auto& s : slots) {
        sum.inner_areas.insert(sum.inner_areas.end(), s.areas.begin(), s.areas.end());
        sum.inner_loads.insert(sum.inner_loads.end(), s.loads.begin(), s.loads.end());
        sum.inner_cells_total += s.total;
        sum.inner_cells_zero_points += s.zero;
        sum.empty_retries += s.retries;
    }
    return sum;
}

}  // namespace cellload
