#pragma once

// Monte-Carlo geometric oracle. Samples station layouts from a planar
// Poisson process, partitions space by nearest station (the Voronoi
// tessellation, never constructed explicitly), and estimates per-cell areas
// and loads by stochastic integration with the true Shannon rate
// C(d) = B log2(1 + xi d^-alpha). This is the ground truth the closed-form
// model is judged against.
//
// Edge handling: statistics are restricted to stations inside an inner
// window obtained by shrinking the outer window by a guard margin (default
// 3/sqrt(lambda)), so every retained cell sees its full neighborhood.
// Integration points are scattered over the whole outer window: inner
// stations own cells that straddle the inner boundary, and clipping them at
// that line would bias areas low by more than the mean-area tolerance the
// suite enforces.

#include "cellload/analytic.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cellload {

class EmptyRealizationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InsufficientSamplesError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PppRealization {
    std::vector<Eigen::Vector2d> points;
    double window_half = 0.0;  // outer square window is [-window_half, window_half]^2
    double guard = 0.0;        // inner window is shrunk by this margin
    std::uint64_t seed = 0;

    double inner_half() const { return window_half - guard; }
};

// Homogeneous Poisson sample on the outer window; guard defaults to
// 3/sqrt(lambda). Throws EmptyRealizationError when the Poisson count is 0.
PppRealization sample_ppp(double lambda_bs, double window_half, std::uint64_t seed,
                          double guard = 0.0);

struct CellLoadSample {
    int bs_index = -1;
    double area_m2 = 0.0;
    double load = 0.0;
    bool in_inner_window = false;
};

// Stochastic integration of area and load per cell: n uniform points on the
// outer window, each assigned to its nearest station through a bucket grid.
// Cells that receive no points keep area 0 and are excluded (and counted)
// downstream. Deterministic given (realization, n).
std::vector<CellLoadSample> cell_loads(const PppRealization& r, const LoadModel& m,
                                       int n_integration_points);

struct TypicalZeroStats {
    double typical_mean_load = 0.0;
    double zero_mean_load = 0.0;  // area-weighted: the cell a random point lands in
    double typical_mean_area = 0.0;
    double zero_mean_area = 0.0;
    long long n_cells = 0;
    std::vector<double> load_grid;
    std::vector<double> empirical_load_cdf;  // typical-cell CDF on load_grid
};

// Unweighted (typical) vs area-weighted (zero-cell) summaries over the
// inner-window cells with positive area. Throws InsufficientSamplesError
// below min_samples usable cells.
TypicalZeroStats typical_vs_zero_stats(const std::vector<CellLoadSample>& samples,
                                       const std::vector<double>& load_grid = {},
                                       long long min_samples = 1000);

struct GeoMcOptions {
    double window_half_in_spacings = 8.0;  // outer half-width in units of 1/sqrt(lambda)
    double guard_in_spacings = 3.0;
    int points_per_cell = 1500;  // integration points per expected station
    int realizations = 100;
    std::uint64_t seed = 1;
    int jobs = 1;
};

struct GeoMcSummary {
    std::vector<double> inner_areas;  // concatenated in realization order
    std::vector<double> inner_loads;
    long long inner_cells_total = 0;
    long long inner_cells_zero_points = 0;
    long long empty_retries = 0;
    int realizations = 0;
};

// Driver: realizations are independent work units, each with a sub-seed that
// is a pure function of (master seed, index, retry), run on up to jobs
// threads and aggregated in index order, so results do not depend on the
// thread count.
GeoMcSummary run_geomc(const LoadModel& m, const GeoMcOptions& opts);

}  // namespace cellload
