#pragma once

// Internal: uniform bucket grid over a square window for nearest-station
// queries, shared by the geometric and traffic oracles. Points are stored
// bucket-contiguous (CSR layout); a query expands Chebyshev rings around its
// bucket and stops once every unscanned bucket is provably farther than the
// best hit: a point in ring k is at least (k-1) * bucket_size away.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace cellload::detail {

class NearestGrid {
  public:
    NearestGrid(const std::vector<Eigen::Vector2d>& pts, double window_half) {
        half_ = window_half;
        const std::size_t n = pts.size();
        double target = std::sqrt(static_cast<double>(n));  // ~1 point per bucket
        nb_ = static_cast<int>(std::min(4096.0, std::max(1.0, std::floor(target))));
        cell_ = 2.0 * half_ / nb_;
        std::vector<int> counts(static_cast<std::size_t>(nb_) * nb_, 0);
        std::vector<int> bucket_of(n);
        for (std::size_t i = 0; i < n; ++i) {
            bucket_of[i] = bucket_index(pts[i].x(), pts[i].y());
            ++counts[bucket_of[i]];
        }
        starts_.assign(counts.size() + 1, 0);
        for (std::size_t b = 0; b < counts.size(); ++b) starts_[b + 1] = starts_[b] + counts[b];
        xs_.resize(n);
        ys_.resize(n);
        idx_.resize(n);
        std::vector<int> cursor(starts_.begin(), starts_.end() - 1);
        for (std::size_t i = 0; i < n; ++i) {
            int slot = cursor[bucket_of[i]]++;
            xs_[slot] = pts[i].x();
            ys_[slot] = pts[i].y();
            idx_[slot] = static_cast<int>(i);
        }
    }

    // Index of the nearest point and the squared distance to it.
    std::pair<int, double> nearest(double px, double py) const {
        int bx = clamp_axis(px);
        int by = clamp_axis(py);
        int best = -1;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring <= nb_; ++ring) {
            if (ring > 0 && best >= 0) {
                double reach = (ring - 1) * cell_;
                if (best_d2 <= reach * reach) break;
            }
            int ilo = std::max(0, bx - ring), ihi = std::min(nb_ - 1, bx + ring);
            int jlo = std::max(0, by - ring), jhi = std::min(nb_ - 1, by + ring);
            for (int j = jlo; j <= jhi; ++j) {
                if (j == by - ring || j == by + ring) {
                    for (int i = ilo; i <= ihi; ++i) scan_bucket(i, j, px, py, best, best_d2);
                } else {
                    scan_bucket(ilo, j, px, py, best, best_d2);
                    if (ihi != ilo) scan_bucket(ihi, j, px, py, best, best_d2);
                }
            }
        }
        return {best, best_d2};
    }

  private:
    int clamp_axis(double v) const {
        int k = static_cast<int>((v + half_) / cell_);
        return std::min(nb_ - 1, std::max(0, k));
    }
    int bucket_index(double x, double y) const { return clamp_axis(y) * nb_ + clamp_axis(x); }

    void scan_bucket(int i, int j, double px, double py, int& best, double& best_d2) const {
        int b = j * nb_ + i;
        for (int s = starts_[b]; s < starts_[b + 1]; ++s) {
            double dx = xs_[s] - px;
            double dy = ys_[s] - py;
            double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {
                best_d2 = d2;
                best = idx_[s];
            }
        }
    }

    double half_ = 0.0;
    double cell_ = 0.0;
    int nb_ = 1;
    std::vector<int> starts_;
    std::vector<double> xs_, ys_;
    std::vector<int> idx_;
};

}  // namespace cellload::detail
