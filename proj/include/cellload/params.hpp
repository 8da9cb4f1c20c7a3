#pragma once

// Radio/deployment/traffic parameters. Internally everything is linear SI
// (watts, hertz, bits, meters); decibel values appear only in these structs
// and are converted exactly once, in xi(). Sign conventions: k_pathloss_db is
// the gain (negative of the loss) at the 1 m reference distance, so the mean
// SNR at distance r is xi(p) * r^-alpha.

#include <cmath>
#include <stdexcept>

namespace cellload {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

struct NetworkParams {
    double pt_dbm = 30.0;            // transmit power
    double g0_db = 0.0;              // antenna gain
    double k_pathloss_db = 0.0;      // path-loss coefficient at 1 m
    double alpha = 2.0;              // path-loss exponent
    double bandwidth_hz = 1e9;
    double noise_dbm_hz = -174.0;    // noise power spectral density
    double lambda_bs = 1e-5;         // station density, per m^2

    void validate() const {
        if (!(alpha >= 2.0)) throw std::invalid_argument("alpha: must be >= 2");
        if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth_hz: must be > 0");
        if (!(lambda_bs > 0.0)) throw std::invalid_argument("lambda_bs: must be > 0");
        if (!std::isfinite(pt_dbm)) throw std::invalid_argument("pt_dbm: must be finite");
        if (!std::isfinite(g0_db)) throw std::invalid_argument("g0_db: must be finite");
        if (!std::isfinite(k_pathloss_db))
            throw std::invalid_argument("k_pathloss_db: must be finite");
        if (!std::isfinite(noise_dbm_hz))
            throw std::invalid_argument("noise_dbm_hz: must be finite");
    }
};

struct TrafficParams {
    double lambda_u = 1e-4;          // flow arrivals, per m^2 per s
    double sigma_bits = 1e8;         // mean flow size, bits

    void validate() const {
        if (!(lambda_u >= 0.0)) throw std::invalid_argument("lambda_u: must be >= 0");
        if (!(sigma_bits > 0.0)) throw std::invalid_argument("sigma_bits: must be > 0");
    }
};

// Mean SNR at the 1 m reference distance (linear).
double xi(const NetworkParams& p);

// Offered traffic density w = lambda_u * sigma, bits per second per m^2.
double traffic_density(const TrafficParams& t);

// Free-space intercept helper: path-loss coefficient (dB, as a gain) at 1 m
// for a given carrier frequency.
double k_pathloss_db_from_fc(double fc_ghz);

}  // namespace cellload
