#include "cellload/params.hpp"

namespace cellload {

double xi(const NetworkParams& p) {
    p.validate();
    const double noise_power_dbm = p.noise_dbm_hz + 10.0 * std::log10(p.bandwidth_hz);
    const double xi_db = p.pt_dbm + p.g0_db + p.k_pathloss_db - noise_power_dbm;
    return db_to_linear(xi_db);
}

double traffic_density(const TrafficParams& t) {
    t.validate();
    return t.lambda_u * t.sigma_bits;
}

double k_pathloss_db_from_fc(double fc_ghz) {
    if (!(fc_ghz > 0.0)) throw std::invalid_argument("fc_ghz: must be > 0");
    return -(32.4 + 20.0 * std::log10(fc_ghz));
}

}  // namespace cellload
