#include "cellload/params.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace cellload;

TEST_CASE("db round trip") {
    CHECK(db_to_linear(0.0) == doctest::Approx(1.0));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(-30.0) == doctest::Approx(1e-3));
    for (double db : {-47.0, 0.0, 3.0, 96.4}) {
        CHECK(linear_to_db(db_to_linear(db)) == doctest::Approx(db).epsilon(1e-12));
    }
}

TEST_CASE("xi assembles the link budget in dB") {
    NetworkParams net;
    net.pt_dbm = 30.0;
    net.g0_db = 20.0;
    net.k_pathloss_db = -61.34;
    net.noise_dbm_hz = -174.0;
    net.bandwidth_hz = 1e9;
    double expect_db = 30.0 + 20.0 - 61.34 - (-174.0 + 10.0 * std::log10(1e9));
    CHECK(xi(net) == doctest::Approx(db_to_linear(expect_db)).epsilon(1e-12));

    // Monotone in each gain term, antitone in noise and bandwidth.
    NetworkParams up = net;
    up.g0_db += 1.0;
    CHECK(xi(up) > xi(net));
    up = net;
    up.bandwidth_hz *= 2.0;
    CHECK(xi(up) < xi(net));
    up = net;
    up.noise_dbm_hz += 3.0;
    CHECK(xi(up) < xi(net));
}

TEST_CASE("free-space constant from carrier frequency") {
    // 1 GHz: -(32.4 + 20 log10(1)) = -32.4 dB.
    CHECK(k_pathloss_db_from_fc(1.0) == doctest::Approx(-32.4).epsilon(1e-12));
    // 28 GHz: -(32.4 + 20 log10(28)) = -61.34... dB.
    CHECK(k_pathloss_db_from_fc(28.0) ==
          doctest::Approx(-(32.4 + 20.0 * std::log10(28.0))).epsilon(1e-12));
    CHECK_THROWS_AS(k_pathloss_db_from_fc(0.0), std::invalid_argument);
}

TEST_CASE("traffic density is the bit-arrival rate per area") {
    TrafficParams t;
    t.lambda_u = 1e-4;
    t.sigma_bits = 1e8;
    CHECK(traffic_density(t) == doctest::Approx(1e4));
}

TEST_CASE("validation rejects nonsense") {
    NetworkParams net;
    net.alpha = 1.9;
    CHECK_THROWS_AS(net.validate(), std::invalid_argument);
    net = NetworkParams{};
    net.bandwidth_hz = 0.0;
    CHECK_THROWS_AS(net.validate(), std::invalid_argument);
    net = NetworkParams{};
    net.lambda_bs = -1.0;
    CHECK_THROWS_AS(net.validate(), std::invalid_argument);
    net = NetworkParams{};
    CHECK_NOTHROW(net.validate());

    TrafficParams t;
    t.lambda_u = -1e-9;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    t = TrafficParams{};
    t.sigma_bits = 0.0;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    t = TrafficParams{};
    t.lambda_u = 0.0;  // zero demand is a legal degenerate case
    CHECK_NOTHROW(t.validate());
}
