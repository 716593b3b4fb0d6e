#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cimz/schedules.hpp"

using namespace cimz;

namespace {
bool close_rel(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}
} // namespace

TEST_CASE("pump_gatw: pinned values and limits") {
    REQUIRE(close_rel(pump_gatw(0.0), 1.1973753202249040, 1e-15));
    REQUIRE(close_rel(pump_gatw(8.0), 1.7615941559557649, 1e-15));
    REQUIRE(std::fabs(2.0 - pump_gatw(100.0)) < 1e-8);
}

TEST_CASE("pump_gatw: strictly increasing, bounded by (1, 2)") {
    double prev = pump_gatw(0.0);
    REQUIRE(prev > 1.0);
    for (int k = 1; k <= 600; ++k) {
        const double t = 0.05 * k;
        const double p = pump_gatw(t);
        REQUIRE(p > prev);
        REQUIRE(p < 2.0);
        prev = p;
    }
}

TEST_CASE("target_gatw: pinned values") {
    REQUIRE(target_gatw(2.0, 0.0) == 1.0);
    REQUIRE(target_gatw(1.0, 0.0) == 0.0);
    // (p-1)/2 + sqrt(((p-1)/2)^2 + p g2/2) at p=2, g2=1e-7: deviation from 1
    // is g2 to first order, i.e. 1.0000001 (not 5e-8)
    REQUIRE(close_rel(target_gatw(2.0, 1e-7), 1.0000000999999900, 1e-12));
}

TEST_CASE("target_gatw: g2 = 0 reduces to max(p - 1, 0)") {
    for (double p : {0.0, 0.3, 0.99, 1.0, 1.5, 2.0})
        REQUIRE(close_rel(target_gatw(p, 0.0), std::max(p - 1.0, 0.0), 1e-15));
}

TEST_CASE("target_gatw: nonnegative and increasing in g2") {
    for (double p : {0.5, 1.0, 1.8}) {
        double prev = -1.0;
        for (double g2 : {0.0, 1e-7, 1e-4, 1e-3, 1e-1}) {
            const double tau = target_gatw(p, g2);
            REQUIRE(tau >= 0.0);
            REQUIRE(tau > prev);
            prev = tau;
        }
    }
}

TEST_CASE("target_mfz: ramp endpoints and midpoint at defaults") {
    ScheduleConfig cfg;  // tau0 = 1, tau_n = 2, xi = 6000
    REQUIRE(target_mfz(0.0, cfg) == 1.0);
    REQUIRE(target_mfz(static_cast<double>(cfg.xi), cfg) == 3.0);
    REQUIRE(target_mfz(0.5 * static_cast<double>(cfg.xi), cfg) == 2.0);
}

TEST_CASE("target_mfz: affine in the schedule position") {
    ScheduleConfig cfg;
    const double d = 37.5;
    const double inc = target_mfz(d, cfg) - target_mfz(0.0, cfg);
    for (int k = 1; k < 40; ++k) {
        const double a = target_mfz(k * d, cfg);
        const double b = target_mfz((k - 1) * d, cfg);
        REQUIRE(std::fabs((a - b) - inc) <= 1e-12);
    }
}

TEST_CASE("target_mfz: range guard") {
    ScheduleConfig cfg;
    REQUIRE_THROWS_AS(target_mfz(-1.0, cfg), std::invalid_argument);
    REQUIRE_THROWS_AS(target_mfz(static_cast<double>(cfg.xi) + 1.0, cfg),
                      std::invalid_argument);
}

TEST_CASE("ScheduleConfig: validate guards") {
    ScheduleConfig ok;
    REQUIRE_NOTHROW(ok.validate());

    ScheduleConfig bad = ok;
    bad.dt = 0.2;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.dt = 0.0;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = ok;
    bad.xi = 0;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = ok;
    bad.tau0 = 0.0;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = ok;
    bad.g2 = -1e-9;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
}
