#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace cimz {

enum class Model { MFZ, GATW, WIGNER_FULL };

struct ScheduleConfig {
    Model model = Model::MFZ;
    double p_const = 0.57;   // MFZ pump
    double tau0 = 1.0;
    double tau_n = 2.0;
    long xi = 6000;          // steps per run; dt*xi = total time in photon lifetimes
    double dt = 0.005;
    double g2 = 0.0;         // GATW saturation parameter
    // Fixed GATW pump for controlled comparisons (deterministic-limit check);
    // unset means the tanh ramp below.
    std::optional<double> gatw_pump_const;

    void validate() const {
        if (!(dt > 0.0 && dt <= 0.1)) throw std::invalid_argument("schedule: dt out of (0, 0.1]");
        if (xi < 1) throw std::invalid_argument("schedule: xi must be positive");
        if (!(tau0 > 0.0)) throw std::invalid_argument("schedule: tau0 must be positive");
        if (!(tau0 + tau_n > 0.0)) throw std::invalid_argument("schedule: tau0 + tau_n must be positive");
        if (g2 < 0.0) throw std::invalid_argument("schedule: g2 must be >= 0");
    }
};

// p(t) = 1 + tanh((t+2)/10), t in photon lifetimes
inline double pump_gatw(double t) {
    return 1.0 + std::tanh((t + 2.0) / 10.0);
}

// tau(p, g2) = (p-1)/2 + sqrt( ((p-1)/2)^2 + p g2/2 )
inline double target_gatw(double p, double g2) {
    const double half = 0.5 * (p - 1.0);
    return half + std::sqrt(half * half + 0.5 * p * g2);
}

// tau(nu) = tau0 + (tau_n/xi) * nu on [0, xi]. nu is the schedule position;
// the MFZ solver evaluates it at nu = t = step*dt (photon lifetimes).
inline double target_mfz(double nu, const ScheduleConfig& cfg) {
    if (!(nu >= 0.0 && nu <= static_cast<double>(cfg.xi)))
        throw std::invalid_argument("target_mfz: step out of [0, xi]");
    return cfg.tau0 + (cfg.tau_n / static_cast<double>(cfg.xi)) * nu;
}

} // namespace cimz
