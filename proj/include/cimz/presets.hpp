#pragma once

#include <cstdint>

#include "schedules.hpp"

namespace cimz {
namespace presets {

// Shared experiment defaults: dt, step count, tau ramp, pumps.
inline ScheduleConfig default_schedule(Model model, double g2 = 0.0) {
    ScheduleConfig s;
    s.model = model;
    s.g2 = (model == Model::MFZ) ? 0.0 : g2;
    return s;  // dt = 0.005, xi = 6000 -> 30 photon lifetimes
}

// Trajectory preset (single documented seed pair): n = 16, j = 1, zeta = 1.
// The run seed is shared between the beta = 0 and beta = 10 runs so the two
// trajectories start from the same amplitudes. Whether the error feedback
// settles within the 30-lifetime window is instance-dependent; this problem
// seed locks for every init seed we scanned, so the demo is not a knife-edge.
constexpr int kTrajN = 16;
constexpr std::uint64_t kTrajProblemSeed = 3ULL;
constexpr std::uint64_t kTrajRunSeed = 7ULL;
constexpr double kTrajZeta = 1.0;
constexpr double kTrajBeta = 10.0;

} // namespace presets
} // namespace cimz
