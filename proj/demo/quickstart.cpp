// Minimal tour: make an SK instance, find its exact ground state, then see
// whether a single CAC-stabilized MFZ trajectory lands on it.

#include <cstdio>

#include "cimz/cimz.hpp"
#include "cimz/presets.hpp"

int main() {
    using namespace cimz;

    const IsingProblem problem = generate_sk(12, 42);
    const GroundTruth gt = brute_force_ground(problem);
    std::printf("exact ground energy: %.6f%s\n", gt.energy,
                gt.degenerate ? " (degenerate)" : "");

    SolverConfig cfg;
    cfg.schedule = presets::default_schedule(Model::MFZ);
    cfg.method.variant = ZeemanVariant::CAC;
    cfg.method.zeta = 1.0;
    cfg.method.beta = 10.0;
    cfg.seed = 7;

    const RunResult res = run_trajectory(problem, cfg, &gt);
    std::printf("final energy:        %.6f\n", res.final_energy);
    std::printf("energy gap:          %.3e\n", res.final_energy - gt.energy);
    std::printf("ground state found:  %s\n", res.success ? "yes" : "no");

    std::printf("spins:");
    for (int s : res.final_spins) std::printf(" %+d", s);
    std::printf("\n");
    return 0;
}
