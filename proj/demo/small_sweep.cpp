// Small success-probability sweep over the Zeeman strength, with and without
// CAC, printed as CSV. Takes a couple of seconds on one core.

#include <iostream>

#include "cimz/cimz.hpp"

int main() {
    using namespace cimz;

    SweepSpec spec;
    spec.n = 12;
    spec.instances = 100;
    spec.master_seed = 7;
    spec.models = {Model::MFZ};
    spec.methods = {ZeemanVariant::CAC};
    spec.zeta_grid = {0.0, 0.5, 1.0, 2.0};
    spec.beta_grid = {0.0, 10.0};
    spec.base_schedule.xi = 3000;

    const SweepResult result = run_batch(spec);
    export_csv(result, std::cout);

    for (const auto& [key, st] : result.cells) {
        const Interval ci = wilson_ci(st.successes, st.runs);
        std::cerr << "zeta=" << key.zeta << " beta=" << key.beta << "  P_sc=" << st.p_sc
                  << "  CI [" << ci.lo << ", " << ci.hi << "]\n";
    }
    return 0;
}
