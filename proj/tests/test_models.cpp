#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cimz/harness.hpp"
#include "cimz/models.hpp"
#include "cimz/presets.hpp"

using namespace cimz;

namespace {

SolverConfig solver(Model model, ZeemanVariant variant, double zeta, double beta,
                    double g2 = 0.0, std::uint64_t seed = 1) {
    SolverConfig cfg;
    cfg.schedule = presets::default_schedule(model, g2);
    cfg.method.variant = variant;
    cfg.method.zeta = zeta;
    cfg.method.beta = beta;
    cfg.seed = seed;
    return cfg;
}

double sample_variance(const std::vector<double>& v) {
    double mean = 0.0;
    for (double a : v) mean += a;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double a : v) var += (a - mean) * (a - mean);
    return var / static_cast<double>(v.size());
}

} // namespace

TEST_CASE("init_state: distributions, vacuum variance, error variables") {
    const SystemState mfz = init_state(Model::MFZ, 10000, 5);
    REQUIRE(mfz.x.size() == 10000);
    const double vm = sample_variance(mfz.x);
    REQUIRE(vm >= 0.8e-4);
    REQUIRE(vm <= 1.2e-4);
    for (double e : mfz.cac.e) REQUIRE(e == 1.0);
    REQUIRE(mfz.step == 0);

    const SystemState gatw = init_state(Model::GATW, 10000, 5);
    for (double v : gatw.v) REQUIRE(v == 0.5);
    // mean field gets the same tiny symmetry-breaking spread as MFZ
    const double vg = sample_variance(gatw.x);
    REQUIRE(vg >= 0.8e-4);
    REQUIRE(vg <= 1.2e-4);

    const SystemState wig = init_state(Model::WIGNER_FULL, 10000, 5);
    REQUIRE(wig.s_quad.size() == 10000);
    const double vs = sample_variance(wig.s_quad);
    REQUIRE(vs >= 0.8e-4);
    REQUIRE(vs <= 1.2e-4);

    const SystemState again = init_state(Model::MFZ, 10000, 5);
    REQUIRE(again.x == mfz.x);
    REQUIRE_THROWS_AS(init_state(Model::MFZ, 0, 1), std::invalid_argument);
}

TEST_CASE("mfz_step: origin is a fixed point") {
    IsingProblem p;
    p.n = 2;
    p.J = {0.0, 0.0, 0.0, 0.0};
    p.h = {0.0, 0.0};
    SolverConfig cfg = solver(Model::MFZ, ZeemanVariant::CAC, 0.0, 0.0);
    SystemState st;
    st.x = {0.0, 0.0};
    st.cac = CacState::ones(2);
    for (long k = 0; k < 50; ++k) st = mfz_step(p, st, cfg, k);
    REQUIRE(st.x == std::vector<double>{0.0, 0.0});
}

TEST_CASE("mfz_step: below-threshold scalar decay") {
    IsingProblem p;
    p.n = 1;
    p.J = {0.0};
    p.h = {0.0};
    SolverConfig cfg = solver(Model::MFZ, ZeemanVariant::CAC, 0.0, 0.0);
    SystemState st;
    st.x = {0.01};
    st.cac = CacState::ones(1);
    double prev = 0.01;
    for (long k = 0; k < 200; ++k) {
        st = mfz_step(p, st, cfg, k);
        REQUIRE(std::fabs(st.x[0]) < prev);
        prev = std::fabs(st.x[0]);
    }
    REQUIRE(prev < 0.01 * std::exp(-0.43 * 200 * cfg.schedule.dt) * 1.01);
}

TEST_CASE("mfz_step: odd under (x, h) -> (-x, -h), e invariant") {
    for (double beta : {0.0, 10.0}) {
        const IsingProblem p = generate_sk(8, 17);
        IsingProblem pm = p;
        for (auto& v : pm.h) v = -v;

        SolverConfig cfg = solver(Model::MFZ, ZeemanVariant::CAC, 1.0, beta);
        cfg.schedule.dt = 0.01;

        SystemState a = init_state(Model::MFZ, p.n, 99);
        SystemState b = a;
        for (auto& v : b.x) v = -v;

        for (long k = 0; k < 100; ++k) {
            a = mfz_step(p, a, cfg, k);
            b = mfz_step(pm, b, cfg, k);
            for (int r = 0; r < p.n; ++r) {
                REQUIRE(std::fabs(a.x[r] + b.x[r]) <=
                        1e-12 * std::max(1.0, std::fabs(a.x[r])));
                REQUIRE(std::fabs(a.cac.e[r] - b.cac.e[r]) <=
                        1e-12 * std::max(1.0, a.cac.e[r]));
            }
        }
    }
}

TEST_CASE("gatw_step: V converges to the stable quadratic root") {
    // -2(1-p+j)V + 1 + j - 2j(V - 1/2)^2 = 0 at p = 1.5, j = 1:
    // 2V^2 - V - 3/2 = 0, V* = (1 + sqrt(13))/4
    const double v_star = 1.1513878188659973;
    IsingProblem p;
    p.n = 1;
    p.J = {0.0};
    p.h = {0.0};
    SolverConfig cfg = solver(Model::GATW, ZeemanVariant::CAC, 0.0, 0.0);
    cfg.schedule.g2 = 0.0;
    cfg.schedule.gatw_pump_const = 1.5;
    cfg.noise_off = true;
    SystemState st;
    st.x = {0.01};
    st.v = {0.5};
    st.cac = CacState::ones(1);
    Rng rng(1);
    for (long k = 0; k < 4000; ++k) st = gatw_step(p, st, cfg, k, rng);
    REQUIRE(std::fabs(st.v[0] - v_star) <= 1e-6);
    REQUIRE(std::fabs(st.x[0]) < 1e-4);  // below threshold at loss = 0.5
}

TEST_CASE("gatw_step: variance positive over 1e4 steps, dt = 0.01 and default") {
    const IsingProblem p = generate_sk(8, 23);
    for (double dt : {0.01, 0.005}) {
        SolverConfig cfg = solver(Model::GATW, ZeemanVariant::CAC, 1.0, 10.0, 1e-7, 42);
        cfg.schedule.dt = dt;
        SystemState st = init_state(Model::GATW, p.n, cfg.seed);
        Rng rng(mix_seed(cfg.seed, 0xabc));
        for (long k = 0; k < 10000; ++k) {
            st = gatw_step(p, st, cfg, k, rng);
            for (double v : st.v) {
                REQUIRE(v > 0.0);
                REQUIRE(v < 2.0);
            }
        }
    }
}

TEST_CASE("gatw_step: faults on a variance blow-up instead of clamping") {
    IsingProblem p;
    p.n = 1;
    p.J = {0.0};
    p.h = {0.0};
    SolverConfig cfg = solver(Model::GATW, ZeemanVariant::CAC, 0.0, 0.0);
    cfg.noise_off = true;
    cfg.schedule.g2 = 0.0;
    cfg.schedule.gatw_pump_const = 1.5;
    cfg.schedule.dt = 0.1;  // within validate() bound but way past V-stability
    SystemState st;
    st.x = {0.0};
    st.v = {60.0};  // far from equilibrium: Euler overshoots below zero
    st.cac = CacState::ones(1);
    Rng rng(1);
    REQUIRE_THROWS_AS(
        [&] {
            for (long k = 0; k < 100; ++k) st = gatw_step(p, st, cfg, k, rng);
        }(),
        StepFault);
}

TEST_CASE("run_trajectory: same seed bit-identical, different seed differs") {
    const IsingProblem p = generate_sk(12, 31);
    const SolverConfig cfg = solver(Model::GATW, ZeemanVariant::CAC, 1.0, 10.0, 1e-7, 777);
    const RunResult a = run_trajectory(p, cfg);
    const RunResult b = run_trajectory(p, cfg);
    REQUIRE(a.final_energy == b.final_energy);
    REQUIRE(a.final_spins == b.final_spins);

    SolverConfig recorded = cfg;
    recorded.record_trajectory = true;
    recorded.record_stride = static_cast<int>(cfg.schedule.xi);
    SolverConfig other = recorded;
    other.seed = 778;
    const RunResult c = run_trajectory(p, recorded);
    const RunResult d = run_trajectory(p, other);
    REQUIRE(c.trajectory->back().x != d.trajectory->back().x);
}

TEST_CASE("run_trajectory: final energy is the exact energy of the readout") {
    const IsingProblem p = generate_sk(10, 8);
    for (ZeemanVariant v :
         {ZeemanVariant::CAC, ZeemanVariant::ABS_MEAN, ZeemanVariant::AUX_SPIN}) {
        SolverConfig cfg = solver(Model::MFZ, ZeemanVariant::CAC, 1.0, 10.0);
        cfg.method.variant = v;
        if (v != ZeemanVariant::CAC) cfg.method.beta = 0.0;
        cfg.schedule.xi = 2000;
        const RunResult r = run_trajectory(p, cfg);
        REQUIRE(r.final_spins.size() == static_cast<std::size_t>(p.n));
        REQUIRE(r.final_energy == ising_energy(p, r.final_spins));
        REQUIRE(r.steps_run == cfg.schedule.xi);
    }
}

TEST_CASE("run_trajectory: sampling contract") {
    const IsingProblem p = generate_sk(4, 3);
    SolverConfig cfg = solver(Model::MFZ, ZeemanVariant::CAC, 1.0, 0.0);
    cfg.record_trajectory = true;
    cfg.record_stride = 10;

    cfg.schedule.xi = 100;
    RunResult r = run_trajectory(p, cfg);
    REQUIRE(r.trajectory.has_value());
    REQUIRE(r.trajectory->size() == 100 / 10 + 1);
    REQUIRE(r.trajectory->front().step == 0);
    REQUIRE(r.trajectory->back().step == 100);
    REQUIRE(r.trajectory->back().t == 100 * cfg.schedule.dt);
    for (const auto& s : *r.trajectory) {
        REQUIRE(s.x.size() == static_cast<std::size_t>(p.n));
        REQUIRE(s.e.size() == static_cast<std::size_t>(p.n));
    }

    cfg.schedule.xi = 105;
    r = run_trajectory(p, cfg);
    REQUIRE(r.trajectory->size() == 105 / 10 + 1);
    REQUIRE(r.trajectory->back().step == 100);

    cfg.schedule.xi = 50;
    cfg.record_stride = 1;
    r = run_trajectory(p, cfg);
    REQUIRE(r.trajectory->size() == 51);
}

TEST_CASE("run_trajectory: success flag against supplied ground truth") {
    // two-spin problem solved by inspection; any sensible run lands there
    IsingProblem p;
    p.n = 2;
    p.J = {0.0, 1.0, 1.0, 0.0};
    p.h = {0.5, -0.25};
    const GroundTruth gt = brute_force_ground(p);
    const SolverConfig cfg = solver(Model::MFZ, ZeemanVariant::CAC, 1.0, 10.0, 0.0, 4);
    const RunResult r = run_trajectory(p, cfg, &gt, 1e-4);
    REQUIRE(r.success);
    REQUIRE(r.final_energy == gt.energy);
}

TEST_CASE("run_trajectory: aux spin readout is gauge-fixed to n spins") {
    const IsingProblem p = generate_sk(9, 77);
    SolverConfig cfg = solver(Model::MFZ, ZeemanVariant::AUX_SPIN, 2.0, 0.0, 0.0, 5);
    cfg.schedule.xi = 3000;
    const RunResult r = run_trajectory(p, cfg);
    REQUIRE(r.final_spins.size() == static_cast<std::size_t>(p.n));
    REQUIRE(r.final_energy == ising_energy(p, r.final_spins));
}

TEST_CASE("solver config guards") {
    SolverConfig cfg = solver(Model::GATW, ZeemanVariant::CAC, 1.0, 10.0, 0.0);
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);  // g2 = 0, noise on
    cfg.noise_off = true;
    REQUIRE_NOTHROW(cfg.validate());
    cfg.record_stride = 0;
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("deterministic limit: noise-off GATW equals MFZ with shifted pump") {
    const IsingProblem p = generate_sk(16, 2024);

    SolverConfig mfz = solver(Model::MFZ, ZeemanVariant::CAC, 0.0, 0.0);
    mfz.schedule.dt = 1e-3;
    mfz.schedule.p_const = 0.57;

    SolverConfig gatw = solver(Model::GATW, ZeemanVariant::CAC, 0.0, 0.0);
    gatw.schedule.dt = 1e-3;
    gatw.schedule.g2 = 0.0;
    gatw.schedule.gatw_pump_const = 1.57;  // p - j = 0.57
    gatw.noise_off = true;

    SystemState sa = init_state(Model::MFZ, p.n, 123);
    SystemState sb;
    sb.x = sa.x;  // identical initial amplitudes
    sb.v.assign(p.n, 0.5);
    sb.cac = CacState::ones(p.n);

    Rng rng(1);
    double max_abs = 0.0;
    for (long k = 0; k < 1000; ++k) {
        sa = mfz_step(p, sa, mfz, k);
        sb = gatw_step(p, sb, gatw, k, rng);
        for (int r = 0; r < p.n; ++r)
            max_abs = std::max(max_abs, std::fabs(sa.x[r] - sb.x[r]));
    }
    REQUIRE(max_abs <= 1e-6);
}

TEST_CASE("noise scaling: MFZ final energy is dt-invariant (relaxation regime)") {
    for (std::uint64_t seed : {101ULL, 102ULL, 103ULL, 104ULL, 105ULL}) {
        const IsingProblem p = generate_sk(16, seed);
        SolverConfig coarse = solver(Model::MFZ, ZeemanVariant::CAC, 1.0, 0.0, 0.0, seed);
        SolverConfig fine = coarse;
        fine.schedule.dt = 0.5 * coarse.schedule.dt;
        fine.schedule.xi = 2 * coarse.schedule.xi;
        const RunResult a = run_trajectory(p, coarse);
        const RunResult b = run_trajectory(p, fine);
        REQUIRE(std::fabs(a.final_energy - b.final_energy) <= 1e-4);
    }
}

TEST_CASE("noise scaling: GATW success probability is dt-stable to 0.05") {
    // weak-convergence sanity at n = 12 over 200 instances
    SweepSpec spec;
    spec.n = 12;
    spec.instances = 200;
    spec.master_seed = 3141;
    spec.models = {Model::GATW};
    spec.methods = {ZeemanVariant::CAC};
    spec.zeta_grid = {1.0};
    spec.beta_grid = {10.0};
    spec.g2_grid = {1e-7};

    const SweepResult coarse = run_batch(spec);
    spec.base_schedule.dt = 0.0025;
    spec.base_schedule.xi = 12000;
    const SweepResult fine = run_batch(spec);
    const double pa = coarse.cells.begin()->second.p_sc;
    const double pb = fine.cells.begin()->second.p_sc;
    REQUIRE(std::fabs(pa - pb) <= 0.05);
}

TEST_CASE("wigner_full_step: quadrature manifold and steady state") {
    IsingProblem p;
    p.n = 1;
    p.J = {0.0};
    p.h = {0.0};

    SolverConfig cfg = solver(Model::WIGNER_FULL, ZeemanVariant::CAC, 0.0, 0.0);
    cfg.schedule.g2 = 0.0;
    cfg.schedule.gatw_pump_const = 2.0;
    cfg.noise_off = true;

    // s0 = 0 stays exactly 0; |c| -> sqrt(p - 1) = 1
    SystemState st;
    st.x = {0.05};
    st.s_quad = {0.0};
    st.cac = CacState::ones(1);
    Rng rng(1);
    for (long k = 0; k < 6000; ++k) {
        st = wigner_full_step(p, st, cfg, k, rng);
        REQUIRE(st.s_quad[0] == 0.0);
    }
    REQUIRE(std::fabs(std::fabs(st.x[0]) - 1.0) <= 1e-2);

    // s-decay: p = 2, c0 = 0, s0 = 0.1: |s| strictly decreasing
    st.x = {0.0};
    st.s_quad = {0.1};
    double prev = 0.1;
    for (long k = 0; k < 100; ++k) {
        st = wigner_full_step(p, st, cfg, k, rng);
        REQUIRE(std::fabs(st.s_quad[0]) < prev);
        prev = std::fabs(st.s_quad[0]);
    }
}
