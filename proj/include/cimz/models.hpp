#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ising.hpp"
#include "rng.hpp"
#include "schedules.hpp"
#include "zeeman.hpp"

namespace cimz {

struct SystemState {
    std::vector<double> x;       // MFZ amplitudes / GATW mean field (normalized) / Wigner in-phase c
    std::vector<double> v;       // GATW variances
    std::vector<double> s_quad;  // Wigner quadrature s
    CacState cac;
    long step = 0;
};

struct SolverConfig {
    ScheduleConfig schedule;
    ZeemanMethod method;
    std::uint64_t seed = 0;
    bool record_trajectory = false;
    int record_stride = 10;
    bool noise_off = false;

    void validate() const {
        schedule.validate();
        method.validate();
        if (schedule.model == Model::GATW && schedule.g2 == 0.0 && !noise_off)
            throw std::invalid_argument("solver: GATW with g2 = 0 requires noise_off");
        if (record_stride < 1) throw std::invalid_argument("solver: record_stride must be >= 1");
    }
};

struct TrajectorySample {
    long step = 0;
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> e;
};

struct RunResult {
    SpinConfig final_spins;
    double final_energy = 0.0;
    bool success = false;
    long steps_run = 0;
    std::optional<std::vector<TrajectorySample>> trajectory;
};

namespace detail {
constexpr std::uint64_t kInitTag = 0x696e6974ULL;   // state init stream
constexpr std::uint64_t kNoiseTag = 0x6e6f6973ULL;  // per-step noise stream

inline void check_finite(const std::vector<double>& v, const char* what, long step) {
    for (double a : v)
        if (!std::isfinite(a)) throw StepFault(std::string(what) + ": non-finite state", step);
}
} // namespace detail

inline SystemState init_state(Model model, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("init_state: n must be >= 1");
    SystemState st;
    st.cac = CacState::ones(n);
    st.step = 0;
    Rng rng(mix_seed(seed, detail::kInitTag));
    switch (model) {
        case Model::MFZ:
            st.x.resize(n);
            for (auto& a : st.x) a = 1e-2 * rng.next_normal();  // variance 1e-4
            break;
        case Model::GATW:
            // Mean amplitudes get the same tiny spread as MFZ. Starting them at
            // exactly zero leaves the error variables free-running against a
            // noise-scale amplitude until well into the run; the resulting
            // overshoot can push the variance negative at dt = 0.01.
            st.x.resize(n);
            for (auto& a : st.x) a = 1e-2 * rng.next_normal();
            st.v.assign(n, 0.5);
            break;
        case Model::WIGNER_FULL:
            st.x.resize(n);
            st.s_quad.resize(n);
            for (auto& a : st.x) a = 1e-2 * rng.next_normal();
            for (auto& a : st.s_quad) a = 1e-2 * rng.next_normal();
            break;
    }
    return st;
}

namespace detail {
// Injection dispatch. AUX runs plain coupling: zeta has already been folded
// into the extended matrix, which is exactly the abs-mean formula at zeta=0.
inline std::vector<double> injection(const IsingProblem& p, const std::vector<double>& x,
                                     const CacState& cac, double tau_zeeman,
                                     const ZeemanMethod& m) {
    switch (m.variant) {
        case ZeemanVariant::CAC:
            return injection_cac(p, x, cac, tau_zeeman, m);
        case ZeemanVariant::ABS_MEAN:
            return injection_abs_mean(p, x, m);
        case ZeemanVariant::AUX_SPIN: {
            ZeemanMethod plain = m;
            plain.zeta = 0.0;
            return injection_abs_mean(p, x, plain);
        }
    }
    throw std::logic_error("injection: unknown variant");
}
} // namespace detail

// dx/dt = (-1 + p - x^2) x + I, constant pump
inline SystemState mfz_step(const IsingProblem& p, const SystemState& st,
                            const SolverConfig& cfg, long n_step) {
    const double dt = cfg.schedule.dt;
    const double pump = cfg.schedule.p_const;
    const double tau = target_mfz(static_cast<double>(n_step) * dt, cfg.schedule);
    const std::vector<double> I = detail::injection(p, st.x, st.cac, tau, cfg.method);
    SystemState out = st;
    for (int r = 0; r < p.n; ++r) {
        const double x = st.x[r];
        out.x[r] = x + dt * ((-1.0 + pump - x * x) * x + I[r]);
    }
    if (cfg.method.variant == ZeemanVariant::CAC)
        out.cac = cac_error_step(st.cac, st.x, tau, cfg.method.beta, dt, n_step);
    detail::check_finite(out.x, "mfz_step", n_step);
    out.step = st.step + 1;
    return out;
}

// Measurement-feedback Gaussian model, normalized units x = g*mu:
//   dx = dt (-(1-p+j) x - x^3 + I) + sqrt(j g^2 dt) (V - 1/2) w
//   dV = dt (-2(1-p+j) V - 6 x^2 V + 1 + j + 2 x^2 - 2j (V-1/2)^2)
//   measured amplitude x~ = x + sqrt(g^2/(4 j dt)) w, same draw w per pulse.
// Injection and the CAC error dynamics both see the measured x~.
inline SystemState gatw_step(const IsingProblem& p, const SystemState& st,
                             const SolverConfig& cfg, long n_step, Rng& rng) {
    const double dt = cfg.schedule.dt;
    const double t = static_cast<double>(n_step) * dt;
    const double pump = cfg.schedule.gatw_pump_const ? *cfg.schedule.gatw_pump_const
                                                     : pump_gatw(t);
    const double g2 = cfg.schedule.g2;
    const double j = cfg.method.j;
    const double tau_inst = target_gatw(pump, g2);
    // Zeeman width pinned to the asymptotic target; the error variables still
    // chase the instantaneous one.
    const double tau_zee = target_gatw(2.0, g2);

    const double meas_amp = cfg.noise_off ? 0.0 : std::sqrt(g2 / (4.0 * j * dt));
    const double state_amp = cfg.noise_off ? 0.0 : std::sqrt(j * g2 * dt);

    std::vector<double> w(p.n, 0.0), xt(p.n);
    for (int r = 0; r < p.n; ++r) {
        if (!cfg.noise_off) w[r] = rng.next_normal();
        xt[r] = st.x[r] + meas_amp * w[r];
    }
    const std::vector<double> I = detail::injection(p, xt, st.cac, tau_zee, cfg.method);

    SystemState out = st;
    const double loss = 1.0 - pump + j;
    for (int r = 0; r < p.n; ++r) {
        const double x = st.x[r];
        const double V = st.v[r];
        out.x[r] = x + dt * (-loss * x - x * x * x + I[r]) + state_amp * (V - 0.5) * w[r];
        const double Vn = V + dt * (-2.0 * loss * V - 6.0 * x * x * V + 1.0 + j +
                                    2.0 * x * x - 2.0 * j * (V - 0.5) * (V - 0.5));
        if (!std::isfinite(Vn) || Vn <= 0.0)
            throw StepFault("gatw_step: variance left (0, inf)", n_step);
        out.v[r] = Vn;
    }
    if (cfg.method.variant == ZeemanVariant::CAC)
        out.cac = cac_error_step(st.cac, xt, tau_inst, cfg.method.beta, dt, n_step);
    detail::check_finite(out.x, "gatw_step", n_step);
    out.step = st.step + 1;
    return out;
}

// Truncated-Wigner in-phase/quadrature pair:
//   dc = dt ([-1 + p - (c^2+s^2)] c + I) + g^2 sqrt(c^2+s^2+1/2) dW1
//   ds = dt  [-1 - p - (c^2+s^2)] s      + g^2 sqrt(c^2+s^2+1/2) dW2
inline SystemState wigner_full_step(const IsingProblem& p, const SystemState& st,
                                    const SolverConfig& cfg, long n_step, Rng& rng) {
    const double dt = cfg.schedule.dt;
    const double t = static_cast<double>(n_step) * dt;
    const double pump = cfg.schedule.gatw_pump_const ? *cfg.schedule.gatw_pump_const
                                                     : pump_gatw(t);
    const double g2 = cfg.schedule.g2;
    const double tau = target_gatw(pump, g2);
    const double sdt = std::sqrt(dt);

    const std::vector<double> I = detail::injection(p, st.x, st.cac, std::max(tau, 1e-300),
                                                    cfg.method);
    SystemState out = st;
    for (int r = 0; r < p.n; ++r) {
        const double c = st.x[r];
        const double s = st.s_quad[r];
        const double n2 = c * c + s * s;
        const double namp = cfg.noise_off ? 0.0 : g2 * std::sqrt(n2 + 0.5);
        const double w1 = cfg.noise_off ? 0.0 : rng.next_normal();
        const double w2 = cfg.noise_off ? 0.0 : rng.next_normal();
        out.x[r] = c + dt * ((-1.0 + pump - n2) * c + I[r]) + namp * sdt * w1;
        out.s_quad[r] = s + dt * ((-1.0 - pump - n2) * s) + namp * sdt * w2;
    }
    if (cfg.method.variant == ZeemanVariant::CAC)
        out.cac = cac_error_step(st.cac, st.x, std::max(tau, 1e-300), cfg.method.beta,
                                 dt, n_step);
    detail::check_finite(out.x, "wigner_full_step", n_step);
    detail::check_finite(out.s_quad, "wigner_full_step", n_step);
    out.step = st.step + 1;
    return out;
}

// Full run: init, xi steps, spin readout (gauge-fixed for AUX), final energy
// against the problem as given. Step faults propagate with their step index.
inline RunResult run_trajectory(const IsingProblem& problem, const SolverConfig& cfg,
                                const GroundTruth* gt = nullptr,
                                double success_tol = 1e-4) {
    cfg.validate();
    const bool aux = cfg.method.variant == ZeemanVariant::AUX_SPIN;
    const IsingProblem work = aux ? extend_problem_aux(problem, cfg.method.zeta) : problem;

    SystemState st = init_state(cfg.schedule.model, work.n, cfg.seed);
    Rng rng(mix_seed(cfg.seed, detail::kNoiseTag));

    RunResult res;
    std::vector<TrajectorySample> traj;
    auto record = [&](const SystemState& s) {
        traj.push_back({s.step, static_cast<double>(s.step) * cfg.schedule.dt, s.x, s.cac.e});
    };
    for (long k = 0; k < cfg.schedule.xi; ++k) {
        if (cfg.record_trajectory && k % cfg.record_stride == 0) record(st);
        switch (cfg.schedule.model) {
            case Model::MFZ: st = mfz_step(work, st, cfg, k); break;
            case Model::GATW: st = gatw_step(work, st, cfg, k, rng); break;
            case Model::WIGNER_FULL: st = wigner_full_step(work, st, cfg, k, rng); break;
        }
    }
    if (cfg.record_trajectory && cfg.schedule.xi % cfg.record_stride == 0) record(st);

    SpinConfig s = spins_from_amplitudes(st.x);
    res.final_spins = aux ? gauge_fix_aux(s) : s;
    res.final_energy = ising_energy(problem, res.final_spins);
    res.steps_run = cfg.schedule.xi;
    if (gt) res.success = std::fabs(res.final_energy - gt->energy) < success_tol;
    if (cfg.record_trajectory) res.trajectory = std::move(traj);
    return res;
}

} // namespace cimz
