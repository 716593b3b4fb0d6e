#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ising.hpp"

namespace cimz {

enum class ZeemanVariant { ABS_MEAN, AUX_SPIN, CAC };

struct ZeemanMethod {
    ZeemanVariant variant = ZeemanVariant::CAC;
    double zeta = 1.0;  // Zeeman strength, >= 0
    double beta = 0.0;  // CAC rate; 0 freezes the error variables
    double j = 1.0;     // injection strength

    void validate() const {
        if (zeta < 0.0) throw std::invalid_argument("zeeman: zeta must be >= 0");
        if (beta < 0.0) throw std::invalid_argument("zeeman: beta must be >= 0");
        if (!(j > 0.0)) throw std::invalid_argument("zeeman: j must be > 0");
    }
};

struct CacState {
    std::vector<double> e;  // error variables, start at 1, stay positive

    static CacState ones(int n) {
        CacState st;
        st.e.assign(n, 1.0);
        return st;
    }
};

// Step-size faults (negative e, V <= 0, non-finite state) are hard errors.
struct StepFault : std::runtime_error {
    long step;
    explicit StepFault(const std::string& what, long step_ = -1)
        : std::runtime_error(what), step(step_) {}
};

// I_r = j ( sum_r' J[r][r'] x_r' + zeta h_r mean|x| )
inline std::vector<double> injection_abs_mean(const IsingProblem& p,
                                              const std::vector<double>& x,
                                              const ZeemanMethod& m) {
    if (x.size() != static_cast<std::size_t>(p.n))
        throw std::invalid_argument("injection_abs_mean: dimension mismatch");
    double mean_abs = 0.0;
    for (double v : x) mean_abs += std::fabs(v);
    mean_abs /= static_cast<double>(p.n);
    std::vector<double> I(p.n);
    for (int r = 0; r < p.n; ++r) {
        double acc = 0.0;
        const double* Jrow = &p.J[static_cast<std::size_t>(r) * p.n];
        for (int c = 0; c < p.n; ++c) acc += Jrow[c] * x[c];
        I[r] = m.j * (acc + m.zeta * p.h[r] * mean_abs);
    }
    return I;
}

// (n+1)-spin problem with border J'[r][n] = J'[n][r] = zeta h_r, h' = 0.
// The solver then uses plain coupling on the extended problem (open loop).
inline IsingProblem extend_problem_aux(const IsingProblem& p, double zeta) {
    if (zeta < 0.0) throw std::invalid_argument("extend_problem_aux: zeta must be >= 0");
    IsingProblem q;
    q.n = p.n + 1;
    q.J.assign(static_cast<std::size_t>(q.n) * q.n, 0.0);
    q.h.assign(q.n, 0.0);
    q.seed = p.seed;
    for (int r = 0; r < p.n; ++r)
        for (int c = 0; c < p.n; ++c) q.Jat(r, c) = p.Jat(r, c);
    for (int r = 0; r < p.n; ++r) {
        q.Jat(r, p.n) = zeta * p.h[r];
        q.Jat(p.n, r) = zeta * p.h[r];
    }
    return q;
}

// Multiply through by the auxiliary spin and drop it.
inline SpinConfig gauge_fix_aux(const SpinConfig& s_ext) {
    if (s_ext.size() < 2) throw std::invalid_argument("gauge_fix_aux: need at least 2 spins");
    const int a = s_ext.back();
    SpinConfig s(s_ext.size() - 1);
    for (std::size_t r = 0; r + 1 < s_ext.size(); ++r) s[r] = s_ext[r] * a;
    return s;
}

// e_r <- e_r + dt (-beta (x_r^2 - tau) e_r), forward Euler
inline CacState cac_error_step(const CacState& state, const std::vector<double>& x,
                               double tau, double beta, double dt, long step = -1) {
    if (!(tau > 0.0) || !(dt > 0.0)) throw std::invalid_argument("cac_error_step: tau, dt must be > 0");
    if (state.e.size() != x.size()) throw std::invalid_argument("cac_error_step: dimension mismatch");
    CacState out;
    out.e.resize(state.e.size());
    for (std::size_t r = 0; r < x.size(); ++r) {
        const double en = state.e[r] + dt * (-beta * (x[r] * x[r] - tau) * state.e[r]);
        if (!std::isfinite(en) || en < 0.0)
            throw StepFault("cac_error_step: error variable left [0, inf)", step);
        out.e[r] = en;
    }
    return out;
}

// I_r = j e_r ( sum_r' J[r][r'] x_r' + zeta h_r sqrt(tau) )
inline std::vector<double> injection_cac(const IsingProblem& p, const std::vector<double>& x,
                                         const CacState& state, double tau,
                                         const ZeemanMethod& m) {
    if (!(tau > 0.0)) throw std::invalid_argument("injection_cac: tau must be > 0");
    if (x.size() != static_cast<std::size_t>(p.n) || state.e.size() != x.size())
        throw std::invalid_argument("injection_cac: dimension mismatch");
    const double width = m.zeta * std::sqrt(tau);
    std::vector<double> I(p.n);
    for (int r = 0; r < p.n; ++r) {
        double acc = 0.0;
        const double* Jrow = &p.J[static_cast<std::size_t>(r) * p.n];
        for (int c = 0; c < p.n; ++c) acc += Jrow[c] * x[c];
        I[r] = m.j * state.e[r] * (acc + width * p.h[r]);
    }
    return I;
}

} // namespace cimz
