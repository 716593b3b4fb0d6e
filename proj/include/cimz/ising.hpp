#pragma once

#include <cstdint>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace cimz {

using SpinConfig = std::vector<int>;

struct IsingProblem {
    int n = 0;
    std::vector<double> J;  // row-major n*n, symmetric, zero diagonal
    std::vector<double> h;
    std::optional<std::uint64_t> seed;

    double Jat(int r, int c) const { return J[static_cast<std::size_t>(r) * n + c]; }
    double& Jat(int r, int c) { return J[static_cast<std::size_t>(r) * n + c]; }
};

struct GroundTruth {
    double energy = 0.0;
    SpinConfig config;
    bool degenerate = false;
};

inline void check_dims(const IsingProblem& p, const SpinConfig& s) {
    if (p.n <= 0 || s.size() != static_cast<std::size_t>(p.n) ||
        p.J.size() != static_cast<std::size_t>(p.n) * p.n ||
        p.h.size() != static_cast<std::size_t>(p.n))
        throw std::invalid_argument("ising: dimension mismatch");
}

// E = -1/2 sum_rr' J s s - sum_r h s  (double sum counts both orderings)
inline double ising_energy(const IsingProblem& p, const SpinConfig& s) {
    check_dims(p, s);
    double e2 = 0.0;  // accumulate the full double sum, halve once
    for (int r = 0; r < p.n; ++r) {
        double row = 0.0;
        for (int c = 0; c < p.n; ++c) row += p.Jat(r, c) * s[c];
        e2 += row * s[r];
    }
    double field = 0.0;
    for (int r = 0; r < p.n; ++r) field += p.h[r] * s[r];
    return -0.5 * e2 - field;
}

// f_r = sum_{r'} J[r][r'] s_r' + h_r   (diagonal is zero by construction)
inline double local_field(const IsingProblem& p, const SpinConfig& s, int r) {
    check_dims(p, s);
    if (r < 0 || r >= p.n) throw std::invalid_argument("local_field: index out of range");
    double f = p.h[r];
    for (int c = 0; c < p.n; ++c) f += p.Jat(r, c) * s[c];
    return f;
}

inline IsingProblem generate_sk(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_sk: n must be >= 1");
    IsingProblem p;
    p.n = n;
    p.J.assign(static_cast<std::size_t>(n) * n, 0.0);
    p.h.assign(n, 0.0);
    p.seed = seed;
    Rng rng(mix_seed(seed, 0x534b5f4a68ULL));  // independent of any run stream
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) {
            double v = rng.next_normal();
            p.Jat(r, c) = v;
            p.Jat(c, r) = v;
        }
    for (int r = 0; r < n; ++r) p.h[r] = rng.next_normal();
    return p;
}

// Exhaustive ground search, Gray-code order. Configuration index i maps to
// spins via: bit r of gray(i) set  ->  s_r = -1; index 0 is all-(+1).
// Single-flip energy deltas make each visit O(1) after the first.
inline GroundTruth brute_force_ground(const IsingProblem& p) {
    if (p.n < 1) throw std::invalid_argument("brute_force_ground: empty problem");
    if (p.n > 30) throw std::length_error("brute_force_ground: n > 30");
    const double tol = 1e-9;
    SpinConfig s(p.n, +1);
    double e = ising_energy(p, s);
    double best_e = e;
    SpinConfig best_s = s;
    bool degenerate = false;
    const std::uint64_t total = 1ULL << p.n;
    for (std::uint64_t i = 1; i < total; ++i) {
        const int k = __builtin_ctzll(i);  // bit flipped between gray(i-1) and gray(i)
        double f = p.h[k];
        const double* Jrow = &p.J[static_cast<std::size_t>(k) * p.n];
        for (int c = 0; c < p.n; ++c) f += Jrow[c] * s[c];
        e += 2.0 * s[k] * f;
        s[k] = -s[k];
        if (e < best_e - tol) {
            best_e = e;
            best_s = s;
            degenerate = false;
        } else if (e < best_e) {
            // lower but within tolerance: tie set; keep the earlier config
            best_e = e;
            degenerate = true;
        } else if (e - best_e <= tol) {
            degenerate = true;
        }
    }
    GroundTruth gt;
    gt.config = std::move(best_s);
    gt.energy = ising_energy(p, gt.config);  // exact, free of incremental drift
    gt.degenerate = degenerate;
    return gt;
}

inline SpinConfig spins_from_amplitudes(const std::vector<double>& x) {
    SpinConfig s(x.size());
    for (std::size_t r = 0; r < x.size(); ++r) {
        if (!std::isfinite(x[r])) throw std::domain_error("spins_from_amplitudes: non-finite amplitude");
        s[r] = (x[r] >= 0.0) ? +1 : -1;  // exact zero reads as +1
    }
    return s;
}

// ---- problem file round trip ------------------------------------------------

namespace detail {
inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace detail

inline void write_problem(const IsingProblem& p, std::ostream& os) {
    os << "n " << p.n << "\n";
    if (p.seed) os << "seed " << *p.seed << "\n";
    os << "J";
    for (std::size_t i = 0; i < p.J.size(); ++i) os << ' ' << detail::fmt17(p.J[i]);
    os << "\nh";
    for (int r = 0; r < p.n; ++r) os << ' ' << detail::fmt17(p.h[r]);
    os << "\n";
}

inline void write_problem_file(const IsingProblem& p, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_problem_file: cannot open " + path);
    write_problem(p, os);
    if (!os.good()) throw std::runtime_error("write_problem_file: write failed for " + path);
}

inline IsingProblem read_problem(std::istream& is) {
    IsingProblem p;
    std::string tok;
    bool have_n = false, have_J = false, have_h = false;
    while (is >> tok) {
        if (tok == "n") {
            if (!(is >> p.n) || p.n < 1) throw std::runtime_error("problem file: bad n");
            have_n = true;
        } else if (tok == "seed") {
            std::uint64_t sd;
            if (!(is >> sd)) throw std::runtime_error("problem file: bad seed");
            p.seed = sd;
        } else if (tok == "J") {
            if (!have_n) throw std::runtime_error("problem file: J before n");
            p.J.resize(static_cast<std::size_t>(p.n) * p.n);
            for (auto& v : p.J)
                if (!(is >> v)) throw std::runtime_error("problem file: truncated J");
            have_J = true;
        } else if (tok == "h") {
            if (!have_n) throw std::runtime_error("problem file: h before n");
            p.h.resize(p.n);
            for (auto& v : p.h)
                if (!(is >> v)) throw std::runtime_error("problem file: truncated h");
            have_h = true;
        } else {
            throw std::runtime_error("problem file: unknown field '" + tok + "'");
        }
    }
    if (!have_n || !have_J || !have_h) throw std::runtime_error("problem file: missing field");
    for (int r = 0; r < p.n; ++r) {
        if (p.Jat(r, r) != 0.0) throw std::runtime_error("problem file: nonzero diagonal");
        for (int c = 0; c < p.n; ++c) {
            if (!std::isfinite(p.Jat(r, c))) throw std::runtime_error("problem file: non-finite J");
            if (p.Jat(r, c) != p.Jat(c, r)) throw std::runtime_error("problem file: asymmetric J");
        }
    }
    return p;
}

inline IsingProblem read_problem_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_problem_file: cannot open " + path);
    return read_problem(is);
}

} // namespace cimz
