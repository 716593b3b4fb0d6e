#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "ising.hpp"
#include "models.hpp"

namespace cimz {

inline const char* model_name(Model m) {
    switch (m) {
        case Model::MFZ: return "mfz";
        case Model::GATW: return "gatw";
        case Model::WIGNER_FULL: return "wigner_full";
    }
    return "?";
}

inline const char* method_name(ZeemanVariant v) {
    switch (v) {
        case ZeemanVariant::ABS_MEAN: return "abs_mean";
        case ZeemanVariant::AUX_SPIN: return "aux_spin";
        case ZeemanVariant::CAC: return "cac";
    }
    return "?";
}

inline Model parse_model(const std::string& s) {
    if (s == "mfz") return Model::MFZ;
    if (s == "gatw") return Model::GATW;
    if (s == "wigner_full") return Model::WIGNER_FULL;
    throw std::invalid_argument("unknown model '" + s + "'");
}

inline ZeemanVariant parse_method(const std::string& s) {
    if (s == "abs_mean") return ZeemanVariant::ABS_MEAN;
    if (s == "aux_spin") return ZeemanVariant::AUX_SPIN;
    if (s == "cac") return ZeemanVariant::CAC;
    throw std::invalid_argument("unknown method '" + s + "'");
}

struct SweepSpec {
    int n = 16;
    int instances = 500;
    std::uint64_t master_seed = 1;
    std::vector<Model> models{Model::MFZ};
    std::vector<ZeemanVariant> methods{ZeemanVariant::CAC};
    std::vector<double> zeta_grid{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5,
                                  1.75, 2.0, 2.25, 2.5, 2.75, 3.0};
    std::vector<double> beta_grid{0.0, 10.0};
    std::vector<double> g2_grid{1e-7};  // applies to GATW cells only
    ScheduleConfig base_schedule;       // dt, xi, tau ramp, pumps
    double j = 1.0;
    double success_tol = 1e-4;
    int threads = 0;  // 0 = CIM_THREADS env or 1

    void validate() const {
        if (n < 1 || n > 30) throw std::invalid_argument("sweep: n out of [1, 30]");
        if (instances < 1) throw std::invalid_argument("sweep: instances must be >= 1");
        if (models.empty() || methods.empty() || zeta_grid.empty() || beta_grid.empty() ||
            g2_grid.empty())
            throw std::invalid_argument("sweep: empty grid");
        for (double z : zeta_grid)
            if (z < 0.0) throw std::invalid_argument("sweep: zeta must be >= 0");
    }
};

struct CellKey {
    std::string model;
    std::string method;
    double zeta = 0.0;
    double beta = 0.0;
    double g2 = 0.0;

    bool operator<(const CellKey& o) const {
        return std::tie(model, method, zeta, beta, g2) <
               std::tie(o.model, o.method, o.zeta, o.beta, o.g2);
    }
};

struct CellStats {
    long successes = 0;
    long runs = 0;
    long faults = 0;      // faulted runs (counted as failures in p_sc)
    double p_sc = 0.0;
    double mean_energy_gap = 0.0;  // over non-faulted runs
};

struct SweepResult {
    std::map<CellKey, CellStats> cells;
};

namespace detail {

struct CellDef {
    Model model;
    ZeemanVariant variant;
    double zeta, beta, g2;
};

// One run stream per instance, shared by every cell (common random numbers):
// cells differ only in physics, so sweep curves and method gaps are not blurred
// by independent noise draws.  Distinct from the problem-generation stream.
constexpr std::uint64_t kRunStreamTag = 0x72756e5f63726eULL;

// zeta scales the field; the solver then runs the cell with zeta = 1.
// Every injection formula uses zeta and h only as the product zeta*h, so this
// is an exact reparameterization; success is judged against the ground truth
// of the scaled problem.
inline IsingProblem scale_field(const IsingProblem& base, double zeta) {
    IsingProblem p = base;
    for (auto& v : p.h) v *= zeta;
    return p;
}

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CIM_THREADS")) {
        const int k = std::atoi(env);
        if (k > 0) return k;
    }
    return 1;
}

} // namespace detail

inline std::uint64_t instance_seed(std::uint64_t master_seed, int instance_index) {
    return mix_seed(master_seed, static_cast<std::uint64_t>(instance_index));
}

inline SweepResult run_batch(const SweepSpec& spec) {
    spec.validate();
    spec.base_schedule.validate();

    std::vector<detail::CellDef> cells;
    for (Model mo : spec.models)
        for (ZeemanVariant mv : spec.methods)
            for (double z : spec.zeta_grid)
                for (double b : spec.beta_grid) {
                    if (mo == Model::MFZ) {
                        cells.push_back({mo, mv, z, b, 0.0});
                    } else {
                        for (double g2 : spec.g2_grid) cells.push_back({mo, mv, z, b, g2});
                    }
                }

    struct RunRecord {
        bool success = false;
        bool fault = false;
        double gap = 0.0;
    };
    std::vector<RunRecord> records(static_cast<std::size_t>(spec.instances) * cells.size());

    auto worker_body = [&](int inst) {
        const std::uint64_t pseed = instance_seed(spec.master_seed, inst);
        const IsingProblem base = generate_sk(spec.n, pseed);
        // one scaled problem + ground truth per distinct zeta
        std::map<double, std::pair<IsingProblem, GroundTruth>> by_zeta;
        for (double z : spec.zeta_grid)
            if (!by_zeta.count(z)) {
                IsingProblem eff = detail::scale_field(base, z);
                GroundTruth gt = brute_force_ground(eff);
                by_zeta.emplace(z, std::make_pair(std::move(eff), std::move(gt)));
            }
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            const auto& c = cells[ci];
            const auto& [eff, gt] = by_zeta.at(c.zeta);
            SolverConfig cfg;
            cfg.schedule = spec.base_schedule;
            cfg.schedule.model = c.model;
            cfg.schedule.g2 = (c.model == Model::MFZ) ? 0.0 : c.g2;
            cfg.method.variant = c.variant;
            cfg.method.zeta = 1.0;  // folded into eff's field
            cfg.method.beta = c.beta;
            cfg.method.j = spec.j;
            cfg.seed = mix_seed(pseed, detail::kRunStreamTag);
            RunRecord& rec = records[static_cast<std::size_t>(inst) * cells.size() + ci];
            try {
                RunResult r = run_trajectory(eff, cfg, &gt, spec.success_tol);
                rec.success = r.success;
                rec.gap = r.final_energy - gt.energy;
            } catch (const StepFault&) {
                rec.fault = true;  // counts as a failure, reported separately
            }
        }
    };

    const int nthreads = detail::resolve_threads(spec.threads);
    if (nthreads <= 1) {
        for (int inst = 0; inst < spec.instances; ++inst) worker_body(inst);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (int inst = next.fetch_add(1); inst < spec.instances;
                     inst = next.fetch_add(1))
                    worker_body(inst);
            });
        for (auto& th : pool) th.join();
    }

    // sequential aggregation in instance order: results are bitwise
    // independent of the thread count
    SweepResult out;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const auto& c = cells[ci];
        CellKey key{model_name(c.model), method_name(c.variant), c.zeta, c.beta, c.g2};
        CellStats st;
        double gap_sum = 0.0;
        long gap_count = 0;
        for (int inst = 0; inst < spec.instances; ++inst) {
            const RunRecord& rec = records[static_cast<std::size_t>(inst) * cells.size() + ci];
            ++st.runs;
            if (rec.fault) {
                ++st.faults;
            } else {
                if (rec.success) ++st.successes;
                gap_sum += rec.gap;
                ++gap_count;
            }
        }
        st.p_sc = static_cast<double>(st.successes) / static_cast<double>(st.runs);
        st.mean_energy_gap = gap_count ? gap_sum / static_cast<double>(gap_count)
                                       : std::numeric_limits<double>::quiet_NaN();
        out.cells[key] = st;
    }
    return out;
}

// ---- CSV ---------------------------------------------------------------

inline void export_csv(const SweepResult& result, std::ostream& os) {
    os << "model,method,zeta,beta,g2,runs,successes,p_sc,mean_energy_gap\n";
    for (const auto& [key, st] : result.cells) {  // map order = sorted keys
        os << key.model << ',' << key.method << ',' << detail::fmt17(key.zeta) << ','
           << detail::fmt17(key.beta) << ',' << detail::fmt17(key.g2) << ',' << st.runs
           << ',' << st.successes << ',' << detail::fmt17(st.p_sc) << ','
           << detail::fmt17(st.mean_energy_gap) << '\n';
    }
}

inline void export_csv(const SweepResult& result, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("export_csv: cannot open " + path);
    export_csv(result, os);
    if (!os.good()) throw std::runtime_error("export_csv: write failed for " + path);
}

inline SweepResult parse_csv(std::istream& is) {
    SweepResult out;
    std::string line;
    if (!std::getline(is, line) ||
        line != "model,method,zeta,beta,g2,runs,successes,p_sc,mean_energy_gap")
        throw std::runtime_error("parse_csv: bad header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (f.size() != 9) throw std::runtime_error("parse_csv: bad row: " + line);
        CellKey key{f[0], f[1], std::stod(f[2]), std::stod(f[3]), std::stod(f[4])};
        CellStats st;
        st.runs = std::stol(f[5]);
        st.successes = std::stol(f[6]);
        st.p_sc = std::stod(f[7]);
        st.mean_energy_gap = std::stod(f[8]);
        out.cells[key] = st;
    }
    return out;
}

// ---- flat key=value config ----------------------------------------------

inline std::map<std::string, std::string> parse_flat_config(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto a = tok.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        const auto b = tok.find_last_not_of(" \t");
        out.push_back(tok.substr(a, b - a + 1));
    }
    return out;
}

inline SweepSpec sweep_spec_from_config(const std::map<std::string, std::string>& kv) {
    SweepSpec spec;
    auto num = [&](const std::string& k, double& target) {
        if (auto it = kv.find(k); it != kv.end()) target = std::stod(it->second);
    };
    if (auto it = kv.find("n"); it != kv.end()) spec.n = std::stoi(it->second);
    if (auto it = kv.find("instances"); it != kv.end()) spec.instances = std::stoi(it->second);
    if (auto it = kv.find("master_seed"); it != kv.end())
        spec.master_seed = std::stoull(it->second);
    if (auto it = kv.find("threads"); it != kv.end()) spec.threads = std::stoi(it->second);
    if (auto it = kv.find("models"); it != kv.end()) {
        spec.models.clear();
        for (const auto& s : split_list(it->second)) spec.models.push_back(parse_model(s));
    }
    if (auto it = kv.find("methods"); it != kv.end()) {
        spec.methods.clear();
        for (const auto& s : split_list(it->second)) spec.methods.push_back(parse_method(s));
    }
    auto grid = [&](const std::string& k, std::vector<double>& target) {
        if (auto it = kv.find(k); it != kv.end()) {
            target.clear();
            for (const auto& s : split_list(it->second)) target.push_back(std::stod(s));
        }
    };
    grid("zeta_grid", spec.zeta_grid);
    grid("beta_grid", spec.beta_grid);
    grid("g2_grid", spec.g2_grid);
    num("j", spec.j);
    num("success_tol", spec.success_tol);
    num("dt", spec.base_schedule.dt);
    if (auto it = kv.find("xi"); it != kv.end()) spec.base_schedule.xi = std::stol(it->second);
    num("p_const", spec.base_schedule.p_const);
    num("tau0", spec.base_schedule.tau0);
    num("tau_n", spec.base_schedule.tau_n);
    if (auto it = kv.find("gatw_pump_const"); it != kv.end())
        spec.base_schedule.gatw_pump_const = std::stod(it->second);
    // known keys only: typos in experiment configs should not pass silently
    static const char* known[] = {"n", "instances", "master_seed", "threads", "models",
                                  "methods", "zeta_grid", "beta_grid", "g2_grid", "j",
                                  "success_tol", "dt", "xi", "p_const", "tau0", "tau_n",
                                  "gatw_pump_const"};
    for (const auto& [k, v] : kv) {
        bool ok = false;
        for (const char* s : known) ok = ok || (k == s);
        if (!ok) throw std::runtime_error("config: unknown key '" + k + "'");
    }
    return spec;
}

} // namespace cimz
