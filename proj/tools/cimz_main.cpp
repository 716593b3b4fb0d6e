// cimz command line: problem generation, exact ground states, single runs,
// sweeps, and the figure-reproduction presets.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cimz/cimz.hpp"
#include "cimz/presets.hpp"

namespace {

using namespace cimz;

void write_trajectory(const RunResult& res, const std::string& path) {
    if (!res.trajectory) throw std::runtime_error("no trajectory recorded");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    for (const auto& s : *res.trajectory) {
        os << s.step << '\t' << detail::fmt17(s.t);
        for (double v : s.x) os << '\t' << detail::fmt17(v);
        for (double v : s.e) os << '\t' << detail::fmt17(v);
        os << '\n';
    }
    if (!os.good()) throw std::runtime_error("write failed for " + path);
}

struct RunArgs {
    std::string problem_path;
    std::string model = "mfz";
    std::string method = "cac";
    double zeta = 1.0;
    double beta = 0.0;
    double g2 = 1e-7;
    double j = 1.0;
    std::uint64_t seed = 1;
    double dt = 0.005;
    long steps = 6000;
    double tau0 = 1.0, tau_n = 2.0, p_const = 0.57;
    double tol = 1e-4;
    bool noise_off = false;
    std::string traj_path;
    int stride = 10;
};

int do_run(const RunArgs& a) {
    const IsingProblem base = read_problem_file(a.problem_path);
    const Model model = parse_model(a.model);

    // --zeta scales the problem field; the solver cell then runs at zeta = 1
    // and success is judged against the scaled problem's ground truth.
    const IsingProblem eff = detail::scale_field(base, a.zeta);

    SolverConfig cfg;
    cfg.schedule.model = model;
    cfg.schedule.dt = a.dt;
    cfg.schedule.xi = a.steps;
    cfg.schedule.tau0 = a.tau0;
    cfg.schedule.tau_n = a.tau_n;
    cfg.schedule.p_const = a.p_const;
    cfg.schedule.g2 = (model == Model::MFZ) ? 0.0 : a.g2;
    cfg.method.variant = parse_method(a.method);
    cfg.method.zeta = 1.0;
    cfg.method.beta = a.beta;
    cfg.method.j = a.j;
    cfg.seed = a.seed;
    cfg.noise_off = a.noise_off;
    cfg.record_trajectory = !a.traj_path.empty();
    cfg.record_stride = a.stride;

    GroundTruth gt;
    const bool have_gt = base.n <= 30;
    if (have_gt) gt = brute_force_ground(eff);

    const RunResult res = run_trajectory(eff, cfg, have_gt ? &gt : nullptr, a.tol);

    std::printf("model %s\n", a.model.c_str());
    std::printf("method %s\n", a.method.c_str());
    std::printf("zeta %s\n", detail::fmt17(a.zeta).c_str());
    std::printf("beta %s\n", detail::fmt17(a.beta).c_str());
    std::printf("g2 %s\n", detail::fmt17(cfg.schedule.g2).c_str());
    std::printf("seed %llu\n", static_cast<unsigned long long>(a.seed));
    std::printf("steps_run %ld\n", res.steps_run);
    std::printf("final_energy %s\n", detail::fmt17(res.final_energy).c_str());
    if (have_gt) {
        std::printf("ground_energy %s\n", detail::fmt17(gt.energy).c_str());
        std::printf("energy_gap %s\n", detail::fmt17(res.final_energy - gt.energy).c_str());
        std::printf("success %d\n", res.success ? 1 : 0);
    }
    std::printf("spins");
    for (int s : res.final_spins) std::printf(" %+d", s);
    std::printf("\n");

    if (!a.traj_path.empty()) write_trajectory(res, a.traj_path);
    return 0;
}

SweepResult run_and_report(const SweepSpec& spec, const std::string& out_csv) {
    const SweepResult result = run_batch(spec);
    export_csv(result, out_csv);
    long faults = 0;
    for (const auto& [k, st] : result.cells) faults += st.faults;
    if (faults > 0) std::fprintf(stderr, "warning: %ld faulted runs counted as failures\n", faults);
    return result;
}

int do_fig(int which, const std::string& out_dir, int instances, int threads) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    auto path = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

    SweepSpec spec;
    spec.instances = instances;
    spec.threads = threads;

    switch (which) {
        case 1: {
            // single-seed trajectory pair: open loop vs CAC at zeta = 1
            const IsingProblem base = generate_sk(presets::kTrajN, presets::kTrajProblemSeed);
            const IsingProblem eff = detail::scale_field(base, presets::kTrajZeta);
            for (double beta : {0.0, presets::kTrajBeta}) {
                SolverConfig cfg;
                cfg.schedule = presets::default_schedule(Model::MFZ);
                cfg.method.variant = ZeemanVariant::CAC;
                cfg.method.zeta = 1.0;
                cfg.method.beta = beta;
                cfg.seed = presets::kTrajRunSeed;
                cfg.record_trajectory = true;
                const RunResult res = run_trajectory(eff, cfg);
                write_trajectory(res, path(beta == 0.0 ? "fig1_mfz_beta0_traj.tsv"
                                                       : "fig1_mfz_beta10_traj.tsv"));
            }
            std::ofstream doc(path("fig1_presets.txt"));
            doc << "n " << presets::kTrajN << "\nproblem_seed " << presets::kTrajProblemSeed
                << "\nrun_seed " << presets::kTrajRunSeed << "\nzeta " << presets::kTrajZeta
                << "\nbeta 0 " << presets::kTrajBeta << "\nmodel mfz\nmethod cac\nj 1\n";
            break;
        }
        case 2: {
            spec.methods = {ZeemanVariant::CAC};
            spec.beta_grid = {0.0, 10.0};
            spec.models = {Model::MFZ};
            run_and_report(spec, path("fig2_mfz.csv"));
            spec.models = {Model::GATW};
            spec.g2_grid = {1e-7, 1e-3};
            run_and_report(spec, path("fig2_gatw.csv"));
            break;
        }
        case 3: {
            spec.methods = {ZeemanVariant::CAC};
            spec.beta_grid.clear();
            for (int i = 1; i <= 20; ++i) spec.beta_grid.push_back(0.5 * i);
            spec.models = {Model::MFZ};
            run_and_report(spec, path("fig3_mfz.csv"));
            spec.models = {Model::GATW};
            spec.g2_grid = {1e-7};
            run_and_report(spec, path("fig3_gatw.csv"));
            break;
        }
        case 4: {
            spec.methods = {ZeemanVariant::CAC, ZeemanVariant::ABS_MEAN,
                            ZeemanVariant::AUX_SPIN};
            spec.beta_grid = {10.0};  // only the CAC cells respond to beta
            spec.models = {Model::MFZ};
            run_and_report(spec, path("fig4_mfz.csv"));
            spec.models = {Model::GATW};
            spec.g2_grid = {1e-7};
            run_and_report(spec, path("fig4_gatw.csv"));
            break;
        }
        default:
            throw CLI::ValidationError("--which must be 1, 2, 3 or 4");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent Ising machine Zeeman-term benchmark"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an SK problem file");
    int gen_n = 16;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--n", gen_n, "spin count");
    gen->add_option("--seed", gen_seed, "problem seed");
    gen->add_option("--out", gen_out, "output path")->required();

    // exact
    auto* exact = app.add_subcommand("exact", "brute-force ground state of a problem file");
    std::string exact_problem;
    exact->add_option("--problem", exact_problem, "problem file")->required();

    // run
    auto* run = app.add_subcommand("run", "single trajectory run");
    RunArgs ra;
    run->add_option("--problem", ra.problem_path, "problem file")->required();
    run->add_option("--model", ra.model, "mfz | gatw | wigner_full");
    run->add_option("--method", ra.method, "cac | abs_mean | aux_spin");
    run->add_option("--zeta", ra.zeta, "Zeeman strength (scales the problem field)");
    run->add_option("--beta", ra.beta, "CAC rate");
    run->add_option("--g2", ra.g2, "saturation parameter (gatw/wigner)");
    run->add_option("--j", ra.j, "injection strength");
    run->add_option("--seed", ra.seed, "run seed");
    run->add_option("--dt", ra.dt, "step size (photon lifetimes)");
    run->add_option("--steps", ra.steps, "step count");
    run->add_option("--tau0", ra.tau0, "target amplitude offset");
    run->add_option("--tau-n", ra.tau_n, "target amplitude ramp");
    run->add_option("--p-const", ra.p_const, "MFZ pump");
    run->add_option("--tol", ra.tol, "success tolerance on the energy gap");
    run->add_flag("--noise-off", ra.noise_off, "zero all stochastic terms");
    run->add_option("--traj", ra.traj_path, "write trajectory samples to this path");
    run->add_option("--stride", ra.stride, "trajectory sampling stride");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "grid sweep from a key=value config");
    std::string sweep_config, sweep_out;
    int sweep_threads = 0;
    sweep->add_option("--config", sweep_config, "config file")->required();
    sweep->add_option("--out", sweep_out, "output CSV")->required();
    sweep->add_option("--threads", sweep_threads, "worker threads (or CIM_THREADS)");

    // fig
    auto* fig = app.add_subcommand("fig", "figure-reproduction presets");
    int fig_which = 0;
    std::string fig_dir = ".";
    int fig_instances = 100;
    int fig_threads = 0;
    fig->add_option("--which", fig_which, "1 | 2 | 3 | 4")->required();
    fig->add_option("--out-dir", fig_dir, "output directory");
    fig->add_option("--instances", fig_instances, "SK instances per cell");
    fig->add_option("--threads", fig_threads, "worker threads (or CIM_THREADS)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // help text, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage error
        return 2;
    }

    try {
        if (*gen) {
            write_problem_file(generate_sk(gen_n, gen_seed), gen_out);
            return 0;
        }
        if (*exact) {
            const IsingProblem p = read_problem_file(exact_problem);
            const GroundTruth gt = brute_force_ground(p);
            std::printf("ground_energy %s\n", cimz::detail::fmt17(gt.energy).c_str());
            std::printf("config");
            for (int s : gt.config) std::printf(" %+d", s);
            std::printf("\ndegenerate %d\n", gt.degenerate ? 1 : 0);
            return 0;
        }
        if (*run) return do_run(ra);
        if (*sweep) {
            const auto kv = [&] {
                std::ifstream is(sweep_config);
                if (!is) throw std::runtime_error("cannot open config " + sweep_config);
                return parse_flat_config(is);
            }();
            SweepSpec spec = sweep_spec_from_config(kv);
            if (sweep_threads > 0) spec.threads = sweep_threads;
            run_and_report(spec, sweep_out);
            return 0;
        }
        if (*fig) return do_fig(fig_which, fig_dir, fig_instances, fig_threads);
    } catch (const cimz::StepFault& e) {
        std::fprintf(stderr, "step fault at step %ld: %s\n", e.step, e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;  // no subcommand matched (unreachable with require_subcommand)
}
