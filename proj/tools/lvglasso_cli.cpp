#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "lvglasso/datagen.hpp"
#include "lvglasso/matrix.hpp"
#include "lvglasso/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lvglasso;

namespace {

constexpr const char* kVersion = "0.1.0";

void apply_thread_cap() {
    if (const char* env = std::getenv("LVG_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) Eigen::setNbThreads(n);
    }
}

void write_manifest(const fs::path& path, json manifest) {
    manifest["tool"] = "lvglasso";
    manifest["version"] = kVersion;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write manifest: " + path.string());
    out << manifest.dump(2) << '\n';
}

Variant parse_variant(const std::string& name) {
    if (name == "pgadm") return Variant::Pgadm;
    if (name == "consensus") return Variant::ConsensusAdmm;
    if (name == "admm3") return Variant::Admm3;
    throw InvalidInput("unknown variant: " + name);
}

struct SolveFlags {
    std::string variant = "pgadm";
    double mu0 = 0.0;
    bool continuation = true;
    double tau = 0.6;
    double tol = 1e-5;
    int max_iter = 1000;
    std::string mode = "full";

    void attach(CLI::App* cmd) {
        cmd->add_option("--variant", variant, "pgadm|consensus|admm3")
            ->check(CLI::IsMember({"pgadm", "consensus", "admm3"}));
        cmd->add_option("--mu0", mu0, "initial penalty parameter (0 = auto)");
        cmd->add_flag("--continuation,!--no-continuation", continuation,
                      "shrink mu by 1/4 every 10 iterations");
        cmd->add_option("--tau", tau, "proximal gradient step size");
        cmd->add_option("--tol", tol, "infeasibility stopping tolerance");
        cmd->add_option("--max-iter", max_iter, "iteration cap");
        cmd->add_option("--mode", mode, "l1 penalty mode: full|offdiag")
            ->check(CLI::IsMember({"full", "offdiag"}));
    }

    SolverOptions options() const {
        SolverOptions opts;
        opts.variant = parse_variant(variant);
        opts.mu0 = mu0;
        opts.continuation.enabled = continuation;
        opts.tau = tau;
        opts.tol_infeas = tol;
        opts.max_iter = max_iter;
        return opts;
    }

    ShrinkMode shrink_mode() const {
        return mode == "offdiag" ? ShrinkMode::OffDiagonal : ShrinkMode::Full;
    }

    json to_json() const {
        return {{"variant", variant}, {"mu0", mu0},   {"continuation", continuation},
                {"tau", tau},         {"tol", tol},   {"max_iter", max_iter},
                {"mode", mode}};
    }
};

json result_row_json(double alpha, double beta, const std::string& variant,
                     const SolveReport& rep) {
    return {{"alpha", alpha},
            {"beta", beta},
            {"variant", variant},
            {"obj", rep.objective},
            {"iter", rep.iterations},
            {"cpu_seconds", rep.wall_seconds},
            {"infeas", rep.infeas},
            {"sp_percent", 100.0 * rep.sp},
            {"sp1_percent", 100.0 * rep.sp1},
            {"converged", rep.converged}};
}

int run_gen(int p, int ph, double density, std::uint64_t seed, int n, const std::string& gt_mode,
            const fs::path& out) {
    fs::create_directories(out);
    const GroundTruthMode mode =
        gt_mode == "direct" ? GroundTruthMode::Direct : GroundTruthMode::Verbatim;
    GroundTruth gt = generate_ground_truth(p, ph, density, seed, mode);
    const int n_samples = n > 0 ? n : 5 * p;
    Dataset data = sample_mvn(gt.precision_x, n_samples, seed);

    write_matrix_csv((out / "sigma_hat.csv").string(), data.sigma_hat);
    write_matrix_csv((out / "s_true.csv").string(), gt.s_true);
    write_matrix_csv((out / "l_true.csv").string(), gt.l_true);
    write_manifest(out / "manifest.json",
                   {{"command", "gen"},
                    {"p", p},
                    {"ph", ph},
                    {"density", density},
                    {"seed", seed},
                    {"n", n_samples},
                    {"gt_mode", gt_mode}});
    return 0;
}

int run_solve(const std::string& input, double alpha, double beta, const SolveFlags& flags,
              const fs::path& out) {
    SymmetricMatrix sigma = read_matrix_csv(input);
    Problem problem{sigma, alpha, beta, flags.shrink_mode()};
    const SolveReport rep = solve(problem, flags.options());

    fs::create_directories(out);
    write_matrix_csv((out / "S.csv").string(), rep.final.S);
    write_matrix_csv((out / "L.csv").string(), rep.final.L);
    write_matrix_csv((out / "R.csv").string(), rep.final.R);

    json result = result_row_json(alpha, beta, flags.variant, rep);
    try {
        const KktResiduals kkt = kkt_residuals(problem, rep.final);
        result["kkt"] = {{"stationarity_R", kkt.stationarity_R},
                         {"dual_feas_S", kkt.dual_feas_S},
                         {"comp_slack_L", kkt.comp_slack_L},
                         {"primal", kkt.primal}};
    } catch (const NotPositiveDefinite&) {
        result["kkt"] = nullptr;
    }
    result["sp"] = rep.sp;
    result["sp1"] = rep.sp1;
    result["manifest"] = {{"command", "solve"}, {"input", input},      {"alpha", alpha},
                          {"beta", beta},       {"tool", "lvglasso"},  {"version", kVersion},
                          {"solver", flags.to_json()}};
    std::ofstream rf(out / "result.json");
    rf << result.dump(2) << '\n';
    write_manifest(out / "manifest.json", {{"command", "solve"},
                                           {"input", input},
                                           {"alpha", alpha},
                                           {"beta", beta},
                                           {"solver", flags.to_json()}});
    return rep.converged ? 0 : 2;
}

struct BenchCell {
    double alpha;
    double beta;
    std::string variant;
    int rep;
};

int run_bench(const std::string& input, const std::vector<double>& alphas,
              const std::vector<double>& betas, const std::string& pairs,
              const std::vector<std::string>& variants, int reps, int jobs,
              const SolveFlags& flags, const fs::path& out_csv) {
    std::vector<std::pair<double, double>> grid;
    if (!pairs.empty()) {
        std::stringstream ss(pairs);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw InvalidInput("bad --pairs entry: " + item);
            grid.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
        }
    } else {
        for (double a : alphas)
            for (double b : betas) grid.emplace_back(a, b);
    }
    if (grid.empty() || variants.empty() || reps < 1) {
        std::cerr << "bench: empty (alpha, beta) grid\n";
        return 1;
    }

    SymmetricMatrix sigma = read_matrix_csv(input);

    std::vector<BenchCell> cells;
    for (const auto& [a, b] : grid)
        for (const auto& v : variants)
            for (int r = 0; r < reps; ++r) cells.push_back({a, b, v, r});

    struct CellResult {
        bool ok = false;
        std::optional<SolveReport> rep;
        std::string error;
    };
    std::vector<CellResult> results(cells.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const BenchCell& c = cells[i];
            try {
                Problem problem{sigma, c.alpha, c.beta, flags.shrink_mode()};
                SolveFlags cell_flags = flags;
                cell_flags.variant = c.variant;
                results[i].rep = solve(problem, cell_flags.options());
                results[i].ok = true;
            } catch (const std::exception& e) {
                results[i].error = e.what();
            }
        }
    };
    const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (out_csv.has_parent_path()) fs::create_directories(out_csv.parent_path());
    std::ofstream out(out_csv);
    if (!out) throw IoError("cannot write " + out_csv.string());
    out << "alpha,beta,variant,obj,iter,cpu_seconds,infeas,sp_percent,sp1_percent,converged\n";
    out.precision(17);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const BenchCell& c = cells[i];
        const CellResult& r = results[i];
        out << c.alpha << ',' << c.beta << ',' << c.variant << ',';
        if (r.ok) {
            const SolveReport& rep = *r.rep;
            out << rep.objective << ',' << rep.iterations << ',' << rep.wall_seconds << ','
                << rep.infeas << ',';
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f,%.2f,", 100.0 * rep.sp, 100.0 * rep.sp1);
            out << buf << (rep.converged ? "true" : "false") << '\n';
        } else {
            out << ",,,,,," << "false" << '\n';
        }
    }

    fs::path manifest_path = out_csv;
    manifest_path.replace_extension(".manifest.json");
    json jgrid = json::array();
    for (const auto& [a, b] : grid) jgrid.push_back({a, b});
    write_manifest(manifest_path, {{"command", "bench"},
                                   {"input", input},
                                   {"grid", jgrid},
                                   {"variants", variants},
                                   {"reps", reps},
                                   {"solver", flags.to_json()}});
    return 0;
}

int run_ingest(const std::string& raw_path, int p, const fs::path& out_csv) {
    Eigen::MatrixXd raw = read_raw_csv(raw_path);
    SymmetricMatrix cov = top_variance_covariance(raw, p);
    if (out_csv.has_parent_path()) fs::create_directories(out_csv.parent_path());
    write_matrix_csv(out_csv.string(), cov);
    fs::path manifest_path = out_csv;
    manifest_path.replace_extension(".manifest.json");
    write_manifest(manifest_path,
                   {{"command", "ingest"}, {"input", raw_path}, {"p", p}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();
    CLI::App app{"Latent-variable Gaussian graphical model selection"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
    int p = 0, ph = 1, n = 0;
    double density = 0.10;
    std::uint64_t seed = 0;
    std::string gt_mode = "verbatim";
    std::string out_dir = ".";
    gen->add_option("--p", p, "observed dimension")->required()->check(CLI::PositiveNumber);
    gen->add_option("--ph", ph, "hidden dimension")->check(CLI::PositiveNumber);
    gen->add_option("--density", density, "nonzero density of the factor U");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--n", n, "sample count (0 = 5p)");
    gen->add_option("--gt-mode", gt_mode, "verbatim|direct")
        ->check(CLI::IsMember({"verbatim", "direct"}));
    gen->add_option("--out", out_dir, "output directory")->required();

    // solve
    auto* sol = app.add_subcommand("solve", "solve one instance");
    std::string input;
    double alpha = 0.0, beta = 0.0;
    SolveFlags solve_flags;
    std::string solve_out = ".";
    sol->add_option("input", input, "covariance CSV")->required();
    sol->add_option("--alpha", alpha, "l1 penalty")->required();
    sol->add_option("--beta", beta, "trace penalty")->required();
    solve_flags.attach(sol);
    sol->add_option("--out", solve_out, "output directory")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "run an (alpha, beta) grid");
    std::string bench_input, pairs;
    std::vector<double> alphas, betas;
    std::vector<std::string> variants{"pgadm"};
    int reps = 1, jobs = 1;
    SolveFlags bench_flags;
    std::string bench_out = "results.csv";
    bench->add_option("input", bench_input, "covariance CSV")->required();
    bench->add_option("--alphas", alphas, "alpha values")->delimiter(',');
    bench->add_option("--betas", betas, "beta values")->delimiter(',');
    bench->add_option("--pairs", pairs, "explicit alpha:beta pairs, comma separated");
    bench->add_option("--variants", variants, "solver variants")->delimiter(',');
    bench->add_option("--reps", reps, "repetitions per cell");
    bench->add_option("--jobs", jobs, "concurrent solves");
    bench_flags.attach(bench);
    bench->add_option("--out", bench_out, "results CSV path");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "covariance from raw sample data");
    std::string raw_path, ingest_out = "cov.csv";
    int ingest_p = 0;
    ingest->add_option("input", raw_path, "raw data CSV, one sample per row")->required();
    ingest->add_option("--p", ingest_p, "number of top-variance variables")->required();
    ingest->add_option("--out", ingest_out, "output covariance CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(p, ph, density, seed, n, gt_mode, out_dir);
        if (sol->parsed()) return run_solve(input, alpha, beta, solve_flags, solve_out);
        if (bench->parsed()) {
            return run_bench(bench_input, alphas, betas, pairs, variants, reps, jobs, bench_flags,
                             bench_out);
        }
        if (ingest->parsed()) return run_ingest(raw_path, ingest_p, ingest_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
