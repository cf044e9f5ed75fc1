// ecga-bench — command-line entry point for single runs, bisection sizing,
// scalability sweeps, and speedup tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ecga/bbm.hpp"
#include "ecga/ecga.hpp"
#include "ecga/harness.hpp"
#include "ecga/mpm.hpp"
#include "ecga/selftest.hpp"

namespace {

using namespace ecga;

constexpr const char* kSeedSplittingNote =
    "Seed splitting: cell = H(seed, algorithm, m, k); sizing run i at size n "
    "uses H(cell, 1, n, i); measurement run i uses H(cell, 2, 0, i). Repeated "
    "invocations with identical flags produce byte-identical CSV at any --jobs.";

struct ProblemFlags {
    std::string problem = "trap";
    std::size_t m = 0;
    std::size_t k = 0;
    std::string coding = "loose";

    ProblemConfig config() const {
        ProblemConfig cfg;
        cfg.kind = problem == "trap" ? ProblemKind::trap : ProblemKind::onemax;
        cfg.m = m;
        cfg.k = k;
        cfg.coding = coding == "tight" ? Coding::tight : Coding::loose;
        return cfg;
    }
};

struct AlgoFlags {
    std::size_t tournament_size = 8;
    bool with_replacement = false;
    std::size_t max_generations = 0;
    std::size_t k_max = 0;

    AlgorithmConfig config() const {
        AlgorithmConfig cfg;
        cfg.selection.tournament_size = tournament_size;
        cfg.selection.replacement =
            with_replacement ? Replacement::with : Replacement::without;
        cfg.max_generations = max_generations;
        cfg.model.max_group_size = k_max;
        return cfg;
    }
};

struct BisectFlags {
    std::size_t runs = 10;
    std::size_t n_start = 32;
    double tolerance = 0.1;
    std::size_t n_cap = 1048576;
    std::string rule = "mean";
    double fraction = 0.9;

    BisectionConfig config() const {
        BisectionConfig cfg;
        cfg.runs = runs;
        cfg.n_start = n_start;
        cfg.tolerance = tolerance;
        cfg.n_cap = n_cap;
        cfg.rule = rule == "mean" ? SuccessRule::mean_bbs : SuccessRule::run_fraction;
        cfg.run_fraction = fraction;
        return cfg;
    }
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& f) {
    cmd->add_option("--problem", f.problem, "fitness function")
        ->check(CLI::IsMember({"trap", "onemax"}))
        ->capture_default_str();
    cmd->add_option("--m", f.m, "number of building blocks")->required();
    cmd->add_option("--k", f.k, "building block size")->required();
    cmd->add_option("--coding", f.coding, "linkage coding")
        ->check(CLI::IsMember({"tight", "loose"}))
        ->capture_default_str();
}

void add_algo_flags(CLI::App* cmd, AlgoFlags& f, bool generations) {
    cmd->add_option("--tournament-size", f.tournament_size, "tournament size s")
        ->capture_default_str();
    cmd->add_flag("--tournament-replacement", f.with_replacement,
                  "select with replacement instead of shuffled passes");
    if (generations)
        cmd->add_option("--max-generations", f.max_generations,
                        "generation safety cap (0 = 10x problem length)")
            ->capture_default_str();
    cmd->add_option("--k-max", f.k_max,
                    "largest model group size a merge may produce (0 = unlimited)")
        ->capture_default_str();
}

void add_bisect_flags(CLI::App* cmd, BisectFlags& f) {
    cmd->add_option("--bisect-runs", f.runs, "runs per probed population size")
        ->capture_default_str();
    cmd->add_option("--n-start", f.n_start, "initial population size guess")
        ->capture_default_str();
    cmd->add_option("--bisect-tol", f.tolerance, "relative bracket tolerance")
        ->capture_default_str();
    cmd->add_option("--n-cap", f.n_cap, "sizing failure beyond this population")
        ->capture_default_str();
    cmd->add_option("--bisect-rule", f.rule,
                    "success rule: mean correct BBs >= m-1, or per-run fraction")
        ->check(CLI::IsMember({"mean", "fraction"}))
        ->capture_default_str();
    cmd->add_option("--bisect-fraction", f.fraction,
                    "required success fraction for --bisect-rule fraction")
        ->capture_default_str();
}

void write_output(const std::string& path, const std::string& contents) {
    if (path.empty()) {
        std::fwrite(contents.data(), 1, contents.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string plot_path_for(const std::string& csv_path) {
    const std::string suffix = ".csv";
    if (csv_path.size() > suffix.size() &&
        csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return csv_path.substr(0, csv_path.size() - suffix.size()) + "_plots.gp";
    return csv_path + "_plots.gp";
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

int cmd_run_ecga(const ProblemFlags& problem, const AlgoFlags& algo, std::size_t n,
                 std::uint64_t seed, const std::string& out,
                 const std::string& dump_path) {
    const ProblemConfig pc = problem.config();
    const ProblemInstance instance = pc.make();
    EcgaConfig cfg;
    cfg.population_size = n;
    cfg.selection = algo.config().selection;
    cfg.max_generations = algo.max_generations;
    cfg.model.max_group_size = algo.k_max;
    RandomSource rng(seed);
    const RunReport report = run_ecga(instance, cfg, rng);

    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "algorithm,m,k,coding,n,seed,evaluations,generations,best_fitness,"
                  "correct_bbs,converged\n"
                  "ecga,%zu,%zu,%s,%zu,%llu,%llu,%zu,%.6f,%zu,%s\n",
                  pc.m, pc.k, to_string(pc.coding), n,
                  static_cast<unsigned long long>(seed),
                  static_cast<unsigned long long>(report.evaluations),
                  report.generations, report.best.fitness, report.correct_bbs,
                  csv_bool(report.converged).c_str());
    write_output(out, buf);
    if (!dump_path.empty())
        write_output(dump_path,
                     report.last_model ? dump_model(*report.last_model) : "");
    return 0;
}

int cmd_run_bbm(const ProblemFlags& problem, const AlgoFlags& algo, std::size_t n,
                std::uint64_t seed, const std::string& out,
                const std::string& dump_path) {
    const ProblemConfig pc = problem.config();
    const ProblemInstance instance = pc.make();
    BbmConfig cfg;
    cfg.population_size = n;
    cfg.selection = algo.config().selection;
    cfg.model.max_group_size = algo.k_max;
    RandomSource rng(seed);
    const BbmReport report = run_bbm(instance, cfg, rng);
    const bool exact = partition_equals(report.learned_partition, instance.linkage());

    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "algorithm,m,k,coding,n,seed,evaluations_model,"
                  "evaluations_mutation,best_fitness,correct_bbs,model_exact\n"
                  "bbm,%zu,%zu,%s,%zu,%llu,%llu,%llu,%.6f,%zu,%s\n",
                  pc.m, pc.k, to_string(pc.coding), n,
                  static_cast<unsigned long long>(seed),
                  static_cast<unsigned long long>(report.evaluations_model),
                  static_cast<unsigned long long>(report.evaluations_mutation),
                  report.best.fitness, report.correct_bbs, csv_bool(exact).c_str());
    write_output(out, buf);
    if (!dump_path.empty()) {
        const MarginalProductModel refit = [&] {
            // Reproduce the learned model tables for dumping.
            RandomSource rng2(seed);
            EvalCounter counter;
            Population pop = random_population(n, instance.length(), rng2, instance,
                                               counter);
            Population selected = tournament_select(pop, cfg.selection, rng2);
            return greedy_search(selected, cfg.model);
        }();
        write_output(dump_path, dump_model(refit));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "eCGA and building-block-wise mutation benchmark for m k-trap "
        "functions.\n" +
        std::string(kSeedSplittingNote)};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    // run-ecga ------------------------------------------------------------
    auto* run_ecga_cmd =
        app.add_subcommand("run-ecga", "one eCGA run, reported as a CSV line");
    ProblemFlags re_problem;
    AlgoFlags re_algo;
    std::size_t re_n = 0;
    std::uint64_t re_seed = 42;
    std::string re_out, re_dump;
    add_problem_flags(run_ecga_cmd, re_problem);
    add_algo_flags(run_ecga_cmd, re_algo, true);
    run_ecga_cmd->add_option("--n", re_n, "population size")->required();
    run_ecga_cmd->add_option("--seed", re_seed, "run seed")->capture_default_str();
    run_ecga_cmd->add_option("--out", re_out, "output path (default: stdout)")
        ->capture_default_str();
    run_ecga_cmd->add_option("--dump-model", re_dump,
                             "write the last generation's model to this path");

    // run-bbm -------------------------------------------------------------
    auto* run_bbm_cmd = app.add_subcommand(
        "run-bbm", "one BB-wise mutation run, reported as a CSV line");
    ProblemFlags rb_problem;
    AlgoFlags rb_algo;
    std::size_t rb_n = 0;
    std::uint64_t rb_seed = 42;
    std::string rb_out, rb_dump;
    add_problem_flags(run_bbm_cmd, rb_problem);
    add_algo_flags(run_bbm_cmd, rb_algo, false);
    run_bbm_cmd->add_option("--n", rb_n, "population size (model building)")
        ->required();
    run_bbm_cmd->add_option("--seed", rb_seed, "run seed")->capture_default_str();
    run_bbm_cmd->add_option("--out", rb_out, "output path (default: stdout)")
        ->capture_default_str();
    run_bbm_cmd->add_option("--dump-model", rb_dump,
                            "write the learned model to this path");

    // bisect ---------------------------------------------------------------
    auto* bisect_cmd = app.add_subcommand(
        "bisect", "minimal population size by doubling + bisection");
    std::string bi_algo_name;
    ProblemFlags bi_problem;
    AlgoFlags bi_algo;
    BisectFlags bi_bisect;
    std::uint64_t bi_seed = 42;
    std::size_t bi_jobs = std::thread::hardware_concurrency();
    std::string bi_out;
    bisect_cmd->add_option("--algo", bi_algo_name, "algorithm to size")
        ->check(CLI::IsMember({"ecga", "bbm"}))
        ->required();
    add_problem_flags(bisect_cmd, bi_problem);
    add_algo_flags(bisect_cmd, bi_algo, true);
    add_bisect_flags(bisect_cmd, bi_bisect);
    bisect_cmd->add_option("--seed", bi_seed, "master seed")->capture_default_str();
    bisect_cmd->add_option("--jobs", bi_jobs, "worker threads")->capture_default_str();
    bisect_cmd->add_option("--out", bi_out, "output path (default: stdout)")
        ->capture_default_str();

    // sweep ----------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "bisect n* and measure evaluations across m (and k) cells");
    std::string sw_algo_name;
    ProblemFlags sw_problem;  // m unused; --m-list drives the cells
    AlgoFlags sw_algo;
    BisectFlags sw_bisect;
    std::vector<std::size_t> sw_m_list;
    std::vector<std::size_t> sw_k_list;
    std::size_t sw_seeds = 30;
    std::uint64_t sw_seed = 42;
    std::size_t sw_jobs = std::thread::hardware_concurrency();
    std::string sw_out;
    bool sw_plot = false;
    sweep_cmd->add_option("--algo", sw_algo_name, "algorithm to sweep")
        ->check(CLI::IsMember({"ecga", "bbm"}))
        ->required();
    sweep_cmd->add_option("--problem", sw_problem.problem, "fitness function")
        ->check(CLI::IsMember({"trap", "onemax"}))
        ->capture_default_str();
    sweep_cmd->add_option("--coding", sw_problem.coding, "linkage coding")
        ->check(CLI::IsMember({"tight", "loose"}))
        ->capture_default_str();
    sweep_cmd->add_option("--k", sw_problem.k, "building block size");
    sweep_cmd
        ->add_option("--k-list", sw_k_list, "several building block sizes")
        ->delimiter(',');
    sweep_cmd->add_option("--m-list", sw_m_list, "building block counts")
        ->delimiter(',')
        ->required();
    sweep_cmd->add_option("--seeds", sw_seeds, "measurement runs per cell")
        ->capture_default_str();
    add_algo_flags(sweep_cmd, sw_algo, true);
    add_bisect_flags(sweep_cmd, sw_bisect);
    sweep_cmd->add_option("--seed", sw_seed, "master seed")->capture_default_str();
    sweep_cmd->add_option("--jobs", sw_jobs, "worker threads")->capture_default_str();
    sweep_cmd->add_option("--out", sw_out, "output CSV path (default: stdout)")
        ->capture_default_str();
    sweep_cmd->add_flag("--plot", sw_plot,
                        "also write a gnuplot script next to the CSV");

    // speedup ----------------------------------------------------------------
    auto* speedup_cmd = app.add_subcommand(
        "speedup", "eta = nfe(eCGA)/nfe(BBM) per cell from two sweep CSVs");
    std::string sp_ecga, sp_bbm, sp_out;
    speedup_cmd->add_option("--ecga-csv", sp_ecga, "eCGA sweep CSV")->required();
    speedup_cmd->add_option("--bbm-csv", sp_bbm, "BBM sweep CSV")->required();
    speedup_cmd->add_option("--out", sp_out, "output path (default: stdout)")
        ->capture_default_str();

    // selftest ---------------------------------------------------------------
    auto* selftest_cmd = app.add_subcommand(
        "selftest", "run built-in exact-value checks and print pass/fail");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_ecga_cmd->parsed())
            return cmd_run_ecga(re_problem, re_algo, re_n, re_seed, re_out, re_dump);
        if (run_bbm_cmd->parsed())
            return cmd_run_bbm(rb_problem, rb_algo, rb_n, rb_seed, rb_out, rb_dump);

        if (bisect_cmd->parsed()) {
            const Algorithm algorithm =
                bi_algo_name == "ecga" ? Algorithm::ecga : Algorithm::bbm;
            const BisectionResult r =
                bisect_population(algorithm, bi_problem.config(), bi_algo.config(),
                                  bi_bisect.config(), bi_seed, bi_jobs);
            char buf[256];
            std::snprintf(buf, sizeof buf, "algorithm,m,k,n_star\n%s,%zu,%zu,%zu\n",
                          bi_algo_name.c_str(), bi_problem.m, bi_problem.k, r.n_star);
            write_output(bi_out, buf);
            if (!r.sized) {
                std::cerr << "sizing failure: no success up to --n-cap\n";
                return 2;
            }
            return 0;
        }

        if (sweep_cmd->parsed()) {
            const Algorithm algorithm =
                sw_algo_name == "ecga" ? Algorithm::ecga : Algorithm::bbm;
            if (sw_k_list.empty() && sw_problem.k == 0)
                throw CLI::ValidationError("sweep", "one of --k or --k-list is required");
            if (!sw_k_list.empty() && sw_problem.k != 0)
                throw CLI::ValidationError("sweep", "--k and --k-list are exclusive");
            std::vector<std::size_t> k_list =
                sw_k_list.empty() ? std::vector<std::size_t>{sw_problem.k} : sw_k_list;
            const ProblemConfig pc = sw_problem.config();
            std::vector<SweepRecord> records;
            for (std::size_t k : k_list) {
                auto part = sweep(algorithm, pc.kind, pc.coding, k, sw_m_list,
                                  sw_seeds, sw_algo.config(), sw_bisect.config(),
                                  sw_seed, sw_jobs);
                records.insert(records.end(), part.begin(), part.end());
            }
            write_output(sw_out, sweep_csv(records));
            if (sw_plot && !sw_out.empty()) {
                const std::string gp = plot_path_for(sw_out);
                if (algorithm == Algorithm::ecga)
                    write_output(gp, plot_script(sw_out, "", ""));
                else
                    write_output(gp, plot_script("", sw_out, ""));
            }
            for (const auto& r : records)
                if (!r.sized) {
                    std::cerr << "sizing failure in cell m=" << r.m << " k=" << r.k
                              << "\n";
                    return 2;
                }
            return 0;
        }

        if (speedup_cmd->parsed()) {
            const auto ecga_records = parse_sweep_csv(read_file(sp_ecga));
            const auto bbm_records = parse_sweep_csv(read_file(sp_bbm));
            const auto cells = speedup_table(ecga_records, bbm_records);
            write_output(sp_out, speedup_csv(cells));
            return 0;
        }

        if (selftest_cmd->parsed()) {
            int failures = 0;
            for (const auto& check : run_selftests()) {
                if (check.passed) {
                    std::printf("[PASS] %s\n", check.name.c_str());
                } else {
                    std::printf("[FAIL] %s: %s\n", check.name.c_str(),
                                check.detail.c_str());
                    ++failures;
                }
            }
            return failures == 0 ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
