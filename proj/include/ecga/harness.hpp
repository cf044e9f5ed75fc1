// harness.hpp — experiment methodology: bisection population sizing,
// multi-seed sweeps over m, log-log scaling fits, and speedup tables, with
// CSV emission.
//
// Seed splitting (reproducible from the command line alone):
//   cell        = derive_seed(master, algorithm_id, m, k)
//   sizing run  = derive_seed(cell, 1, n, run_index)
//   measurement = derive_seed(cell, 2, 0, seed_index)
// Runs are pure functions of their seed, so parallel and serial execution
// produce identical outputs.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecga/bbm.hpp"
#include "ecga/ecga.hpp"
#include "ecga/problem.hpp"

namespace ecga {

enum class Algorithm { ecga, bbm };
const char* to_string(Algorithm a);

struct ProblemConfig {
    ProblemKind kind = ProblemKind::trap;
    std::size_t m = 0;
    std::size_t k = 0;
    Coding coding = Coding::loose;

    ProblemInstance make() const;
};

struct AlgorithmConfig {
    SelectionConfig selection;
    std::size_t max_generations = 0;  // 0 -> run_ecga default
    GreedySearchOptions model;
};

enum class SuccessRule {
    mean_bbs,      // average correct BBs over the r runs >= m - 1
    run_fraction,  // at least `run_fraction` of the r runs individually succeed
};

struct BisectionConfig {
    std::size_t runs = 10;         // r runs per probed population size
    std::size_t n_start = 32;      // initial guess (rounded up to a multiple of s)
    double tolerance = 0.1;        // stop when (n_hi - n_lo) / n_hi <= tolerance
    std::size_t n_cap = 1 << 20;   // sizing failure beyond this
    SuccessRule rule = SuccessRule::mean_bbs;
    double run_fraction = 0.9;     // only used by SuccessRule::run_fraction
};

struct Probe {
    std::size_t n = 0;
    bool success = false;
};

struct BisectionResult {
    std::size_t n_star = 0;  // smallest observed success (upper bracket end)
    bool sized = false;      // false: n_cap exceeded before any success
    std::vector<Probe> probes;
};

// One algorithm run at population n; nfe is the total evaluation count
// (for bbm: model + mutation).  success means correct_bbs >= m - 1.
struct RunStats {
    std::uint64_t nfe = 0;
    std::size_t correct_bbs = 0;
    bool success = false;
};

RunStats run_once(Algorithm algorithm, const ProblemConfig& problem,
                  const AlgorithmConfig& algo, std::size_t n, std::uint64_t seed);

// Doubling-then-bisection walk over an arbitrary success predicate.
// Probed sizes are rounded to multiples of `multiple`.  Exposed separately
// so the walk itself can be tested against a synthetic oracle.
BisectionResult bisect_generic(const std::function<bool(std::size_t)>& success,
                               const BisectionConfig& cfg, std::size_t multiple);

BisectionResult bisect_population(Algorithm algorithm, const ProblemConfig& problem,
                                  const AlgorithmConfig& algo,
                                  const BisectionConfig& cfg,
                                  std::uint64_t master_seed, std::size_t jobs = 1);

// Aggregate over one (m, k, algorithm) cell; row type of the sweep CSV.
struct SweepRecord {
    Algorithm algorithm = Algorithm::ecga;
    std::size_t m = 0;
    std::size_t k = 0;
    std::size_t n_star = 0;  // 0 when sizing failed
    double nfe_mean = 0.0;
    double nfe_sd = 0.0;
    double success_rate = 0.0;
    std::size_t seeds = 0;
    bool sized = false;
};

// For each m: bisect n*, then measure `seeds` runs at n*.  Records are
// emitted in m_list order; sizing failures are flagged records (n_star 0).
std::vector<SweepRecord> sweep(Algorithm algorithm, ProblemKind kind, Coding coding,
                               std::size_t k, const std::vector<std::size_t>& m_list,
                               std::size_t seeds, const AlgorithmConfig& algo,
                               const BisectionConfig& bisect, std::uint64_t master_seed,
                               std::size_t jobs = 1);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;  // natural-log intercept of the power law
    double r_squared = 0.0;
};

// Least-squares fit of log y against log x; needs >= 3 strictly positive points.
FitResult fit_power_law(std::span<const std::pair<double, double>> points);

struct SpeedupCell {
    std::size_t m = 0;
    std::size_t k = 0;
    double eta = 0.0;
};

// eta per matched (m, k) cell from the mean evaluation counts.
std::vector<SpeedupCell> speedup_table(std::span<const SweepRecord> ecga_records,
                                       std::span<const SweepRecord> bbm_records);

// --- CSV / plot emission (headers mandatory; byte-deterministic) ---

std::string sweep_csv(std::span<const SweepRecord> records);
std::vector<SweepRecord> parse_sweep_csv(const std::string& text);

struct NamedFit {
    std::string quantity;
    std::string x_variable;
    FitResult fit;
};
std::string fit_csv(std::span<const NamedFit> fits);
std::string speedup_csv(std::span<const SpeedupCell> cells);

// Gnuplot script drawing population-size, evaluation-count, and speedup
// figures from the given CSV paths (any path may be empty to skip).
std::string plot_script(const std::string& ecga_csv, const std::string& bbm_csv,
                        const std::string& speedup_csv_path);

// Runs fn(0..count-1) on up to `jobs` threads; deterministic result
// placement is the caller's job (write to slot i).
void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace ecga
