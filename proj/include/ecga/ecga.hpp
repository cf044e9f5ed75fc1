// ecga.hpp — the selectorecombinative eCGA loop:
// select -> build model -> sample offspring -> full replacement, repeated
// until every member carries the same fitness value.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ecga/genome.hpp"
#include "ecga/mpm.hpp"
#include "ecga/problem.hpp"
#include "ecga/selection.hpp"

namespace ecga {

struct EcgaConfig {
    std::size_t population_size = 0;  // n; must be >= 2s (and s | n without replacement)
    SelectionConfig selection;
    std::size_t max_generations = 0;  // safety cap; 0 -> 10 * problem length
    GreedySearchOptions model;
    // When set, structure search is skipped and tables are fitted on this
    // fixed partition instead (oracle-model hook for tests).
    std::optional<Partition> fixed_partition;
};

struct RunReport {
    std::uint64_t evaluations = 0;  // n per generation plus n at init
    std::size_t generations = 0;
    EvaluatedGenome best;
    std::size_t correct_bbs = 0;
    bool converged = false;
    // Model built in the last executed generation; empty when none ran.
    std::optional<MarginalProductModel> last_model;
};

// One offspring per draw: for every group, sample a bit-sequence from the
// group's frequency table and write it into the group's loci.  Sampling is
// by integer index below n, so zero-probability sequences are never
// produced and the draw is exact.
std::vector<Genome> sample_offspring(const MarginalProductModel& model,
                                     std::size_t n_out, RandomSource& rng);

RunReport run_ecga(const ProblemInstance& problem, const EcgaConfig& cfg,
                   RandomSource& rng);

// Closed-form scaling predictors, up to caller-supplied constants:
//   population_size = c_n * 2^k (sigma_bb/d) m ln m
//   evaluations     = c_fe * (sigma_bb/d) sqrt(k) 2^k m^1.5 ln m
struct EcgaPrediction {
    double population_size = 0.0;
    double evaluations = 0.0;
};
EcgaPrediction predict_ecga_scaling(std::size_t m, std::size_t k,
                                    const SignalStats& stats, double c_n = 1.0,
                                    double c_fe = 1.0);

}  // namespace ecga
