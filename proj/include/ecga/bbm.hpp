// bbm.hpp — the selectomutative GA: one-shot probabilistic model building
// for linkage identification, then enumerative building-block-wise
// hillclimbing from the best individual of the initial population.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "ecga/genome.hpp"
#include "ecga/mpm.hpp"
#include "ecga/problem.hpp"
#include "ecga/selection.hpp"

namespace ecga {

struct BbmConfig {
    std::size_t population_size = 0;  // model-building only
    SelectionConfig selection;
    GreedySearchOptions model;
};

struct BbmReport {
    std::uint64_t evaluations_model = 0;     // = n (initialization)
    std::uint64_t evaluations_mutation = 0;  // = sum over groups of 2^{k_i} - 1
    EvaluatedGenome best;
    std::size_t correct_bbs = 0;
    Partition learned_partition;
};

// Processes groups left-to-right (ascending minimum locus); for each group
// evaluates the 2^{k_i} - 1 variants that replace the group's bits with
// every other sequence, all other loci frozen at the incumbent, and keeps
// the fittest of {incumbent, variants}.  Ties favor the incumbent.
EvaluatedGenome bbwise_hillclimb(const EvaluatedGenome& start,
                                 const Partition& partition,
                                 const ProblemInstance& problem,
                                 EvalCounter& counter);

// Same, but the groups are visited in the given order (indices into
// partition.groups).  The default order is ascending minimum locus.
EvaluatedGenome bbwise_hillclimb_ordered(const EvaluatedGenome& start,
                                         const Partition& partition,
                                         std::span<const std::size_t> order,
                                         const ProblemInstance& problem,
                                         EvalCounter& counter);

// Initialize and evaluate n random genomes, select, learn the model
// (evaluation-free; fitnesses are already cached), then hillclimb from the
// best individual of the original evaluated population.
BbmReport run_bbm(const ProblemInstance& problem, const BbmConfig& cfg,
                  RandomSource& rng);

// Population/evaluation scaling brackets, up to caller constants:
// lower 2^k m^1.05, central 2^k m^1.5, upper 2^k m^2.1.
struct BbmPrediction {
    double lower = 0.0;
    double central = 0.0;
    double upper = 0.0;
};
BbmPrediction predict_bbm_scaling(std::size_t m, std::size_t k, double c = 1.0);

// eta = nfe(eCGA) / nfe(BB-wise mutation); denominator must be positive.
double speedup(double nfe_ecga, double nfe_bbm);

}  // namespace ecga
