#include "ecga/bbm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ecga {

EvaluatedGenome bbwise_hillclimb_ordered(const EvaluatedGenome& start,
                                         const Partition& partition,
                                         std::span<const std::size_t> order,
                                         const ProblemInstance& problem,
                                         EvalCounter& counter) {
    EvaluatedGenome incumbent = start;
    for (std::size_t which : order) {
        const auto& loci = partition.groups[which];
        const std::size_t k = loci.size();
        const std::uint32_t current = sequence_index(incumbent.genome, loci);
        // The incumbent's own sequence is not re-evaluated: 2^k - 1 variants.
        EvaluatedGenome champion = incumbent;
        for (std::uint32_t seq = 0; seq < (std::uint32_t{1} << k); ++seq) {
            if (seq == current) continue;
            EvaluatedGenome variant;
            variant.genome = incumbent.genome;
            write_sequence(variant.genome, loci, seq);
            variant.fitness = problem.evaluate_counted(variant.genome, counter);
            if (variant.fitness > champion.fitness) champion = std::move(variant);
        }
        incumbent = std::move(champion);
    }
    return incumbent;
}

EvaluatedGenome bbwise_hillclimb(const EvaluatedGenome& start,
                                 const Partition& partition,
                                 const ProblemInstance& problem,
                                 EvalCounter& counter) {
    // Left-to-right: ascending minimum locus.
    std::vector<std::size_t> order(partition.groups.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return partition.groups[a].front() < partition.groups[b].front();
    });
    return bbwise_hillclimb_ordered(start, partition, order, problem, counter);
}

BbmReport run_bbm(const ProblemInstance& problem, const BbmConfig& cfg,
                  RandomSource& rng) {
    const std::size_t n = cfg.population_size;
    if (n < cfg.selection.tournament_size)
        throw std::invalid_argument("run_bbm needs population size >= tournament size");

    EvalCounter init_counter;
    Population pop =
        random_population(n, problem.length(), rng, problem, init_counter);

    // Model building consumes no evaluations: fitnesses are already cached.
    Population selected = tournament_select(pop, cfg.selection, rng);
    MarginalProductModel model = greedy_search(selected, cfg.model);

    EvalCounter mutation_counter;
    const EvaluatedGenome result = bbwise_hillclimb(
        pop.best(), model.partition, problem, mutation_counter);

    BbmReport report;
    report.evaluations_model = init_counter.count();
    report.evaluations_mutation = mutation_counter.count();
    report.best = result;
    report.correct_bbs = problem.correct_bbs(result.genome);
    report.learned_partition = std::move(model.partition);
    return report;
}

BbmPrediction predict_bbm_scaling(std::size_t m, std::size_t k, double c) {
    const double md = static_cast<double>(m);
    const double two_k = std::ldexp(1.0, static_cast<int>(k));
    BbmPrediction out;
    out.lower = c * two_k * std::pow(md, 1.05);
    out.central = c * two_k * std::pow(md, 1.5);
    out.upper = c * two_k * std::pow(md, 2.1);
    return out;
}

double speedup(double nfe_ecga, double nfe_bbm) {
    if (!(nfe_bbm > 0.0))
        throw std::logic_error("speedup: mutation evaluation count must be positive");
    return nfe_ecga / nfe_bbm;
}

}  // namespace ecga
