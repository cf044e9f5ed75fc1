#include "ecga/ecga.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecga {

std::vector<Genome> sample_offspring(const MarginalProductModel& model,
                                     std::size_t n_out, RandomSource& rng) {
    const std::size_t length = model.partition.length();
    const std::size_t n = model.n;
    if (n == 0) throw std::invalid_argument("sample_offspring: model has n = 0");

    // Cumulative counts per group; a draw below n lands in a sequence with
    // probability exactly N_ij / n.
    std::vector<std::vector<std::uint32_t>> cumulative(model.counts.size());
    for (std::size_t g = 0; g < model.counts.size(); ++g) {
        const auto& counts = model.counts[g];
        auto& cum = cumulative[g];
        cum.resize(counts.size());
        std::uint32_t running = 0;
        for (std::size_t j = 0; j < counts.size(); ++j) {
            running += counts[j];
            cum[j] = running;
        }
        if (running != n)
            throw std::invalid_argument("sample_offspring: counts do not sum to n");
    }

    std::vector<Genome> offspring;
    offspring.reserve(n_out);
    for (std::size_t i = 0; i < n_out; ++i) {
        Genome child(length);
        for (std::size_t g = 0; g < model.partition.groups.size(); ++g) {
            const auto r = static_cast<std::uint32_t>(rng.below(n));
            const auto& cum = cumulative[g];
            const std::size_t seq = static_cast<std::size_t>(
                std::upper_bound(cum.begin(), cum.end(), r) - cum.begin());
            write_sequence(child, model.partition.groups[g],
                           static_cast<std::uint32_t>(seq));
        }
        offspring.push_back(std::move(child));
    }
    return offspring;
}

RunReport run_ecga(const ProblemInstance& problem, const EcgaConfig& cfg,
                   RandomSource& rng) {
    const std::size_t n = cfg.population_size;
    const std::size_t s = cfg.selection.tournament_size;
    if (n < 2 * s)
        throw std::invalid_argument("run_ecga needs population size >= 2 * tournament size");
    const std::size_t max_generations =
        cfg.max_generations != 0 ? cfg.max_generations : 10 * problem.length();

    EvalCounter counter;
    Population pop = random_population(n, problem.length(), rng, problem, counter);

    RunReport report;
    report.converged = pop.uniform_fitness();

    while (!report.converged && report.generations < max_generations) {
        Population selected = tournament_select(pop, cfg.selection, rng);
        MarginalProductModel model =
            cfg.fixed_partition ? fit_tables(*cfg.fixed_partition, selected)
                                : greedy_search(selected, cfg.model);
        std::vector<Genome> children = sample_offspring(model, n, rng);

        Population next;
        next.members.reserve(n);
        for (auto& child : children) {
            EvaluatedGenome member;
            member.fitness = problem.evaluate_counted(child, counter);
            member.genome = std::move(child);
            next.members.push_back(std::move(member));
        }
        pop = std::move(next);
        report.last_model = std::move(model);
        ++report.generations;
        report.converged = pop.uniform_fitness();
    }

    report.evaluations = counter.count();
    report.best = pop.best();
    report.correct_bbs = problem.correct_bbs(report.best.genome);
    return report;
}

EcgaPrediction predict_ecga_scaling(std::size_t m, std::size_t k,
                                    const SignalStats& stats, double c_n,
                                    double c_fe) {
    if (m < 2)
        throw std::invalid_argument("predict_ecga_scaling needs m >= 2 (log m > 0)");
    const double md = static_cast<double>(m);
    const double ratio = stats.sigma_bb / stats.d;
    const double two_k = std::ldexp(1.0, static_cast<int>(k));
    EcgaPrediction out;
    out.population_size = c_n * two_k * ratio * md * std::log(md);
    out.evaluations = c_fe * ratio * std::sqrt(static_cast<double>(k)) * two_k *
                      std::pow(md, 1.5) * std::log(md);
    return out;
}

}  // namespace ecga
