#include "ecga/problem.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ecga {

const char* to_string(Coding c) {
    return c == Coding::tight ? "tight" : "loose";
}

const char* to_string(ProblemKind k) {
    return k == ProblemKind::trap ? "trap" : "onemax";
}

LinkageMap LinkageMap::make(std::size_t m, std::size_t k, Coding coding) {
    if (m < 1 || k < 1) throw std::invalid_argument("linkage map needs m >= 1, k >= 1");
    LinkageMap map;
    map.coding = coding;
    map.m = m;
    map.k = k;
    map.partitions.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto& group = map.partitions[i];
        group.reserve(k);
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t locus = (coding == Coding::tight) ? i * k + j : i + j * m;
            group.push_back(static_cast<std::uint32_t>(locus));
        }
    }
    return map;
}

ProblemInstance::ProblemInstance(LinkageMap linkage, ProblemKind kind,
                                 std::vector<double> table)
    : linkage_(std::move(linkage)), kind_(kind), table_(std::move(table)) {
    // Precompute per-partition word masks for popcount-based unitation.
    masks_.resize(linkage_.partitions.size());
    for (std::size_t i = 0; i < linkage_.partitions.size(); ++i) {
        auto& pairs = masks_[i];
        for (std::uint32_t locus : linkage_.partitions[i]) {
            const std::uint32_t word = locus >> 6;
            const std::uint64_t bit = std::uint64_t{1} << (locus & 63);
            bool found = false;
            for (auto& [w, mask] : pairs)
                if (w == word) {
                    mask |= bit;
                    found = true;
                    break;
                }
            if (!found) pairs.emplace_back(word, bit);
        }
    }
}

ProblemInstance ProblemInstance::trap(std::size_t m, std::size_t k, Coding coding) {
    if (k < 2) throw std::invalid_argument("trap needs k >= 2 (no deception possible)");
    std::vector<double> table(k + 1);
    for (std::size_t u = 0; u <= k; ++u)
        table[u] = (u == k) ? static_cast<double>(k) : static_cast<double>(k - 1 - u);
    return ProblemInstance(LinkageMap::make(m, k, coding), ProblemKind::trap,
                           std::move(table));
}

ProblemInstance ProblemInstance::onemax(std::size_t m, std::size_t k, Coding coding) {
    std::vector<double> table(k + 1);
    for (std::size_t u = 0; u <= k; ++u) table[u] = static_cast<double>(u);
    return ProblemInstance(LinkageMap::make(m, k, coding), ProblemKind::onemax,
                           std::move(table));
}

double ProblemInstance::evaluate(const Genome& g) const {
    if (g.length() != length())
        throw std::invalid_argument("genome length does not match problem length");
    const auto words = g.words();
    double total = 0.0;
    for (const auto& pairs : masks_) {
        std::size_t u = 0;
        for (const auto& [word, mask] : pairs)
            u += static_cast<std::size_t>(std::popcount(words[word] & mask));
        total += table_[u];
    }
    return total;
}

std::size_t ProblemInstance::correct_bbs(const Genome& g) const {
    if (g.length() != length())
        throw std::invalid_argument("genome length does not match problem length");
    const auto words = g.words();
    std::size_t correct = 0;
    for (const auto& pairs : masks_) {
        std::size_t u = 0;
        for (const auto& [word, mask] : pairs)
            u += static_cast<std::size_t>(std::popcount(words[word] & mask));
        if (u == linkage_.k) ++correct;
    }
    return correct;
}

SignalStats ProblemInstance::signal_stats() const {
    const std::size_t k = linkage_.k;
    // Exact moments of f(u) with u ~ Binomial(k, 1/2): weights C(k, u) / 2^k.
    double mean = 0.0, second = 0.0;
    double weight_sum = 0.0;
    double choose = 1.0;  // C(k, 0)
    for (std::size_t u = 0; u <= k; ++u) {
        const double w = choose;
        mean += w * table_[u];
        second += w * table_[u] * table_[u];
        weight_sum += w;
        choose = choose * static_cast<double>(k - u) / static_cast<double>(u + 1);
    }
    mean /= weight_sum;
    second /= weight_sum;
    SignalStats stats;
    stats.d = table_[k] - table_[0];
    const double variance = second - mean * mean;
    stats.sigma_bb = variance > 0.0 ? std::sqrt(variance) : 0.0;
    return stats;
}

double ProblemInstance::optimum() const {
    double best = table_[0];
    for (double v : table_)
        if (v > best) best = v;
    return best * static_cast<double>(linkage_.m);
}

Population random_population(std::size_t n, std::size_t length, RandomSource& rng,
                             const ProblemInstance& problem, EvalCounter& counter) {
    if (n < 1 || length < 1)
        throw std::invalid_argument("random_population needs n >= 1 and length >= 1");
    if (length != problem.length())
        throw std::invalid_argument("requested length does not match problem length");
    Population pop;
    pop.members.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        EvaluatedGenome member;
        member.genome = Genome::random(length, rng);
        member.fitness = problem.evaluate_counted(member.genome, counter);
        pop.members.push_back(std::move(member));
    }
    return pop;
}

}  // namespace ecga
