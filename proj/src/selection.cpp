#include "ecga/selection.hpp"

#include <numeric>
#include <stdexcept>

namespace ecga {

namespace {

// Index of the fittest member among group; ties broken uniformly at random.
std::size_t tournament_winner(const Population& pop,
                              std::span<const std::uint32_t> group,
                              RandomSource& rng) {
    double best = pop.members[group[0]].fitness;
    std::size_t tied = 1;
    std::size_t first = group[0];
    for (std::size_t i = 1; i < group.size(); ++i) {
        const double f = pop.members[group[i]].fitness;
        if (f > best) {
            best = f;
            tied = 1;
            first = group[i];
        } else if (f == best) {
            ++tied;
        }
    }
    if (tied == 1) return first;
    std::size_t pick = static_cast<std::size_t>(rng.below(tied));
    for (std::uint32_t idx : group) {
        if (pop.members[idx].fitness == best && pick-- == 0) return idx;
    }
    return first;  // unreachable
}

}  // namespace

Population tournament_select(const Population& pop, const SelectionConfig& cfg,
                             RandomSource& rng) {
    const std::size_t n = pop.size();
    const std::size_t s = cfg.tournament_size;
    if (s < 2) throw std::invalid_argument("tournament size must be >= 2");
    if (n < s) throw std::invalid_argument("population smaller than tournament size");

    Population out;
    out.members.reserve(n);

    if (cfg.replacement == Replacement::with) {
        std::vector<std::uint32_t> group(s);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < s; ++j)
                group[j] = static_cast<std::uint32_t>(rng.below(n));
            out.members.push_back(pop.members[tournament_winner(pop, group, rng)]);
        }
        return out;
    }

    // Without replacement: s shuffled passes, each partitioning the
    // population into n/s groups of s.
    if (n % s != 0)
        throw std::invalid_argument(
            "tournament without replacement needs s | n; choose n as a multiple of s");
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t pass = 0; pass < s; ++pass) {
        shuffle(perm, rng);
        for (std::size_t g = 0; g < n / s; ++g) {
            std::span<const std::uint32_t> group(perm.data() + g * s, s);
            out.members.push_back(pop.members[tournament_winner(pop, group, rng)]);
        }
    }
    return out;
}

}  // namespace ecga
