// mpm.hpp — marginal product models, MDL scoring, and the greedy merge
// search over partition structures.
//
// A model is a partition of the gene indices plus, per group, the joint
// frequency table of the group's bit-sequences in the source population.
// Model selection minimizes C_m + C_p:
//   C_m = log2(n) * sum_i (2^{k_i} - 1)        (representation size, bits)
//   C_p = n * sum_i H(p_i)                     (compressed population, bits)
// with the 0*log 0 = 0 convention.  Frequencies are exact rationals
// N_ij / n; entropies are computed from the integer counts so C_p is
// reproducible to ~1e-12 across platforms.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ecga/genome.hpp"
#include "ecga/problem.hpp"

namespace ecga {

// Disjoint cover of {0..l-1}.  Loci sorted ascending within each group;
// groups ordered by their minimum locus.
struct Partition {
    std::vector<std::vector<std::uint32_t>> groups;

    std::size_t length() const;
    static Partition singletons(std::size_t length);

    // Canonicalize (sort loci, order groups) and check the disjoint-cover
    // invariant against `length`; throws std::invalid_argument on failure.
    void validate_cover(std::size_t length);

    bool operator==(const Partition&) const = default;
};

struct MdlScore {
    double c_m = 0.0;
    double c_p = 0.0;
    double combined = 0.0;  // always exactly c_m + c_p
};

struct MarginalProductModel {
    Partition partition;
    // counts[i][j] = N_ij over the canonical sequence order of group i.
    std::vector<std::vector<std::uint32_t>> counts;
    std::size_t n = 0;
    MdlScore score;

    double frequency(std::size_t group, std::size_t seq) const {
        return static_cast<double>(counts[group][seq]) / static_cast<double>(n);
    }
};

// Count each group's observed bit-sequences over the population.
MarginalProductModel fit_tables(const Partition& partition, const Population& pop);

// Eq-style closed forms; n >= 2 required (log2(1) = 0 degenerates the
// tradeoff), group size capped at 30 bits of table.
double model_complexity(const Partition& partition, std::size_t n);
double population_complexity(const MarginalProductModel& model);
MdlScore mdl_score(const Partition& partition, const MarginalProductModel& model);

struct GreedySearchOptions {
    // Largest group size a merge may produce; 0 = unlimited.
    std::size_t max_group_size = 0;
};

// Greedy structure search: start from all singletons, repeatedly adopt the
// pairwise merge with the lowest combined complexity while it is strictly
// lower than the incumbent's.  Equal-scoring best merges resolve to the
// lexicographically smallest (min locus of first group, min locus of
// second).  Returns the final model with fitted tables and score.
MarginalProductModel greedy_search(const Population& pop,
                                   const GreedySearchOptions& options = {});

// Fraction of ground-truth groups present verbatim in `found`.
double partition_match(const Partition& found, const LinkageMap& truth);
bool partition_equals(const Partition& found, const LinkageMap& truth);

// Text dump: one line per group, sorted indices comma-separated, then the
// frequency table in lexicographic sequence order.
std::string dump_model(const MarginalProductModel& model);

}  // namespace ecga
