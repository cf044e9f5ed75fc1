#include "ecga/mpm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace ecga {

namespace {

// Tables larger than this are never allocated; a merge that would need one
// is skipped (MDL cannot favor such a merge at any realistic n anyway).
constexpr std::size_t kMaxTableBits = 24;

double pow2(std::size_t k) { return std::ldexp(1.0, static_cast<int>(k)); }

// Contribution of one count to n*H in bits: c * (log2 n - log2 c).
// Summing over a group's counts gives that group's C_p term exactly.
double cp_from_counts(std::span<const std::uint32_t> counts, double log2n) {
    double total = 0.0;
    for (std::uint32_t c : counts)
        if (c != 0)
            total += static_cast<double>(c) * (log2n - std::log2(static_cast<double>(c)));
    return total;
}

}  // namespace

std::size_t Partition::length() const {
    std::size_t total = 0;
    for (const auto& g : groups) total += g.size();
    return total;
}

Partition Partition::singletons(std::size_t length) {
    Partition p;
    p.groups.resize(length);
    for (std::size_t i = 0; i < length; ++i)
        p.groups[i] = {static_cast<std::uint32_t>(i)};
    return p;
}

void Partition::validate_cover(std::size_t length) {
    for (auto& g : groups) {
        if (g.empty()) throw std::invalid_argument("partition has an empty group");
        std::sort(g.begin(), g.end());
    }
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::vector<bool> seen(length, false);
    std::size_t total = 0;
    for (const auto& g : groups) {
        for (std::uint32_t locus : g) {
            if (locus >= length || seen[locus])
                throw std::invalid_argument("partition is not a disjoint cover");
            seen[locus] = true;
            ++total;
        }
    }
    if (total != length) throw std::invalid_argument("partition does not cover all loci");
}

MarginalProductModel fit_tables(const Partition& partition, const Population& pop) {
    if (pop.size() == 0) throw std::invalid_argument("fit_tables: empty population");
    MarginalProductModel model;
    model.partition = partition;
    model.partition.validate_cover(pop.genome_length());
    model.n = pop.size();
    model.counts.resize(model.partition.groups.size());
    for (std::size_t i = 0; i < model.partition.groups.size(); ++i) {
        const auto& group = model.partition.groups[i];
        if (group.size() > kMaxTableBits)
            throw std::invalid_argument("fit_tables: group too large to tabulate");
        auto& counts = model.counts[i];
        counts.assign(std::size_t{1} << group.size(), 0);
        for (const auto& member : pop.members)
            ++counts[sequence_index(member.genome, group)];
    }
    return model;
}

double model_complexity(const Partition& partition, std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("model_complexity needs n >= 2");
    double table_sizes = 0.0;
    for (const auto& g : partition.groups) table_sizes += pow2(g.size()) - 1.0;
    return std::log2(static_cast<double>(n)) * table_sizes;
}

double population_complexity(const MarginalProductModel& model) {
    const double log2n = std::log2(static_cast<double>(model.n));
    double total = 0.0;
    for (const auto& counts : model.counts) total += cp_from_counts(counts, log2n);
    return total;
}

MdlScore mdl_score(const Partition& partition, const MarginalProductModel& model) {
    MdlScore score;
    score.c_m = model_complexity(partition, model.n);
    score.c_p = population_complexity(model);
    score.combined = score.c_m + score.c_p;
    return score;
}

namespace {

// Mutable group state during the greedy merge search.  Singletons carry a
// bit column over the population (one bit per member) so singleton pairs
// can be scored with word popcounts; larger groups carry a per-member
// sequence-index array.
struct SearchGroup {
    std::vector<std::uint32_t> loci;      // sorted ascending
    std::vector<std::uint64_t> column;    // singletons only
    std::vector<std::uint32_t> seq;       // k >= 2, or lazily for singletons
    std::vector<std::uint32_t> counts;    // canonical sequence order
    double cp = 0.0;
    std::uint32_t min_locus = 0;
    std::uint32_t k = 0;
};

const std::vector<std::uint32_t>& member_seq(SearchGroup& g, std::size_t n) {
    if (g.seq.empty()) {
        g.seq.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            g.seq[i] = static_cast<std::uint32_t>((g.column[i >> 6] >> (i & 63)) & 1u);
    }
    return g.seq;
}

}  // namespace

MarginalProductModel greedy_search(const Population& pop,
                                   const GreedySearchOptions& options) {
    const std::size_t n = pop.size();
    if (n == 0) throw std::invalid_argument("greedy_search: empty population");
    const std::size_t length = pop.genome_length();
    const double log2n = n >= 2 ? std::log2(static_cast<double>(n)) : 0.0;

    // Transpose the population into per-locus bit columns.
    const std::size_t col_words = (n + 63) / 64;
    std::vector<SearchGroup> groups;
    groups.reserve(2 * length);
    for (std::size_t locus = 0; locus < length; ++locus) {
        SearchGroup g;
        g.loci = {static_cast<std::uint32_t>(locus)};
        g.min_locus = static_cast<std::uint32_t>(locus);
        g.k = 1;
        g.column.assign(col_words, 0);
        std::uint32_t ones = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pop.members[i].genome.get(locus)) {
                g.column[i >> 6] |= std::uint64_t{1} << (i & 63);
                ++ones;
            }
        }
        g.counts = {static_cast<std::uint32_t>(n) - ones, ones};
        g.cp = cp_from_counts(g.counts, log2n);
        groups.push_back(std::move(g));
    }

    std::vector<std::uint32_t> order(length);  // alive ids, sorted by min locus
    for (std::size_t i = 0; i < length; ++i) order[i] = static_cast<std::uint32_t>(i);

    std::unordered_map<std::uint64_t, double> delta_cache;
    delta_cache.reserve(length * length / 2);
    std::vector<std::uint32_t> joint;  // scratch counts

    auto pair_delta = [&](std::uint32_t ida, std::uint32_t idb) -> double {
        SearchGroup& a = groups[ida];
        SearchGroup& b = groups[idb];
        const std::size_t kk = a.k + b.k;
        const double delta_cm = log2n * (pow2(kk) - pow2(a.k) - pow2(b.k) + 1.0);
        double cp_joint = 0.0;
        if (a.k == 1 && b.k == 1) {
            std::uint64_t c11 = 0;
            for (std::size_t w = 0; w < col_words; ++w)
                c11 += static_cast<std::uint64_t>(
                    std::popcount(a.column[w] & b.column[w]));
            const std::uint64_t a1 = a.counts[1], b1 = b.counts[1];
            const std::uint32_t quad[4] = {
                static_cast<std::uint32_t>(n - a1 - b1 + c11),
                static_cast<std::uint32_t>(b1 - c11),
                static_cast<std::uint32_t>(a1 - c11),
                static_cast<std::uint32_t>(c11)};
            cp_joint = cp_from_counts(quad, log2n);
        } else {
            const auto& sa = member_seq(a, n);
            const auto& sb = member_seq(b, n);
            joint.assign(std::size_t{1} << kk, 0);
            const std::uint32_t shift = b.k;
            for (std::size_t i = 0; i < n; ++i)
                ++joint[(sa[i] << shift) | sb[i]];
            cp_joint = cp_from_counts(joint, log2n);
        }
        return delta_cm + (cp_joint - a.cp - b.cp);
    };

    for (;;) {
        double best_delta = 0.0;
        std::size_t best_i = 0, best_j = 0;
        bool found = false;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                const std::uint32_t ida = order[i], idb = order[j];
                const std::size_t kk = groups[ida].k + groups[idb].k;
                if (options.max_group_size != 0 && kk > options.max_group_size) continue;
                if (kk > kMaxTableBits) continue;
                const std::uint64_t key = (static_cast<std::uint64_t>(ida) << 32) | idb;
                auto it = delta_cache.find(key);
                double delta;
                if (it != delta_cache.end()) {
                    delta = it->second;
                } else {
                    delta = pair_delta(ida, idb);
                    delta_cache.emplace(key, delta);
                }
                // Strict improvement; ties keep the earlier pair, which is
                // lexicographically smallest by group-minimum indices since
                // `order` is sorted by min locus.
                if (delta < best_delta) {
                    best_delta = delta;
                    best_i = i;
                    best_j = j;
                    found = true;
                }
            }
        }
        if (!found) break;

        const std::uint32_t ida = order[best_i], idb = order[best_j];
        SearchGroup merged;
        merged.loci.resize(groups[ida].loci.size() + groups[idb].loci.size());
        std::merge(groups[ida].loci.begin(), groups[ida].loci.end(),
                   groups[idb].loci.begin(), groups[idb].loci.end(),
                   merged.loci.begin());
        merged.k = static_cast<std::uint32_t>(merged.loci.size());
        merged.min_locus = merged.loci.front();
        merged.seq.resize(n);
        merged.counts.assign(std::size_t{1} << merged.k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t s = sequence_index(pop.members[i].genome, merged.loci);
            merged.seq[i] = s;
            ++merged.counts[s];
        }
        merged.cp = cp_from_counts(merged.counts, log2n);

        // Free the parents' per-member state; ids stay valid but unused.
        groups[ida] = SearchGroup{};
        groups[idb] = SearchGroup{};
        const std::uint32_t new_id = static_cast<std::uint32_t>(groups.size());
        groups.push_back(std::move(merged));
        // min locus of the union equals the earlier parent's key, so the
        // merged group takes best_i's slot and best_j's slot is removed.
        order[best_i] = new_id;
        order.erase(order.begin() + static_cast<std::ptrdiff_t>(best_j));
    }

    MarginalProductModel model;
    model.n = n;
    model.partition.groups.reserve(order.size());
    model.counts.reserve(order.size());
    double table_sizes = 0.0;
    double cp_total = 0.0;
    for (std::uint32_t id : order) {
        model.partition.groups.push_back(groups[id].loci);
        model.counts.push_back(groups[id].counts);
        table_sizes += pow2(groups[id].k) - 1.0;
        cp_total += groups[id].cp;
    }
    model.score.c_m = log2n * table_sizes;
    model.score.c_p = cp_total;
    model.score.combined = model.score.c_m + model.score.c_p;
    return model;
}

double partition_match(const Partition& found, const LinkageMap& truth) {
    std::set<std::vector<std::uint32_t>> found_groups;
    for (auto g : found.groups) {
        std::sort(g.begin(), g.end());
        found_groups.insert(std::move(g));
    }
    std::size_t matched = 0;
    for (auto g : truth.partitions) {
        std::sort(g.begin(), g.end());
        if (found_groups.count(g)) ++matched;
    }
    return static_cast<double>(matched) / static_cast<double>(truth.partitions.size());
}

bool partition_equals(const Partition& found, const LinkageMap& truth) {
    return found.groups.size() == truth.partitions.size() &&
           partition_match(found, truth) == 1.0;
}

std::string dump_model(const MarginalProductModel& model) {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < model.partition.groups.size(); ++i) {
        const auto& group = model.partition.groups[i];
        for (std::size_t j = 0; j < group.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%s%u", j == 0 ? "" : ",", group[j]);
            out += buf;
        }
        out += " :";
        for (std::uint32_t c : model.counts[i]) {
            std::snprintf(buf, sizeof buf, " %.17g",
                          static_cast<double>(c) / static_cast<double>(model.n));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace ecga
