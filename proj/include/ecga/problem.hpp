// problem.hpp — benchmark fitness functions with linkage ground truth.
//
// The m k-trap is additively separable: total fitness is the sum of a
// per-building-block table applied to each partition's unitation.  The
// table used here is the integer trap f(u) = k at u = k, else k-1-u, which
// is fully deceptive for k >= 2.  Onemax (f(u) = u) is included as a
// sanity baseline.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ecga/genome.hpp"

namespace ecga {

enum class Coding { tight, loose };
enum class ProblemKind { trap, onemax };

const char* to_string(Coding c);
const char* to_string(ProblemKind k);

// Ground-truth partition of {0..l-1} into m groups of k loci.
//   tight: group i = {i*k, ..., i*k + k - 1}
//   loose: group i = {i, i + m, ..., i + (k-1)*m}   (stride-m interleaving)
struct LinkageMap {
    std::vector<std::vector<std::uint32_t>> partitions;
    Coding coding = Coding::tight;
    std::size_t m = 0;
    std::size_t k = 0;

    std::size_t length() const { return m * k; }

    static LinkageMap make(std::size_t m, std::size_t k, Coding coding);
};

// sigma_bb: fitness std. dev. of one block under uniform random genomes
// (u ~ Binomial(k, 1/2), computed exactly from the table).
// d: signal, f(k) - f(0).
struct SignalStats {
    double sigma_bb = 0.0;
    double d = 0.0;
};

class ProblemInstance {
public:
    static ProblemInstance trap(std::size_t m, std::size_t k, Coding coding);
    static ProblemInstance onemax(std::size_t m, std::size_t k, Coding coding);

    double evaluate(const Genome& g) const;  // pure, no counting
    double evaluate_counted(const Genome& g, EvalCounter& counter) const {
        counter.increment();
        return evaluate(g);
    }

    // Partitions whose unitation equals k (block at its optimum).
    std::size_t correct_bbs(const Genome& g) const;

    SignalStats signal_stats() const;

    const LinkageMap& linkage() const { return linkage_; }
    ProblemKind kind() const { return kind_; }
    std::size_t m() const { return linkage_.m; }
    std::size_t k() const { return linkage_.k; }
    std::size_t length() const { return linkage_.length(); }
    double table(std::size_t u) const { return table_[u]; }
    double optimum() const;

private:
    ProblemInstance(LinkageMap linkage, ProblemKind kind, std::vector<double> table);

    LinkageMap linkage_;
    ProblemKind kind_;
    std::vector<double> table_;  // f(u), u = 0..k
    // Per-partition (word, mask) pairs for popcount-based unitation.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> masks_;
};

// n random genomes evaluated against `problem`; the counter increases by
// exactly n and each member's cached fitness matches its bits.
Population random_population(std::size_t n, std::size_t length, RandomSource& rng,
                             const ProblemInstance& problem, EvalCounter& counter);

}  // namespace ecga
