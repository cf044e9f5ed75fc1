#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ecga/problem.hpp"

using namespace ecga;

namespace {

// Independent oracle: exact binomial moments of the per-block table.
SignalStats signal_stats_by_enumeration(std::size_t k, const ProblemInstance& p) {
    double mean = 0.0, second = 0.0;
    const double total = std::ldexp(1.0, static_cast<int>(k));
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << k); ++pattern) {
        const auto u = static_cast<std::size_t>(std::popcount(pattern));
        mean += p.table(u) / total;
        second += p.table(u) * p.table(u) / total;
    }
    SignalStats s;
    s.d = p.table(k) - p.table(0);
    s.sigma_bb = std::sqrt(second - mean * mean);
    return s;
}

}  // namespace

TEST_CASE("trap table follows f(u) = k at u = k else k-1-u") {
    const ProblemInstance trap = ProblemInstance::trap(1, 4, Coding::tight);
    CHECK(trap.table(4) == 4.0);
    CHECK(trap.table(0) == 3.0);
    CHECK(trap.table(3) == 0.0);
    CHECK_THROWS_AS(ProblemInstance::trap(2, 1, Coding::tight), std::invalid_argument);
}

TEST_CASE("trap fitness at the optimum and the deceptive attractor") {
    const ProblemInstance tight = ProblemInstance::trap(10, 4, Coding::tight);
    CHECK(tight.evaluate(Genome::from_string(std::string(40, '1'))) == 40.0);
    const ProblemInstance loose = ProblemInstance::trap(10, 4, Coding::loose);
    CHECK(loose.evaluate(Genome::from_string(std::string(40, '0'))) == 30.0);
    CHECK(loose.optimum() == 40.0);
}

TEST_CASE("loose coding interleaves loci with stride m") {
    const LinkageMap map = LinkageMap::make(3, 2, Coding::loose);
    CHECK(map.partitions[0] == std::vector<std::uint32_t>{0, 3});
    CHECK(map.partitions[1] == std::vector<std::uint32_t>{1, 4});
    CHECK(map.partitions[2] == std::vector<std::uint32_t>{2, 5});
    const LinkageMap tight = LinkageMap::make(3, 2, Coding::tight);
    CHECK(tight.partitions[2] == std::vector<std::uint32_t>{4, 5});
    // Disjoint cover.
    for (const auto& coding : {Coding::tight, Coding::loose}) {
        const LinkageMap m = LinkageMap::make(5, 3, coding);
        std::vector<bool> seen(15, false);
        for (const auto& g : m.partitions)
            for (auto locus : g) {
                CHECK_FALSE(seen[locus]);
                seen[locus] = true;
            }
        CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
    }
}

TEST_CASE("evaluate sums the per-block table over partition unitations") {
    const ProblemInstance loose = ProblemInstance::trap(2, 3, Coding::loose);
    // BB0 = {0,2,4} at unitation 3 -> 3; BB1 = {1,3,5} at 0 -> 2.
    CHECK(loose.evaluate(Genome::from_string("101010")) == 5.0);
    const ProblemInstance ones = ProblemInstance::onemax(3, 1, Coding::tight);
    CHECK(ones.evaluate(Genome::from_string("110")) == 2.0);
    CHECK_THROWS_AS(loose.evaluate(Genome::from_string("10")), std::invalid_argument);
}

TEST_CASE("correct_bbs counts partitions at their optimum") {
    const ProblemInstance trap = ProblemInstance::trap(3, 2, Coding::tight);
    CHECK(trap.correct_bbs(Genome::from_string("111111")) == 3);
    CHECK(trap.correct_bbs(Genome::from_string("000000")) == 0);
    CHECK(trap.correct_bbs(Genome::from_string("110011")) == 2);
}

TEST_CASE("correct_bbs = m exactly when fitness is optimal") {
    const ProblemInstance trap = ProblemInstance::trap(2, 3, Coding::loose);
    RandomSource rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Genome g = Genome::random(6, rng);
        const bool all = trap.correct_bbs(g) == 2;
        const bool optimal = trap.evaluate(g) == 6.0;
        CHECK(all == optimal);
    }
}

TEST_CASE("signal_stats matches exact binomial enumeration") {
    for (std::size_t k = 2; k <= 6; ++k) {
        const ProblemInstance trap = ProblemInstance::trap(1, k, Coding::tight);
        const SignalStats got = trap.signal_stats();
        const SignalStats expected = signal_stats_by_enumeration(k, trap);
        CHECK(got.d == expected.d);
        CHECK(got.sigma_bb == doctest::Approx(expected.sigma_bb).epsilon(1e-12));
        CHECK(got.sigma_bb > 0.0);
    }
    const ProblemInstance k4 = ProblemInstance::trap(1, 4, Coding::tight);
    CHECK(k4.signal_stats().d == 1.0);
    // k=2 trap: mean = (1*1 + 2*0 + 1*2)/4 = 0.75, var = 1.25 - 0.5625.
    const ProblemInstance k2 = ProblemInstance::trap(1, 2, Coding::tight);
    CHECK(k2.signal_stats().sigma_bb ==
          doctest::Approx(std::sqrt(1.25 - 0.75 * 0.75)).epsilon(1e-12));
}

TEST_CASE("trap is deceptive: single flips off all-zeros hurt, all-ones optimal") {
    for (std::size_t m = 1; m <= 3; ++m) {
        for (std::size_t k = 2; k <= 3; ++k) {
            const ProblemInstance trap = ProblemInstance::trap(m, k, Coding::loose);
            const std::size_t length = m * k;
            const Genome zeros(length);
            const double f0 = trap.evaluate(zeros);
            for (std::size_t i = 0; i < length; ++i) {
                Genome flipped = zeros;
                flipped.flip(i);
                CHECK(trap.evaluate(flipped) < f0);
            }
            // Exhaustive: all-ones is the unique global optimum.
            double best = -1.0;
            std::size_t argmax_count = 0;
            Genome best_genome(length);
            for (std::size_t bits = 0; bits < (std::size_t{1} << length); ++bits) {
                Genome g(length);
                for (std::size_t i = 0; i < length; ++i)
                    g.set(i, (bits >> i) & 1);
                const double f = trap.evaluate(g);
                if (f > best) {
                    best = f;
                    argmax_count = 1;
                    best_genome = g;
                } else if (f == best) {
                    ++argmax_count;
                }
            }
            CHECK(argmax_count == 1);
            CHECK(best_genome == Genome::from_string(std::string(length, '1')));
        }
    }
}

TEST_CASE("evaluate is invariant under within-partition permutations") {
    const ProblemInstance loose = ProblemInstance::trap(4, 3, Coding::loose);
    RandomSource rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const Genome g = Genome::random(12, rng);
        Genome permuted(12);
        for (const auto& part : loose.linkage().partitions) {
            std::vector<std::uint32_t> shuffled(part);
            shuffle(shuffled, rng);
            for (std::size_t j = 0; j < part.size(); ++j)
                permuted.set(shuffled[j], g.get(part[j]));
        }
        CHECK(loose.evaluate(permuted) == loose.evaluate(g));
    }
}

TEST_CASE("tight and loose codings agree under the induced locus permutation") {
    const ProblemInstance tight = ProblemInstance::trap(4, 3, Coding::tight);
    const ProblemInstance loose = ProblemInstance::trap(4, 3, Coding::loose);
    RandomSource rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const Genome g = Genome::random(12, rng);
        Genome mapped(12);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                mapped.set(loose.linkage().partitions[i][j],
                           g.get(tight.linkage().partitions[i][j]));
        CHECK(loose.evaluate(mapped) == tight.evaluate(g));
    }
}
