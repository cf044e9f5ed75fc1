#include <doctest.h>

#include <set>
#include <vector>

#include "ecga/genome.hpp"
#include "ecga/problem.hpp"
#include "ecga/random.hpp"

using namespace ecga;

TEST_CASE("random_population evaluates and counts exactly n members") {
    const ProblemInstance problem = ProblemInstance::trap(2, 4, Coding::tight);
    RandomSource rng(7);
    EvalCounter counter;
    const Population pop = random_population(4, 8, rng, problem, counter);
    CHECK(pop.size() == 4);
    CHECK(counter.count() == 4);
    for (const auto& member : pop.members) {
        CHECK(member.genome.length() == 8);
        CHECK(member.fitness == problem.evaluate(member.genome));
    }
}

TEST_CASE("random_population is bit-identical across equal seeds") {
    const ProblemInstance problem = ProblemInstance::trap(3, 4, Coding::loose);
    RandomSource a(123), b(123);
    EvalCounter ca, cb;
    const Population pa = random_population(32, 12, a, problem, ca);
    const Population pb = random_population(32, 12, b, problem, cb);
    for (std::size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa.members[i].genome == pb.members[i].genome);
        CHECK(pa.members[i].fitness == pb.members[i].fitness);
    }
}

TEST_CASE("random_population per-locus allele frequencies are near 1/2") {
    const ProblemInstance problem = ProblemInstance::onemax(100, 1, Coding::tight);
    RandomSource rng(99);
    EvalCounter counter;
    const std::size_t n = 10000;
    const Population pop = random_population(n, 100, rng, problem, counter);
    for (std::size_t locus = 0; locus < 100; ++locus) {
        std::size_t ones = 0;
        for (const auto& member : pop.members) ones += member.genome.get(locus);
        const double freq = static_cast<double>(ones) / static_cast<double>(n);
        CHECK(freq >= 0.45);
        CHECK(freq <= 0.55);
    }
}

TEST_CASE("random_population rejects degenerate sizes") {
    const ProblemInstance problem = ProblemInstance::trap(1, 2, Coding::tight);
    RandomSource rng(1);
    EvalCounter counter;
    CHECK_THROWS_AS(random_population(0, 2, rng, problem, counter),
                    std::invalid_argument);
    CHECK_THROWS_AS(random_population(4, 0, rng, problem, counter),
                    std::invalid_argument);
}

TEST_CASE("unitation counts 1-alleles over the given loci") {
    const std::vector<std::uint32_t> all{0, 1, 2, 3, 4};
    CHECK(unitation(Genome::from_string("00000"), all) == 0);
    CHECK(unitation(Genome::from_string("11111"), all) == 5);
    const std::vector<std::uint32_t> some{0, 2, 4};
    CHECK(unitation(Genome::from_string("10110"), some) == 2);
}

TEST_CASE("unitation flags contract violations") {
    const Genome g = Genome::from_string("10110");
    const std::vector<std::uint32_t> out_of_range{0, 5};
    CHECK_THROWS_AS(unitation(g, out_of_range), std::logic_error);
    const std::vector<std::uint32_t> repeated{1, 1};
    CHECK_THROWS_AS(unitation(g, repeated), std::logic_error);
}

TEST_CASE("unitation of a genome and its complement covers the locus set") {
    RandomSource rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t length = 1 + rng.below(70);
        const Genome g = Genome::random(length, rng);
        std::set<std::uint32_t> picked;
        const std::size_t want = 1 + rng.below(length);
        while (picked.size() < want)
            picked.insert(static_cast<std::uint32_t>(rng.below(length)));
        const std::vector<std::uint32_t> loci(picked.begin(), picked.end());
        CHECK(unitation(g, loci) + unitation(g.complemented(), loci) == loci.size());
    }
}

TEST_CASE("packed bit access matches the string form") {
    RandomSource rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t length = 1 + rng.below(200);
        const Genome g = Genome::random(length, rng);
        const std::string s = g.to_string();
        CHECK(Genome::from_string(s) == g);
        CHECK(g.popcount() ==
              static_cast<std::size_t>(std::count(s.begin(), s.end(), '1')));
    }
}

TEST_CASE("sequence_index and write_sequence are inverse, first locus high bit") {
    const std::vector<std::uint32_t> loci{1, 3, 4};
    Genome g(6);
    write_sequence(g, loci, 0b101);
    CHECK(g.get(1));
    CHECK_FALSE(g.get(3));
    CHECK(g.get(4));
    CHECK(sequence_index(g, loci) == 0b101);
    for (std::uint32_t seq = 0; seq < 8; ++seq) {
        write_sequence(g, loci, seq);
        CHECK(sequence_index(g, loci) == seq);
    }
}

TEST_CASE("RandomSource streams are reproducible and split streams differ") {
    RandomSource a(77), b(77);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    RandomSource base(77);
    RandomSource c1 = base.split(1), c2 = base.split(2);
    CHECK(c1.next_u64() != c2.next_u64());
    for (int i = 0; i < 1000; ++i) {
        RandomSource r(static_cast<std::uint64_t>(i));
        const std::uint64_t v = r.below(10);
        CHECK(v < 10);
    }
}

TEST_CASE("population best and uniform_fitness") {
    Population pop;
    pop.members = {{Genome::from_string("00"), 1.0},
                   {Genome::from_string("01"), 3.0},
                   {Genome::from_string("10"), 3.0},
                   {Genome::from_string("11"), 2.0}};
    CHECK(pop.best().genome == Genome::from_string("01"));  // first on ties
    CHECK_FALSE(pop.uniform_fitness());
    for (auto& m : pop.members) m.fitness = 5.0;
    CHECK(pop.uniform_fitness());
}
