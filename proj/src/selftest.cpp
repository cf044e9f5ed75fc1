#include "ecga/selftest.hpp"

#include <cmath>
#include <cstdio>

#include "ecga/bbm.hpp"
#include "ecga/harness.hpp"
#include "ecga/mpm.hpp"
#include "ecga/problem.hpp"

namespace ecga {

namespace {

SelfCheck check_near(const std::string& name, double actual, double expected,
                     double tolerance) {
    SelfCheck check{name, std::fabs(actual - expected) <= tolerance, ""};
    if (!check.passed) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "expected %.12g, got %.12g", expected, actual);
        check.detail = buf;
    }
    return check;
}

SelfCheck check_true(const std::string& name, bool ok, const std::string& detail) {
    return SelfCheck{name, ok, ok ? "" : detail};
}

Population population_of(const std::vector<std::string>& bits,
                         const std::vector<double>& fitness) {
    Population pop;
    for (std::size_t i = 0; i < bits.size(); ++i)
        pop.members.push_back({Genome::from_string(bits[i]), fitness[i]});
    return pop;
}

}  // namespace

std::vector<SelfCheck> run_selftests() {
    std::vector<SelfCheck> checks;

    // C_m over a 4-bit partition {0,2}{1}{3} with n = 16: 4 * (3+1+1) = 20.
    {
        Partition p;
        p.groups = {{0, 2}, {1}, {3}};
        checks.push_back(check_near("model_complexity [0,2][1][3] n=16",
                                    model_complexity(p, 16), 20.0, 0.0));
    }
    // One group of 3 loci, n = 8: 3 * 7 = 21.
    {
        Partition p;
        p.groups = {{0, 1, 2}};
        checks.push_back(check_near("model_complexity [0,1,2] n=8",
                                    model_complexity(p, 8), 21.0, 0.0));
    }
    // C_p of a (0.5, 0.5) group with n = 20 is 20 bits.
    {
        MarginalProductModel model;
        model.partition.groups = {{0}};
        model.counts = {{10, 10}};
        model.n = 20;
        checks.push_back(check_near("population_complexity p=(.5,.5) n=20",
                                    population_complexity(model), 20.0, 1e-9));
    }
    // Greedy merge adopted: 4x"11" + 4x"00"; totals 22 (singletons) vs 17.
    {
        Population pop = population_of({"11", "11", "11", "11", "00", "00", "00", "00"},
                                       {0, 0, 0, 0, 0, 0, 0, 0});
        const MarginalProductModel model = greedy_search(pop);
        const bool merged = model.partition.groups.size() == 1 &&
                            model.partition.groups[0] ==
                                std::vector<std::uint32_t>{0, 1};
        checks.push_back(check_true("greedy merge adopted at 17 < 22",
                                    merged && model.score.combined == 17.0,
                                    "expected single group {0,1} at 17 bits"));
    }
    // Greedy merge rejected: two copies each of 00,01,10,11; 25 > 22.
    {
        Population pop = population_of({"00", "00", "01", "01", "10", "10", "11", "11"},
                                       {0, 0, 0, 0, 0, 0, 0, 0});
        const MarginalProductModel model = greedy_search(pop);
        checks.push_back(check_true("greedy merge rejected at 25 > 22",
                                    model.partition.groups.size() == 2 &&
                                        model.score.combined == 22.0,
                                    "expected all singletons at 22 bits"));
    }
    // Hand trace: tight 2x2 trap from 0000 climbs to 1111 in 6 evaluations.
    {
        const ProblemInstance trap = ProblemInstance::trap(2, 2, Coding::tight);
        EvaluatedGenome start{Genome::from_string("0000"), 0.0};
        start.fitness = trap.evaluate(start.genome);
        Partition truth;
        truth.groups = {{0, 1}, {2, 3}};
        EvalCounter counter;
        const EvaluatedGenome end = bbwise_hillclimb(start, truth, trap, counter);
        checks.push_back(check_true(
            "bbwise hand trace 0000 -> 1111, 6 evals",
            end.genome == Genome::from_string("1111") && counter.count() == 6,
            "expected 1111 after 6 evaluations"));
    }
    // Synthetic bisection oracle: success iff n >= 104, s = 8, start 16.
    {
        BisectionConfig cfg;
        cfg.n_start = 16;
        const BisectionResult r =
            bisect_generic([](std::size_t n) { return n >= 104; }, cfg, 8);
        checks.push_back(check_true("bisection oracle converges to 104",
                                    r.sized && r.n_star == 104,
                                    "expected n* = 104"));
    }
    // Trap table spot values for k = 4.
    {
        const ProblemInstance trap = ProblemInstance::trap(1, 4, Coding::tight);
        const bool ok = trap.table(4) == 4.0 && trap.table(0) == 3.0 &&
                        trap.table(3) == 0.0;
        checks.push_back(check_true("trap table k=4: f(4)=4 f(0)=3 f(3)=0", ok,
                                    "trap table mismatch"));
    }
    return checks;
}

}  // namespace ecga
