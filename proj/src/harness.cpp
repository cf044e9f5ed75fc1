#include "ecga/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ecga {

const char* to_string(Algorithm a) { return a == Algorithm::ecga ? "ecga" : "bbm"; }

ProblemInstance ProblemConfig::make() const {
    return kind == ProblemKind::trap ? ProblemInstance::trap(m, k, coding)
                                     : ProblemInstance::onemax(m, k, coding);
}

void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const std::size_t workers = std::min(std::max<std::size_t>(jobs, 1), count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(body);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

RunStats run_once(Algorithm algorithm, const ProblemConfig& problem,
                  const AlgorithmConfig& algo, std::size_t n, std::uint64_t seed) {
    const ProblemInstance instance = problem.make();
    RandomSource rng(seed);
    RunStats stats;
    if (algorithm == Algorithm::ecga) {
        EcgaConfig cfg;
        cfg.population_size = n;
        cfg.selection = algo.selection;
        cfg.max_generations = algo.max_generations;
        cfg.model = algo.model;
        const RunReport report = run_ecga(instance, cfg, rng);
        stats.nfe = report.evaluations;
        stats.correct_bbs = report.correct_bbs;
    } else {
        BbmConfig cfg;
        cfg.population_size = n;
        cfg.selection = algo.selection;
        cfg.model = algo.model;
        const BbmReport report = run_bbm(instance, cfg, rng);
        stats.nfe = report.evaluations_model + report.evaluations_mutation;
        stats.correct_bbs = report.correct_bbs;
    }
    stats.success = stats.correct_bbs + 1 >= problem.m;
    return stats;
}

BisectionResult bisect_generic(const std::function<bool(std::size_t)>& success,
                               const BisectionConfig& cfg, std::size_t multiple) {
    if (multiple == 0 || cfg.n_start == 0 || cfg.n_cap < cfg.n_start ||
        cfg.tolerance <= 0.0)
        throw std::invalid_argument("bisect: bad configuration");

    const auto round_up = [&](std::size_t n) {
        return ((n + multiple - 1) / multiple) * multiple;
    };

    BisectionResult result;
    auto probe = [&](std::size_t n) {
        const bool ok = success(n);
        result.probes.push_back({n, ok});
        return ok;
    };

    // Phase 1: double until the success rule holds.
    std::size_t n = round_up(cfg.n_start);
    if (probe(n)) {
        result.n_star = n;
        result.sized = true;
        return result;
    }
    std::size_t n_lo = n;
    std::size_t n_hi = 0;
    for (;;) {
        n *= 2;
        if (n > cfg.n_cap) return result;  // sizing failure, not a crash
        if (probe(n)) {
            n_hi = n;
            break;
        }
        n_lo = n;
    }

    // Phase 2: bisect [n_lo, n_hi] on multiples of `multiple`.
    while (static_cast<double>(n_hi - n_lo) / static_cast<double>(n_hi) >
           cfg.tolerance) {
        const std::size_t mid = ((n_lo + n_hi) / 2 / multiple) * multiple;
        if (mid <= n_lo || mid >= n_hi) break;
        if (probe(mid))
            n_hi = mid;
        else
            n_lo = mid;
    }
    result.n_star = n_hi;
    result.sized = true;
    return result;
}

namespace {

// Success of one probed population size: r runs, seeds split from the cell
// seed, judged by the configured rule.  Exact integer comparison for the
// mean rule: sum of correct BBs >= r * (m - 1).
bool probe_success(Algorithm algorithm, const ProblemConfig& problem,
                   const AlgorithmConfig& algo, const BisectionConfig& cfg,
                   std::uint64_t cell_seed, std::size_t n, std::size_t jobs) {
    std::vector<RunStats> stats(cfg.runs);
    parallel_for(cfg.runs, jobs, [&](std::size_t i) {
        stats[i] = run_once(algorithm, problem, algo, n,
                            derive_seed(cell_seed, 1, n, i));
    });
    if (cfg.rule == SuccessRule::mean_bbs) {
        std::size_t total = 0;
        for (const auto& s : stats) total += s.correct_bbs;
        return total >= cfg.runs * (problem.m - 1);
    }
    std::size_t successes = 0;
    for (const auto& s : stats) successes += s.success ? 1 : 0;
    return static_cast<double>(successes) >=
           cfg.run_fraction * static_cast<double>(cfg.runs);
}

}  // namespace

BisectionResult bisect_population(Algorithm algorithm, const ProblemConfig& problem,
                                  const AlgorithmConfig& algo,
                                  const BisectionConfig& cfg,
                                  std::uint64_t master_seed, std::size_t jobs) {
    const std::uint64_t cell_seed = derive_seed(
        master_seed, static_cast<std::uint64_t>(algorithm), problem.m, problem.k);
    const std::size_t s = algo.selection.tournament_size;
    BisectionConfig local = cfg;
    // eCGA requires n >= 2s; start within the valid range.
    if (algorithm == Algorithm::ecga) local.n_start = std::max(local.n_start, 2 * s);
    else local.n_start = std::max(local.n_start, s);
    return bisect_generic(
        [&](std::size_t n) {
            return probe_success(algorithm, problem, algo, cfg, cell_seed, n, jobs);
        },
        local, s);
}

std::vector<SweepRecord> sweep(Algorithm algorithm, ProblemKind kind, Coding coding,
                               std::size_t k, const std::vector<std::size_t>& m_list,
                               std::size_t seeds, const AlgorithmConfig& algo,
                               const BisectionConfig& bisect, std::uint64_t master_seed,
                               std::size_t jobs) {
    if (m_list.empty()) throw std::invalid_argument("sweep: empty m list");
    std::vector<SweepRecord> records;
    records.reserve(m_list.size());
    for (std::size_t m : m_list) {
        ProblemConfig problem{kind, m, k, coding};
        SweepRecord rec;
        rec.algorithm = algorithm;
        rec.m = m;
        rec.k = k;
        rec.seeds = seeds;

        const BisectionResult sized =
            bisect_population(algorithm, problem, algo, bisect, master_seed, jobs);
        rec.sized = sized.sized;
        rec.n_star = sized.n_star;
        if (sized.sized) {
            const std::uint64_t cell_seed = derive_seed(
                master_seed, static_cast<std::uint64_t>(algorithm), m, k);
            std::vector<RunStats> stats(seeds);
            parallel_for(seeds, jobs, [&](std::size_t i) {
                stats[i] = run_once(algorithm, problem, algo, sized.n_star,
                                    derive_seed(cell_seed, 2, 0, i));
            });
            double mean = 0.0;
            std::size_t successes = 0;
            for (const auto& s : stats) {
                mean += static_cast<double>(s.nfe);
                successes += s.success ? 1 : 0;
            }
            mean /= static_cast<double>(seeds);
            double ss = 0.0;
            for (const auto& s : stats) {
                const double d = static_cast<double>(s.nfe) - mean;
                ss += d * d;
            }
            rec.nfe_mean = mean;
            rec.nfe_sd =
                seeds > 1 ? std::sqrt(ss / static_cast<double>(seeds - 1)) : 0.0;
            rec.success_rate =
                static_cast<double>(successes) / static_cast<double>(seeds);
        }
        records.push_back(rec);
    }
    return records;
}

FitResult fit_power_law(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_power_law needs at least 3 points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("fit_power_law needs strictly positive values");
        sx += std::log(x);
        sy += std::log(y);
    }
    const double count = static_cast<double>(points.size());
    const double mx = sx / count, my = sy / count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mx;
        const double dy = std::log(y) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    FitResult fit;
    if (sxx == 0.0)
        throw std::invalid_argument("fit_power_law: all x equal");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    const double ss_res = syy - fit.slope * sxy;
    if (syy > 0.0)
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    else
        fit.r_squared = 1.0;  // constant y fitted exactly by slope 0
    return fit;
}

std::vector<SpeedupCell> speedup_table(std::span<const SweepRecord> ecga_records,
                                       std::span<const SweepRecord> bbm_records) {
    if (ecga_records.size() != bbm_records.size())
        throw std::invalid_argument("speedup_table: cell counts differ");
    std::vector<SpeedupCell> cells;
    cells.reserve(ecga_records.size());
    for (const auto& e : ecga_records) {
        const SweepRecord* match = nullptr;
        for (const auto& b : bbm_records)
            if (b.m == e.m && b.k == e.k) {
                match = &b;
                break;
            }
        if (match == nullptr)
            throw std::invalid_argument("speedup_table: no matching (m, k) cell");
        cells.push_back({e.m, e.k, speedup(e.nfe_mean, match->nfe_mean)});
    }
    return cells;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string sweep_csv(std::span<const SweepRecord> records) {
    std::string out = "algorithm,m,k,n_star,nfe_mean,nfe_sd,success_rate,seeds\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%zu,%.6f,%.6f,%.6f,%zu\n",
                      to_string(r.algorithm), r.m, r.k, r.n_star, r.nfe_mean,
                      r.nfe_sd, r.success_rate, r.seeds);
        out += buf;
    }
    return out;
}

std::vector<SweepRecord> parse_sweep_csv(const std::string& text) {
    std::vector<SweepRecord> records;
    std::istringstream stream(text);
    std::string line;
    if (!std::getline(stream, line) ||
        line != "algorithm,m,k,n_star,nfe_mean,nfe_sd,success_rate,seeds")
        throw std::invalid_argument("sweep CSV: bad or missing header");
    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        SweepRecord r;
        std::getline(row, field, ',');
        if (field == "ecga")
            r.algorithm = Algorithm::ecga;
        else if (field == "bbm")
            r.algorithm = Algorithm::bbm;
        else
            throw std::invalid_argument("sweep CSV: unknown algorithm " + field);
        std::getline(row, field, ',');
        r.m = std::stoul(field);
        std::getline(row, field, ',');
        r.k = std::stoul(field);
        std::getline(row, field, ',');
        r.n_star = std::stoul(field);
        std::getline(row, field, ',');
        r.nfe_mean = std::stod(field);
        std::getline(row, field, ',');
        r.nfe_sd = std::stod(field);
        std::getline(row, field, ',');
        r.success_rate = std::stod(field);
        if (!std::getline(row, field, ','))
            throw std::invalid_argument("sweep CSV: short row");
        r.seeds = std::stoul(field);
        r.sized = r.n_star != 0;
        records.push_back(r);
    }
    return records;
}

std::string fit_csv(std::span<const NamedFit> fits) {
    std::string out = "quantity,x_variable,slope,intercept,r_squared\n";
    for (const auto& f : fits) {
        out += f.quantity;
        out += ',';
        out += f.x_variable;
        out += ',';
        out += format_double(f.fit.slope);
        out += ',';
        out += format_double(f.fit.intercept);
        out += ',';
        out += format_double(f.fit.r_squared);
        out += '\n';
    }
    return out;
}

std::string speedup_csv(std::span<const SpeedupCell> cells) {
    std::string out = "m,k,eta\n";
    char buf[128];
    for (const auto& c : cells) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.6f\n", c.m, c.k, c.eta);
        out += buf;
    }
    return out;
}

std::string plot_script(const std::string& ecga_csv, const std::string& bbm_csv,
                        const std::string& speedup_csv_path) {
    std::string out;
    out += "# gnuplot script; run from the directory holding the CSV files.\n";
    out += "set datafile separator ','\n";
    out += "set key autotitle columnhead\n";
    out += "set key left top\n";
    out += "set logscale xy\n";
    out += "set xlabel 'number of building blocks m'\n";
    out += "set term pngcairo size 900,600\n";
    if (!ecga_csv.empty()) {
        out += "\nset output 'fig1_population_size.png'\n";
        out += "set ylabel 'population size n*'\n";
        out += "plot '" + ecga_csv + "' using 2:4 with linespoints title 'eCGA n*'\n";
        out += "\nset output 'fig1_function_evaluations.png'\n";
        out += "set ylabel 'function evaluations'\n";
        out += "plot '" + ecga_csv +
               "' using 2:5 with linespoints title 'eCGA evaluations'\n";
    }
    if (!bbm_csv.empty()) {
        out += "\nset output 'fig2_population_size.png'\n";
        out += "set ylabel 'population size n*'\n";
        out += "plot '" + bbm_csv +
               "' using 2:4 with linespoints title 'BB-wise mutation n*'\n";
        out += "\nset output 'fig2_function_evaluations.png'\n";
        out += "set ylabel 'function evaluations'\n";
        out += "plot '" + bbm_csv +
               "' using 2:5 with linespoints title 'BB-wise mutation evaluations'\n";
    }
    if (!speedup_csv_path.empty()) {
        out += "\nset output 'fig3_speedup.png'\n";
        out += "unset logscale\n";
        out += "set logscale x\n";
        out += "set ylabel 'speedup eta'\n";
        out += "plot '" + speedup_csv_path +
               "' using 1:3 with linespoints title 'eta = nfe(eCGA)/nfe(BBM)'\n";
    }
    return out;
}

}  // namespace ecga
