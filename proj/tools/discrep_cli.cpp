// Command-line surface: generate benchmark matrices, run the solvers, print
// spectral lower-bound reports, and sweep the benchmark table.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "discrep/bounds.hpp"
#include "discrep/coloring.hpp"
#include "discrep/edgewalk.hpp"
#include "discrep/instances.hpp"
#include "discrep/measures.hpp"

using json = nlohmann::ordered_json;
using namespace discrep;

namespace {

GeneratorKind parse_kind(const std::string& s) {
    if (s == "uniform") return GeneratorKind::Uniform;
    if (s == "corner") return GeneratorKind::Corner2D;
    if (s == "halfspace") return GeneratorKind::Halfspace2D;
    throw CLI::ValidationError("--kind", "must be one of uniform, corner, halfspace");
}

std::string kind_name(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::Uniform: return "uniform";
        case GeneratorKind::Corner2D: return "corner";
        case GeneratorKind::Halfspace2D: return "halfspace";
    }
    return "?";
}

std::string format_coloring(const std::vector<double>& x, bool exact_signs) {
    std::string out;
    char buf[40];
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) out += ',';
        if (exact_signs)
            out += x[i] > 0 ? "1" : "-1";
        else {
            std::snprintf(buf, sizeof buf, "%.17g", x[i]);
            out += buf;
        }
    }
    return out;
}

struct SolveOutput {
    std::vector<double> coloring;
    bool exact_signs = true;
    double disc2 = 0.0;
    double disc_inf = 0.0;
    double time_ms = 0.0;
    int partial_color_calls = 0;
};

SolveOutput run_algorithm(const std::string& algo, const DenseMatrix& a, uint64_t seed,
                          std::optional<double> budget_ms) {
    Rng rng(seed);
    SolveOutput out;
    const auto to_ms = [](double seconds) { return seconds * 1000.0; };

    if (algo == "l2min") {
        const auto [x, stats] = l2_minimize(a, rng);
        out = {x.values, true, stats.disc2, stats.disc_inf, to_ms(stats.wall_time),
               stats.partial_color_calls};
    } else if (algo == "l2min-rand") {
        const auto [x, stats] = l2_minimize_randomized(a, rng);
        out = {x.values, true, stats.disc2, stats.disc_inf, to_ms(stats.wall_time),
               stats.partial_color_calls};
    } else if (algo == "sample") {
        const auto [x, stats] = sample(a, rng);
        out = {x.values, true, stats.disc2, stats.disc_inf, to_ms(stats.wall_time), 0};
    } else if (algo == "samplemany") {
        double budget = 0.0;
        if (budget_ms) {
            budget = *budget_ms / 1000.0;
        } else {
            // No explicit budget: give it the wall time of l2min on this matrix.
            Rng timing_rng(seed);
            const auto [ignored, ref_stats] = l2_minimize(a, timing_rng);
            budget = ref_stats.wall_time;
        }
        const auto [x, stats] = sample_many(a, std::chrono::duration<double>(budget), rng);
        out = {x.values, true, stats.disc2, stats.disc_inf, to_ms(stats.wall_time), 0};
    } else if (algo == "edgewalk") {
        const auto t0 = std::chrono::steady_clock::now();
        const PartialColoring coloring = spencer_driver(a, rng);
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out = {coloring.x, false, disc_l2(a, coloring.x), disc_inf(a, coloring.x), to_ms(dt), 0};
    } else {
        throw CLI::ValidationError("--algo",
                                   "must be one of l2min, l2min-rand, sample, samplemany, edgewalk");
    }
    return out;
}

json bound_report_json(const BoundReport& rep) {
    json j;
    j["m"] = rep.m;
    j["n"] = rep.n;
    j["eigenvalues"] = rep.eigenvalues;
    auto pairs = [](const std::vector<std::pair<int, double>>& v) {
        json arr = json::array();
        for (const auto& [k, b] : v) arr.push_back({{"k", k}, {"bound", b}});
        return arr;
    };
    j["per_k_inf"] = pairs(rep.per_k_inf);
    j["per_k_inf_prod"] = pairs(rep.per_k_inf_prod);
    j["per_k_l2"] = pairs(rep.per_k_l2);
    j["trace_bound"] = rep.trace_bound;
    if (rep.det_bound_l2)
        j["det_bound_l2"] = *rep.det_bound_l2;
    else
        j["det_bound_l2"] = nullptr;
    j["best_inf"] = rep.best_inf;
    j["best_l2"] = rep.best_l2;
    return j;
}

struct BenchRecord {
    std::string algorithm;
    std::string kind;
    int m, n, trial;
    uint64_t seed;
    double disc2, disc_inf, time_ms;
};

int cmd_bench(const std::vector<std::string>& sizes, const std::vector<std::string>& kinds,
              int trials, uint64_t base_seed, const std::vector<std::string>& algos,
              std::optional<double> budget_ms, const std::string& out_path) {
    std::vector<std::pair<int, int>> parsed_sizes;
    for (const auto& s : sizes) {
        const auto x = s.find('x');
        if (x == std::string::npos) throw CLI::ValidationError("--sizes", "expected MxN");
        const int m = std::stoi(s.substr(0, x));
        const int n = std::stoi(s.substr(x + 1));
        if (m < 1 || n < 1) throw CLI::ValidationError("--sizes", "dimensions must be positive");
        parsed_sizes.emplace_back(m, n);
    }

    std::vector<BenchRecord> records;
    for (const auto& kind_str : kinds) {
        const GeneratorKind kind = parse_kind(kind_str);
        for (const auto& [m, n] : parsed_sizes) {
            for (int trial = 0; trial < trials; ++trial) {
                const uint64_t seed = base_seed + static_cast<uint64_t>(trial);
                const DenseMatrix a = generate({kind, m, n, seed});

                // l2min first: its wall time is the samplemany budget.
                std::map<std::string, SolveOutput> runs;
                std::optional<double> matched_budget = budget_ms;
                for (const auto& algo : algos) {
                    if (algo == "samplemany" && !matched_budget && runs.count("l2min")) {
                        runs[algo] = run_algorithm(algo, a, seed, runs["l2min"].time_ms);
                    } else {
                        runs[algo] = run_algorithm(algo, a, seed,
                                                   algo == "samplemany" ? matched_budget
                                                                        : std::nullopt);
                    }
                }
                for (const auto& algo : algos) {
                    const auto& r = runs[algo];
                    records.push_back(
                        {algo, kind_str, m, n, trial, seed, r.disc2, r.disc_inf, r.time_ms});
                }
            }
        }
    }

    std::string csv = "algorithm,kind,m,n,trial,seed,disc2,disc_inf,time_ms\n";
    char buf[160];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%s,%d,%d,%d,%llu,%.17g,%.17g,%.6g\n",
                      r.algorithm.c_str(), r.kind.c_str(), r.m, r.n, r.trial,
                      static_cast<unsigned long long>(r.seed), r.disc2, r.disc_inf, r.time_ms);
        csv += buf;
    }
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        f << csv;
    }

    // Summary of means in the layout of the benchmark table: one line per
    // (algorithm, size), one discrepancy column per matrix kind.
    std::cout << "\n";
    std::printf("%-12s %-12s", "algorithm", "size");
    for (const auto& kind : kinds) std::printf(" %12s", ("disc2:" + kind).c_str());
    std::printf(" %12s\n", "time_ms");
    for (const auto& algo : algos) {
        for (const auto& [m, n] : parsed_sizes) {
            std::printf("%-12s %-12s", algo.c_str(), (std::to_string(m) + "x" + std::to_string(n)).c_str());
            double time_sum = 0.0;
            int time_count = 0;
            for (const auto& kind : kinds) {
                double sum = 0.0;
                int count = 0;
                for (const auto& r : records)
                    if (r.algorithm == algo && r.kind == kind && r.m == m && r.n == n) {
                        sum += r.disc2;
                        time_sum += r.time_ms;
                        ++count;
                        ++time_count;
                    }
                std::printf(" %12.3f", count ? sum / count : 0.0);
            }
            std::printf(" %12.3f\n", time_count ? time_sum / time_count : 0.0);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrepancy minimization toolkit: matrix generators, coloring solvers, and "
                 "spectral lower bounds"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a benchmark matrix and write it as CSV");
    std::string gen_kind = "uniform", gen_out;
    int gen_rows = 0, gen_cols = 0;
    uint64_t gen_seed = 0;
    gen->add_option("--kind", gen_kind, "uniform | corner | halfspace")->required();
    gen->add_option("--rows", gen_rows, "row count")->required()->check(CLI::PositiveNumber);
    gen->add_option("--cols", gen_cols, "column count")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "generator seed (default 0)");
    gen->add_option("--out", gen_out, "output CSV path")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "Color a matrix and print the coloring plus stats");
    std::string solve_algo = "l2min", solve_matrix;
    uint64_t solve_seed = 0;
    double solve_budget_ms = -1.0;
    solve->add_option("--algo", solve_algo, "l2min | l2min-rand | sample | samplemany | edgewalk");
    solve->add_option("--matrix", solve_matrix, "input CSV matrix")->required();
    solve->add_option("--seed", solve_seed, "solver seed (default 0)");
    solve->add_option("--budget-ms", solve_budget_ms, "samplemany budget; defaults to l2min's time");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Print the spectral lower-bound report as JSON");
    std::string bounds_matrix;
    bool bounds_exact = false;
    int exact_max_n = 14;
    bounds->add_option("--matrix", bounds_matrix, "input CSV matrix")->required();
    bounds->add_flag("--exact", bounds_exact,
                     "also run the exponential exact hereditary oracle and assert soundness");
    bounds->add_option("--exact-max-n", exact_max_n, "column cap for --exact (default 14)");

    // bench
    auto* bench = app.add_subcommand("bench", "Sweep (kind, size, algorithm, trial) and report means");
    std::vector<std::string> bench_sizes{"200x200"};
    std::string bench_kinds = "uniform,corner,halfspace";
    std::string bench_algos = "l2min,sample,samplemany";
    int bench_trials = 10;
    uint64_t bench_seed = 0;
    double bench_budget_ms = -1.0;
    std::string bench_out;
    bench->add_option("--sizes", bench_sizes, "comma-free list like 200x200 1000x1000")
        ->delimiter(',');
    bench->add_option("--kinds", bench_kinds, "subset of uniform,corner,halfspace");
    bench->add_option("--algos", bench_algos, "subset of l2min,l2min-rand,sample,samplemany,edgewalk");
    bench->add_option("--trials", bench_trials, "trials per cell (default 10)")
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_seed, "base seed; trial t uses seed + t");
    bench->add_option("--budget-ms", bench_budget_ms, "fixed samplemany budget");
    bench->add_option("--out", bench_out, "write the record CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            const GeneratorKind kind = parse_kind(gen_kind);
            const DenseMatrix a = generate({kind, gen_rows, gen_cols, gen_seed});
            write_matrix_csv(a, gen_out);
            std::cout << "rows=" << gen_rows << " cols=" << gen_cols << " kind=" << kind_name(kind)
                      << " seed=" << gen_seed << " out=" << gen_out << "\n";
            return 0;
        }

        if (solve->parsed()) {
            const DenseMatrix a = read_matrix_csv(solve_matrix);
            const std::optional<double> budget =
                solve_budget_ms >= 0.0 ? std::optional<double>(solve_budget_ms) : std::nullopt;
            const SolveOutput out = run_algorithm(solve_algo, a, solve_seed, budget);
            std::cout << format_coloring(out.coloring, out.exact_signs) << "\n";
            json stats;
            stats["algorithm"] = solve_algo;
            stats["m"] = a.rows();
            stats["n"] = a.cols();
            stats["seed"] = solve_seed;
            stats["disc2"] = out.disc2;
            stats["disc_inf"] = out.disc_inf;
            stats["time_ms"] = out.time_ms;
            stats["partial_color_calls"] = out.partial_color_calls;
            std::cout << stats.dump() << "\n";
            return 0;
        }

        if (bounds->parsed()) {
            const DenseMatrix a = read_matrix_csv(bounds_matrix);
            const BoundReport rep = bound_report(a);
            json j = bound_report_json(rep);
            if (bounds_exact) {
                if (a.cols() > exact_max_n)
                    throw TooLarge("--exact requested but n exceeds --exact-max-n");
                const double her_inf = herdisc_exact(a, NormKind::LInfinity, exact_max_n);
                const double her_l2 = herdisc_exact(a, NormKind::L2, exact_max_n);
                j["herdisc_exact_inf"] = her_inf;
                j["herdisc_exact_l2"] = her_l2;
                std::cout << j.dump() << "\n";
                if (rep.best_inf > her_inf + 1e-9 || rep.best_l2 > her_l2 + 1e-9) {
                    std::cerr << "soundness violation: a bound exceeds the exact hereditary "
                                 "discrepancy (implementation bug)\n";
                    return 1;
                }
                return 0;
            }
            std::cout << j.dump() << "\n";
            return 0;
        }

        if (bench->parsed()) {
            auto split = [](const std::string& s) {
                std::vector<std::string> parts;
                size_t start = 0;
                while (start <= s.size()) {
                    const size_t comma = s.find(',', start);
                    if (comma == std::string::npos) {
                        if (start < s.size()) parts.push_back(s.substr(start));
                        break;
                    }
                    if (comma > start) parts.push_back(s.substr(start, comma - start));
                    start = comma + 1;
                }
                return parts;
            };
            const std::optional<double> budget =
                bench_budget_ms >= 0.0 ? std::optional<double>(bench_budget_ms) : std::nullopt;
            return cmd_bench(bench_sizes, split(bench_kinds), bench_trials, bench_seed,
                             split(bench_algos), budget, bench_out);
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
