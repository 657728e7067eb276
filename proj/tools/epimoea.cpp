// Command-line front end: run experiments, render reports, list problems.

#include "epimoea/errors.hpp"
#include "epimoea/harness/config.hpp"
#include "epimoea/harness/report.hpp"
#include "epimoea/harness/runner.hpp"
#include "epimoea/problems.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>

namespace fs = std::filesystem;
using namespace epimoea;
using namespace epimoea::harness;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) {
        throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    }
}

void print_plan(const ExperimentConfig& cfg)
{
    const auto plan = plan_protocol(cfg);
    std::set<double> distinct(plan.times.begin(), plan.times.end());
    fmt::print("fingerprint        {}\n", cfg.fingerprint());
    fmt::print("generations        {}\n", plan.generations);
    fmt::print("per cycle          {}\n", plan.generations_per_cycle);
    fmt::print("cycles             {}\n", plan.cycles);
    fmt::print("intervals per run  {} (interval {})\n", plan.intervals, cfg.interval);
    fmt::print("time steps         {} (tau_t {}, n_t {}, period {})\n", distinct.size(), cfg.time.tau_t, cfg.time.n_t, cfg.time_period);
    fmt::print("time values        {}\n", fmt::join(distinct, " "));
    fmt::print("offspring evals    {} per run\n", plan.evaluations_per_run);
    fmt::print("runs               {} ({} problems x {} variants x {})\n", plan.total_runs, cfg.problems.size(), cfg.variants.size(), cfg.runs);
}

bool has_comparison(const std::vector<RunRecord>& records)
{
    bool base = false;
    bool other = false;
    for (const auto& r : records) {
        (r.variant == BlockingVariant::Off ? base : other) = true;
    }
    return base && other;
}

void write_summary(const fs::path& dir, const std::vector<RunRecord>& records, std::size_t interval)
{
    const auto summary = render_summary(records, interval);
    write_text(dir / "summary.csv", format_summary_csv(summary));
    fmt::print("\n{}", format_summary_table(summary));
    fmt::print("summary written to {}\n", (dir / "summary.csv").string());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dynamic multi-objective benchmark harness for MOEA/D-DE with epigenetic blocking"};
    app.require_subcommand(1);

    std::string config_file;
    std::string preset;
    std::size_t jobs = 1;
    std::string out_dir;
    bool common_seeds = false;
    bool dry_run = false;
    auto* run = app.add_subcommand("run", "Run an experiment and persist its traces");
    run->add_option("--config", config_file, "Flat key = value config file")->check(CLI::ExistingFile);
    run->add_option("--preset", preset, "Base settings applied before the config file")->check(CLI::IsMember({"desk", "paper"}));
    run->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
    run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    run->add_flag("--common-seeds", common_seeds, "Share run seeds across variants");
    run->add_flag("--dry-run", dry_run, "Print the protocol timeline and exit");

    std::string in_dir;
    std::string problem;
    std::string variant;
    auto* report = app.add_subcommand("report", "Summarize a finished (or partial) experiment");
    report->add_option("--in", in_dir, "Experiment directory")->required();
    report->add_option("--problem", problem, "Also write the per-interval grid for this problem");
    report->add_option("--variant", variant, "Restrict the grid to one variant");

    auto* list = app.add_subcommand("list-problems", "List the benchmark catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*list) {
            fmt::print("{:<6} {:>4} {:>4}  {}\n", "name", "D", "cat", "bounds");
            for (const auto& p : suite_catalog()) {
                const auto b = p->bounds();
                fmt::print("{:<6} {:>4} {:>4}  x1 in [{}, {}], others in [{}, {}]\n", p->name(), p->dimension(), to_string(p->category()), b[0].lo,
                           b[0].hi, b[1].lo, b[1].hi);
            }
            return 0;
        }

        if (*run) {
            ExperimentConfig cfg;
            if (!preset.empty()) {
                apply_preset(cfg, preset);
            }
            if (!config_file.empty()) {
                load_config_file(cfg, config_file);
            }
            if (!out_dir.empty()) {
                cfg.output_dir = out_dir;
            }
            if (common_seeds) {
                cfg.common_seeds = true;
            }
            cfg.validate();
            if (dry_run) {
                print_plan(cfg);
                return 0;
            }
            std::mutex io;
            RunOptions opts;
            opts.jobs = jobs;
            opts.on_record = [&io](const RunRecord& r, bool resumed) {
                std::lock_guard lock(io);
                fmt::print("{:<6} {:<8} run {:>3}  final igd {:.6f}  {}\n", r.problem, to_string(r.variant), r.run_index,
                           r.trace.values.empty() ? 0.0 : r.trace.values.back().igd,
                           resumed ? "(resumed)" : fmt::format("{:.2f}s", r.wall_seconds));
            };
            const auto records = run_experiment(cfg, opts);
            if (has_comparison(records)) {
                write_summary(cfg.output_dir, records, cfg.interval);
            }
            return 0;
        }

        if (*report) {
            const auto loaded = load_experiment(in_dir);
            if (loaded.records.empty()) {
                throw ReportError(fmt::format("no completed runs in '{}'", in_dir));
            }
            write_summary(in_dir, loaded.records, loaded.config.interval);
            std::optional<BlockingVariant> only;
            if (!variant.empty()) {
                only = parse_blocking_variant(variant);
            }
            std::vector<std::string> names;
            if (!problem.empty()) {
                names.push_back(problem);
            } else {
                names = loaded.config.problems;
            }
            std::vector<GridCell> grid;
            for (const auto& name : names) {
                auto part = render_interval_grid(loaded.records, name, loaded.config.interval, only);
                fmt::print("{}: variant better on {:.0f}% of intervals\n", name, 100.0 * positive_fraction(part));
                grid.insert(grid.end(), part.begin(), part.end());
            }
            std::stable_sort(grid.begin(), grid.end(), [](const GridCell& a, const GridCell& b) { return a.category < b.category; });
            const fs::path grid_file = fs::path(in_dir) / (problem.empty() ? std::string("grid.csv") : fmt::format("grid_{}.csv", problem));
            write_text(grid_file, format_grid_csv(grid));
            fmt::print("interval grid written to {}\n", grid_file.string());
            return 0;
        }
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitRuntime;
    }
    return 0;
}
