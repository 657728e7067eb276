#pragma once

#include "epimoea/harness/config.hpp"
#include "epimoea/metrics.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace epimoea::harness {

/// One (problem, variant, run index) cell of an experiment.
struct RunRecord {
    std::string fingerprint;
    std::string problem;
    BlockingVariant variant = BlockingVariant::Off;
    std::size_t run_index = 0;
    std::uint64_t seed = 0;
    IGDTrace trace;
    double wall_seconds = 0.0;
    std::uint64_t evals = 0;
};

/// base_seed XOR a stable hash of (problem, variant, run index); the variant
/// is left out of the hash when common seeds are requested.
std::uint64_t run_seed(const ExperimentConfig& cfg, const std::string& problem, BlockingVariant variant, std::size_t run_index);

/// Executes a single run in memory. Deterministic in (cfg, problem, variant, run_index).
RunRecord run_single(const ExperimentConfig& cfg, const std::string& problem, BlockingVariant variant, std::size_t run_index);

struct RunOptions {
    std::size_t jobs = 1;
    /// Called from the thread that finished (or reloaded) the cell.
    std::function<void(const RunRecord&, bool resumed)> on_record;
};

/// Runs every cell, persisting each one as it completes under
/// cfg.output_dir. Cells already on disk with a matching fingerprint are
/// loaded instead of recomputed. Records come back in
/// (problem, variant, run) order regardless of `jobs`.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Timeline of an experiment without running it.
struct ProtocolPlan {
    std::size_t generations = 0;
    std::size_t generations_per_cycle = 0;
    std::size_t cycles = 0;
    std::size_t intervals = 0;
    std::size_t total_runs = 0;
    std::uint64_t evaluations_per_run = 0;  ///< offspring evaluations, the blocking schedule's budget
    std::vector<double> times;              ///< t of every generation
};

ProtocolPlan plan_protocol(const ExperimentConfig& cfg);

// Persistence layout under an output directory.
std::filesystem::path trace_path(const std::filesystem::path& dir, const std::string& problem, BlockingVariant v, std::size_t run);
std::filesystem::path manifest_path(const std::filesystem::path& dir);

/// Trace CSV text: header `generation,t,igd`, one row per generation.
std::string format_trace_csv(const IGDTrace& trace);
IGDTrace parse_trace_csv(const std::string& text);

/// Reads the manifest and every completed run under `dir`.
struct LoadedExperiment {
    ExperimentConfig config;
    std::string fingerprint;
    std::vector<RunRecord> records;
};

LoadedExperiment load_experiment(const std::filesystem::path& dir);

} // namespace epimoea::harness
