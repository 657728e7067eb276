#pragma once

#include "epimoea/epigenetics.hpp"
#include "epimoea/moead.hpp"
#include "epimoea/problems.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace epimoea::harness {

/// Everything that determines an experiment's results.
struct ExperimentConfig {
    std::vector<std::string> problems = catalog_names();
    std::vector<BlockingVariant> variants = {BlockingVariant::Off, BlockingVariant::E, BlockingVariant::EIB, BlockingVariant::EIP};
    std::size_t population = 500;
    std::size_t dimension = 0;         ///< 0 = each problem's default
    std::size_t cycles = 2;
    std::size_t generations = 0;       ///< 0 = cycles * generations_per_cycle()
    TimeModel time;
    double time_period = kDefaultTimePeriod;
    std::size_t runs = 20;
    std::uint64_t base_seed = 1;
    bool common_seeds = false;         ///< seeds shared across variants
    std::size_t interval = 2;
    double reinit_fraction = 0.2;
    std::size_t pf_points = 1000;
    DEParams de;
    BlockingPolicy blocking;           ///< variant field ignored; per-variant overrides
    bool schedule_per_cycle = false;   ///< blocking clock restarts every dynamic cycle
    std::filesystem::path output_dir = "results";

    std::size_t generations_per_cycle() const;
    std::size_t total_generations() const;

    /// Blocking schedule span in offspring evaluations.
    std::uint64_t schedule_evals() const;

    BlockingPolicy policy_for(BlockingVariant v) const;

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    /// Canonical key = value text of every result-affecting field.
    std::string canonical_text() const;

    /// 16-hex-digit content hash of canonical_text().
    std::string fingerprint() const;
};

/// Applies a named preset ("paper" or "desk") on top of `cfg`.
void apply_preset(ExperimentConfig& cfg, std::string_view preset);

/// Sets one key from its textual value. Throws ConfigError for unknown keys
/// or malformed values.
void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Reads a flat `key = value` document ('#' starts a comment).
void load_config_text(ExperimentConfig& cfg, std::string_view text);
void load_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

/// Keys accepted by set_config_value.
const std::vector<std::string>& config_keys();

} // namespace epimoea::harness
