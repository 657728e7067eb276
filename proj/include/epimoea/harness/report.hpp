#pragma once

#include "epimoea/harness/runner.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace epimoea::harness {

struct SummaryRow {
    std::string problem;
    Category category = Category::I;
    BlockingVariant variant = BlockingVariant::E;
    double total_percent = 0.0;         ///< positive: variant beats baseline
    std::optional<double> p_value;      ///< empty when the paired sample is degenerate
    bool degenerate = false;
    bool significant = false;           ///< p < 0.05
    bool best = false;                  ///< highest significant positive total on this problem
    std::size_t intervals = 0;
};

struct VariantTally {
    std::size_t positive = 0;              ///< total > 0
    std::size_t significant_positive = 0;  ///< total > 0 and p < 0.05
    std::size_t significant_negative = 0;
    std::size_t best = 0;
    std::size_t problems = 0;
};

struct Summary {
    std::vector<SummaryRow> rows;  ///< problem order of the records, then variant order
    std::map<BlockingVariant, VariantTally> tallies;
};

/// Total % difference and Wilcoxon p per (problem, variant), pairing
/// per-interval mean IGD of the baseline and the variant. Throws ReportError
/// when a problem has no baseline records.
Summary render_summary(const std::vector<RunRecord>& records, std::size_t interval);

struct GridCell {
    std::string problem;
    Category category = Category::I;
    BlockingVariant variant = BlockingVariant::EIB;
    std::size_t interval_index = 0;
    std::size_t first_generation = 0;
    double baseline_igd = 0.0;
    double variant_igd = 0.0;
    double percent = 0.0;  ///< 100 * (baseline - variant) / baseline
};

/// Per-interval signed % difference of each variant against the baseline on
/// one problem. `only` restricts the output to a single variant.
std::vector<GridCell> render_interval_grid(const std::vector<RunRecord>& records, const std::string& problem, std::size_t interval,
                                           std::optional<BlockingVariant> only = std::nullopt);

/// Fraction of grid cells with a positive difference.
double positive_fraction(const std::vector<GridCell>& grid);

std::string format_summary_table(const Summary& summary);
std::string format_summary_csv(const Summary& summary);
std::string format_grid_csv(const std::vector<GridCell>& grid);

} // namespace epimoea::harness
