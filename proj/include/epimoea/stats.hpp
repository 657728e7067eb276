#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace epimoea {

/// Paired observations (baseline, variant).
struct PairedSample {
    std::vector<std::pair<double, double>> pairs;
};

enum class WilcoxonMethod {
    Auto,   ///< exact for n <= 25 nonzero differences, normal approximation above
    Exact,  ///< exact null distribution of the signed-rank sum (ties use average ranks)
    Normal, ///< normal approximation with tie-corrected variance and continuity correction
};

struct WilcoxonResult {
    double statistic = 0.0;  ///< W = min(W+, W-)
    double w_plus = 0.0;     ///< rank sum of positive differences (baseline - variant > 0)
    double w_minus = 0.0;
    double p_value = 1.0;    ///< two-sided
    std::size_t n = 0;       ///< nonzero differences used
    bool exact = false;
};

/// Two-sided Wilcoxon signed-rank test on baseline - variant differences.
/// Zero differences are dropped, tied magnitudes share their average rank.
/// Throws DegenerateSampleError when no nonzero difference remains.
WilcoxonResult wilcoxon_signed_rank(const PairedSample& sample, WilcoxonMethod method = WilcoxonMethod::Auto);

/// Same test on raw differences.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& differences, WilcoxonMethod method = WilcoxonMethod::Auto);

/// Average ranks (1-based) of the values, ties sharing the mean rank.
std::vector<double> average_ranks(const std::vector<double>& values);

inline constexpr double kSignificanceLevel = 0.05;
inline constexpr std::size_t kExactThreshold = 25;

} // namespace epimoea
