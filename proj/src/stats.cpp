#include "epimoea/stats.hpp"

#include "epimoea/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace epimoea {

std::vector<double> average_ranks(const std::vector<double>& values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = avg;
        }
        i = j + 1;
    }
    return ranks;
}

namespace {

// Doubled average ranks are integers, so the null distribution of 2 * W+
// is a subset-sum count over integer weights.
double exact_p(const std::vector<double>& ranks, double w_plus)
{
    std::vector<std::size_t> weights;
    weights.reserve(ranks.size());
    std::size_t total = 0;
    for (double r : ranks) {
        weights.push_back(static_cast<std::size_t>(std::llround(2.0 * r)));
        total += weights.back();
    }
    std::vector<double> count(total + 1, 0.0);
    count[0] = 1.0;
    std::size_t reach = 0;
    for (std::size_t w : weights) {
        for (std::size_t s = reach + 1; s-- > 0;) {
            if (count[s] != 0.0) {
                count[s + w] += count[s];
            }
        }
        reach += w;
    }
    const auto observed = static_cast<std::size_t>(std::llround(2.0 * w_plus));
    double below = 0.0;
    double above = 0.0;
    for (std::size_t s = 0; s <= total; ++s) {
        if (s <= observed) {
            below += count[s];
        }
        if (s >= observed) {
            above += count[s];
        }
    }
    const double all = std::ldexp(1.0, static_cast<int>(ranks.size()));
    return std::min(1.0, 2.0 * std::min(below, above) / all);
}

double normal_p(const std::vector<double>& abs_diffs, double statistic)
{
    const auto n = static_cast<double>(abs_diffs.size());
    double tie_term = 0.0;
    std::vector<double> sorted = abs_diffs;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) {
            ++j;
        }
        const auto t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double mean = n * (n + 1.0) / 4.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) {
        return 1.0;
    }
    // continuity correction: half a rank toward the mean
    const double shift = statistic < mean ? -0.5 : (statistic > mean ? 0.5 : 0.0);
    const double z = (statistic - mean - shift) / std::sqrt(var);
    return std::min(1.0, std::erfc(std::fabs(z) / std::sqrt(2.0)));
}

} // namespace

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& differences, WilcoxonMethod method)
{
    std::vector<double> nonzero;
    for (double d : differences) {
        if (d != 0.0) {
            nonzero.push_back(d);
        }
    }
    if (nonzero.empty()) {
        throw DegenerateSampleError("all paired differences are zero");
    }
    std::vector<double> mags(nonzero.size());
    std::transform(nonzero.begin(), nonzero.end(), mags.begin(), [](double d) { return std::fabs(d); });
    const auto ranks = average_ranks(mags);

    WilcoxonResult res;
    res.n = nonzero.size();
    for (std::size_t i = 0; i < nonzero.size(); ++i) {
        (nonzero[i] > 0.0 ? res.w_plus : res.w_minus) += ranks[i];
    }
    res.statistic = std::min(res.w_plus, res.w_minus);
    res.exact = method == WilcoxonMethod::Exact || (method == WilcoxonMethod::Auto && res.n <= kExactThreshold);
    res.p_value = res.exact ? exact_p(ranks, res.w_plus) : normal_p(mags, res.statistic);
    return res;
}

WilcoxonResult wilcoxon_signed_rank(const PairedSample& sample, WilcoxonMethod method)
{
    std::vector<double> diffs;
    diffs.reserve(sample.pairs.size());
    for (const auto& [base, variant] : sample.pairs) {
        diffs.push_back(base - variant);
    }
    return wilcoxon_signed_rank(diffs, method);
}

} // namespace epimoea
