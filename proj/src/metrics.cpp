#include "epimoea/metrics.hpp"

#include "epimoea/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace epimoea {

double igd(const std::vector<Objectives>& obtained, const std::vector<Objectives>& reference)
{
    if (obtained.empty() || reference.empty()) {
        throw MetricError("igd needs non-empty obtained and reference sets");
    }
    const std::size_t m = reference.front().size();
    double total = 0.0;
    for (const auto& r : reference) {
        if (r.size() != m) {
            throw DimensionError("igd: reference points differ in length");
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& o : obtained) {
            if (o.size() != m) {
                throw DimensionError("igd: obtained point length differs from reference");
            }
            double d2 = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double diff = r[j] - o[j];
                d2 += diff * diff;
            }
            best = std::min(best, d2);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference.size());
}

namespace {

bool dominates(const Objectives& a, const Objectives& b)
{
    bool strictly = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) {
            return false;
        }
        strictly = strictly || a[j] < b[j];
    }
    return strictly;
}

} // namespace

std::vector<Objectives> nondominated(const std::vector<Objectives>& points)
{
    std::vector<Objectives> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t k = 0; k < points.size() && !dominated; ++k) {
            dominated = k != i && dominates(points[k], points[i]);
        }
        if (!dominated) {
            out.push_back(points[i]);
        }
    }
    return out;
}

void IGDTrace::validate() const
{
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k > 0 && values[k].generation <= values[k - 1].generation) {
            throw MetricError(fmt::format("trace {}/{}: generations not strictly increasing at entry {}", problem, algorithm, k));
        }
        if (!std::isfinite(values[k].igd) || values[k].igd < 0.0) {
            throw MetricError(fmt::format("trace {}/{}: invalid igd {} at entry {}", problem, algorithm, values[k].igd, k));
        }
    }
}

std::vector<double> interval_mean(const std::vector<IGDTrace>& traces, std::size_t interval)
{
    if (traces.empty()) {
        throw MetricError("interval_mean needs at least one trace");
    }
    if (interval < 1) {
        throw MetricError("interval must be at least 1");
    }
    const std::size_t len = traces.front().values.size();
    for (const auto& tr : traces) {
        if (tr.values.size() != len) {
            throw MetricError(fmt::format("ragged traces: {} vs {} generations", tr.values.size(), len));
        }
        if (tr.problem != traces.front().problem) {
            throw MetricError(fmt::format("traces mix problems '{}' and '{}'", tr.problem, traces.front().problem));
        }
    }
    std::vector<double> out;
    out.reserve((len + interval - 1) / interval);
    for (std::size_t start = 0; start < len; start += interval) {
        const std::size_t stop = std::min(len, start + interval);
        double sum = 0.0;
        for (const auto& tr : traces) {
            for (std::size_t g = start; g < stop; ++g) {
                sum += tr.values[g].igd;
            }
        }
        out.push_back(sum / static_cast<double>((stop - start) * traces.size()));
    }
    return out;
}

std::vector<double> percent_diff_series(const std::vector<double>& baseline, const std::vector<double>& variant)
{
    if (baseline.size() != variant.size()) {
        throw MetricError(fmt::format("interval sequences differ in length ({} vs {})", baseline.size(), variant.size()));
    }
    std::vector<double> out(baseline.size());
    for (std::size_t k = 0; k < baseline.size(); ++k) {
        if (!(baseline[k] > 0.0)) {
            throw MetricError(fmt::format("baseline interval {} has non-positive IGD {}; relative difference undefined", k, baseline[k]));
        }
        out[k] = 100.0 * (baseline[k] - variant[k]) / baseline[k];
    }
    return out;
}

double percent_diff_total(const std::vector<double>& baseline, const std::vector<double>& variant)
{
    double total = 0.0;
    for (double v : percent_diff_series(baseline, variant)) {
        total += v;
    }
    return total;
}

} // namespace epimoea
