#include "epimoea/harness/report.hpp"

#include "epimoea/errors.hpp"
#include "epimoea/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace epimoea::harness {

namespace {

std::vector<std::string> problem_order(const std::vector<RunRecord>& records)
{
    std::vector<std::string> out;
    for (const auto& r : records) {
        if (std::find(out.begin(), out.end(), r.problem) == out.end()) {
            out.push_back(r.problem);
        }
    }
    return out;
}

std::vector<BlockingVariant> variant_order(const std::vector<RunRecord>& records, const std::string& problem)
{
    std::vector<BlockingVariant> out;
    for (const auto& r : records) {
        if (r.problem == problem && r.variant != BlockingVariant::Off && std::find(out.begin(), out.end(), r.variant) == out.end()) {
            out.push_back(r.variant);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IGDTrace> traces_of(const std::vector<RunRecord>& records, const std::string& problem, BlockingVariant v)
{
    std::vector<IGDTrace> out;
    for (const auto& r : records) {
        if (r.problem == problem && r.variant == v) {
            out.push_back(r.trace);
        }
    }
    return out;
}

Category category_of(const std::string& problem)
{
    return make_problem(problem)->category();
}

std::vector<double> baseline_intervals(const std::vector<RunRecord>& records, const std::string& problem, std::size_t interval)
{
    const auto base = traces_of(records, problem, BlockingVariant::Off);
    if (base.empty()) {
        throw ReportError(fmt::format("no baseline runs for problem '{}'", problem));
    }
    return interval_mean(base, interval);
}

} // namespace

Summary render_summary(const std::vector<RunRecord>& records, std::size_t interval)
{
    Summary summary;
    for (const auto& problem : problem_order(records)) {
        const auto base = baseline_intervals(records, problem, interval);
        const Category cat = category_of(problem);
        const auto variants = variant_order(records, problem);
        if (variants.empty()) {
            throw ReportError(fmt::format("problem '{}' has baseline runs only", problem));
        }
        const std::size_t first = summary.rows.size();
        for (auto v : variants) {
            const auto ints = interval_mean(traces_of(records, problem, v), interval);
            SummaryRow row;
            row.problem = problem;
            row.category = cat;
            row.variant = v;
            row.total_percent = percent_diff_total(base, ints);
            row.intervals = ints.size();
            PairedSample sample;
            for (std::size_t k = 0; k < ints.size(); ++k) {
                sample.pairs.emplace_back(base[k], ints[k]);
            }
            try {
                row.p_value = wilcoxon_signed_rank(sample).p_value;
                row.significant = *row.p_value < kSignificanceLevel;
            } catch (const DegenerateSampleError&) {
                row.degenerate = true;
            }
            summary.rows.push_back(row);
        }
        std::optional<std::size_t> best;
        for (std::size_t k = first; k < summary.rows.size(); ++k) {
            const auto& row = summary.rows[k];
            if (row.significant && row.total_percent > 0.0 && (!best || row.total_percent > summary.rows[*best].total_percent)) {
                best = k;
            }
        }
        if (best) {
            summary.rows[*best].best = true;
        }
    }
    for (const auto& row : summary.rows) {
        auto& t = summary.tallies[row.variant];
        ++t.problems;
        t.positive += row.total_percent > 0.0;
        t.significant_positive += row.significant && row.total_percent > 0.0;
        t.significant_negative += row.significant && row.total_percent < 0.0;
        t.best += row.best;
    }
    return summary;
}

std::vector<GridCell> render_interval_grid(const std::vector<RunRecord>& records, const std::string& problem, std::size_t interval,
                                           std::optional<BlockingVariant> only)
{
    const auto base = baseline_intervals(records, problem, interval);
    const Category cat = category_of(problem);
    std::vector<GridCell> grid;
    auto variants = variant_order(records, problem);
    if (only) {
        if (std::find(variants.begin(), variants.end(), *only) == variants.end()) {
            throw ReportError(fmt::format("no '{}' runs for problem '{}'", to_string(*only), problem));
        }
        variants = {*only};
    }
    if (variants.empty()) {
        throw ReportError(fmt::format("problem '{}' has baseline runs only", problem));
    }
    for (auto v : variants) {
        const auto ints = interval_mean(traces_of(records, problem, v), interval);
        const auto pct = percent_diff_series(base, ints);
        for (std::size_t k = 0; k < ints.size(); ++k) {
            grid.push_back(GridCell{problem, cat, v, k, k * interval, base[k], ints[k], pct[k]});
        }
    }
    return grid;
}

double positive_fraction(const std::vector<GridCell>& grid)
{
    if (grid.empty()) {
        return 0.0;
    }
    const auto pos = std::count_if(grid.begin(), grid.end(), [](const GridCell& c) { return c.percent > 0.0; });
    return static_cast<double>(pos) / static_cast<double>(grid.size());
}

std::string format_summary_table(const Summary& summary)
{
    std::vector<BlockingVariant> variants;
    for (const auto& [v, t] : summary.tallies) {
        variants.push_back(v);
    }
    std::string out = fmt::format("{:<8} {:<4}", "problem", "cat");
    for (auto v : variants) {
        out += fmt::format(" | {:>20}", to_string(v));
    }
    out += "\n";
    std::string current;
    for (std::size_t k = 0; k < summary.rows.size(); ++k) {
        const auto& row = summary.rows[k];
        if (row.problem != current) {
            if (!current.empty()) {
                out += "\n";
            }
            current = row.problem;
            out += fmt::format("{:<8} {:<4}", row.problem, to_string(row.category));
            for (auto v : variants) {
                const auto it = std::find_if(summary.rows.begin(), summary.rows.end(),
                                             [&](const SummaryRow& r) { return r.problem == current && r.variant == v; });
                if (it == summary.rows.end()) {
                    out += fmt::format(" | {:>20}", "-");
                    continue;
                }
                const std::string p = it->p_value ? fmt::format("{:.3f}", *it->p_value) : std::string("n/a");
                const char* mark = it->best ? "*" : !it->significant ? " " : it->total_percent > 0.0 ? "+" : "-";
                out += fmt::format(" | {:>10.0f}{} ({:>6})", it->total_percent, mark, p);
            }
        }
    }
    out += "\n\n* best significant variant, +/- significant improvement/decline at the 5% level\n";
    for (auto v : variants) {
        const auto& t = summary.tallies.at(v);
        out += fmt::format("{}: significant improvement on {} of {} problems, best on {}, significant decline on {}\n", to_string(v),
                           t.significant_positive, t.problems, t.best, t.significant_negative);
    }
    return out;
}

std::string format_summary_csv(const Summary& summary)
{
    std::string out = "problem,category,variant,total_pct_diff,p_value,significant,best,intervals,degenerate\n";
    for (const auto& r : summary.rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.problem, to_string(r.category), to_string(r.variant), r.total_percent,
                           r.p_value ? fmt::format("{}", *r.p_value) : std::string(), r.significant ? 1 : 0, r.best ? 1 : 0, r.intervals,
                           r.degenerate ? 1 : 0);
    }
    return out;
}

std::string format_grid_csv(const std::vector<GridCell>& grid)
{
    std::string out = "category,problem,variant,interval,first_generation,baseline_igd,variant_igd,pct_diff\n";
    for (const auto& c : grid) {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", to_string(c.category), c.problem, to_string(c.variant), c.interval_index,
                           c.first_generation, c.baseline_igd, c.variant_igd, c.percent);
    }
    return out;
}

} // namespace epimoea::harness
