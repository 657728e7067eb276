#pragma once

#include "epimoea/problems.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace epimoea {

/// Mean over reference points of the distance to the nearest obtained point.
/// Throws MetricError when either set is empty.
double igd(const std::vector<Objectives>& obtained, const std::vector<Objectives>& reference);

/// Points not dominated by any other point of the set (minimization),
/// in input order. Duplicates of a non-dominated point are all kept.
std::vector<Objectives> nondominated(const std::vector<Objectives>& points);

struct TracePoint {
    std::size_t generation = 0;
    double time = 0.0;
    double igd = 0.0;
};

/// Per-generation IGD of one run.
struct IGDTrace {
    std::string problem;
    std::string algorithm;
    std::uint64_t run_seed = 0;
    std::vector<TracePoint> values;

    /// Throws MetricError unless generations strictly increase and values are finite and >= 0.
    void validate() const;
};

/// Mean IGD per block of `interval` consecutive generations, averaged over
/// runs and over the generations inside the block. A trailing partial block
/// is averaged over the generations it has.
std::vector<double> interval_mean(const std::vector<IGDTrace>& traces, std::size_t interval);

/// Sum over intervals of 100 * (baseline - variant) / baseline. Positive
/// means the variant reached lower IGD.
double percent_diff_total(const std::vector<double>& baseline, const std::vector<double>& variant);

/// The per-interval terms of percent_diff_total.
std::vector<double> percent_diff_series(const std::vector<double>& baseline, const std::vector<double>& variant);

} // namespace epimoea
