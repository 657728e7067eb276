#pragma once

#include <stdexcept>
#include <string>

namespace epimoea {

/// Vector arguments whose lengths disagree.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A decision vector outside the problem's box bounds.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid or inconsistent configuration (unknown names, bad parameter ranges).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Metric or aggregation input that has no defined value.
class MetricError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Statistical test on a sample with no nonzero paired difference.
class DegenerateSampleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Report requested over records that do not contain what it needs.
class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace epimoea
