#include "epimoea/epigenetics.hpp"

#include "epimoea/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <string>

namespace epimoea {

std::string_view to_string(BlockingVariant v)
{
    switch (v) {
    case BlockingVariant::Off:
        return "baseline";
    case BlockingVariant::E:
        return "e";
    case BlockingVariant::EIB:
        return "eib";
    case BlockingVariant::EIP:
        return "eip";
    }
    return "?";
}

BlockingVariant parse_blocking_variant(std::string_view text)
{
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "off" || s == "baseline") {
        return BlockingVariant::Off;
    }
    if (s == "e") {
        return BlockingVariant::E;
    }
    if (s == "eib") {
        return BlockingVariant::EIB;
    }
    if (s == "eip") {
        return BlockingVariant::EIP;
    }
    throw ConfigError(fmt::format("unknown variant '{}'", text));
}

void BlockingPolicy::validate() const
{
    if (!(max_probability >= 0.0 && max_probability <= 1.0)) {
        throw ConfigError(fmt::format("max_probability must lie in [0, 1] (got {})", max_probability));
    }
    if (!(base_probability >= 0.0 && base_probability <= max_probability)) {
        throw ConfigError(fmt::format("base_probability must lie in [0, max_probability] (got {})", base_probability));
    }
    if (base_block_size < 1) {
        throw ConfigError("block size must be at least 1");
    }
    const double steps = 1.0 / probability_quantum;
    if (!(probability_quantum > 0.0) || std::fabs(steps - std::round(steps)) > 1e-9) {
        throw ConfigError(fmt::format("probability_quantum must divide 1 evenly (got {})", probability_quantum));
    }
}

BlockingPolicy BlockingPolicy::for_variant(BlockingVariant v)
{
    BlockingPolicy p;
    p.variant = v;
    return p;
}

std::size_t eib_block_size(std::uint64_t evals, std::uint64_t max_evals, std::size_t dimension)
{
    if (max_evals == 0) {
        throw ConfigError("max_evals must be positive");
    }
    if (dimension == 0) {
        throw ConfigError("dimension must be positive");
    }
    evals = std::min(evals, max_evals);
    // round-half-up of evals * D / max_evals in exact integer arithmetic
    const std::uint64_t num = 2 * evals * dimension + max_evals;
    const auto s = static_cast<std::size_t>(num / (2 * max_evals));
    return std::clamp<std::size_t>(s, 1, dimension);
}

double eip_probability(std::uint64_t evals, std::uint64_t max_evals, double max_probability, double quantum)
{
    if (max_evals == 0) {
        throw ConfigError("max_evals must be positive");
    }
    evals = std::min(evals, max_evals);
    const auto per_unit = static_cast<std::uint64_t>(std::llround(1.0 / quantum));
    const auto cap_steps = static_cast<std::uint64_t>(std::floor(max_probability * static_cast<double>(per_unit) + 1e-9));
    const auto steps = evals * cap_steps / max_evals;
    if (steps >= cap_steps) {
        return max_probability;
    }
    return static_cast<double>(steps) / static_cast<double>(per_unit);
}

BlockingParameters effective_parameters(const BlockingPolicy& policy, std::uint64_t evals, std::uint64_t max_evals, std::size_t dimension)
{
    const std::size_t fixed = std::min(policy.base_block_size, dimension);
    switch (policy.variant) {
    case BlockingVariant::Off:
        return {0.0, 0};
    case BlockingVariant::E:
        return {policy.base_probability, fixed};
    case BlockingVariant::EIB:
        return {policy.base_probability, eib_block_size(evals, max_evals, dimension)};
    case BlockingVariant::EIP:
        return {eip_probability(evals, max_evals, policy.max_probability, policy.probability_quantum), fixed};
    }
    return {};
}

std::optional<BlockMask> sample_block_mask(double p, std::size_t s, std::size_t dimension, Rng& rng)
{
    if (s > dimension) {
        throw ConfigError(fmt::format("block size {} exceeds dimension {}", s, dimension));
    }
    if (p <= 0.0 || s == 0) {
        return std::nullopt;
    }
    if (rng.uniform() >= p) {
        return std::nullopt;
    }
    std::vector<std::size_t> pool(dimension);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    // partial Fisher-Yates: the first s slots are a uniform s-subset
    for (std::size_t i = 0; i < s; ++i) {
        std::size_t j = i + rng.below(dimension - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(s);
    std::sort(pool.begin(), pool.end());
    return BlockMask{std::move(pool)};
}

std::vector<double> apply_block(std::span<const double> parent, std::vector<double> child, const std::optional<BlockMask>& mask)
{
    if (parent.size() != child.size()) {
        throw DimensionError(fmt::format("parent has {} genes, child {}", parent.size(), child.size()));
    }
    if (!mask) {
        return child;
    }
    for (std::size_t i : mask->indices) {
        if (i >= child.size()) {
            throw DimensionError(fmt::format("mask index {} outside genome of length {}", i, child.size()));
        }
        child[i] = parent[i];
    }
    return child;
}

BlockingContext::BlockingContext(BlockingPolicy policy, std::uint64_t max_evals, bool reset_each_span, Rng rng)
    : policy_(policy)
    , max_evals_(max_evals)
    , reset_each_span_(reset_each_span)
    , rng_(std::move(rng))
{
    policy_.validate();
    if (max_evals_ == 0) {
        throw ConfigError("blocking schedule span must be positive");
    }
}

BlockingContext BlockingContext::disabled()
{
    return BlockingContext(BlockingPolicy{}, 1, false, Rng(0));
}

std::uint64_t BlockingContext::clock(std::uint64_t offspring_evals) const
{
    if (reset_each_span_) {
        return offspring_evals % max_evals_;
    }
    return std::min(offspring_evals, max_evals_);
}

BlockingParameters BlockingContext::parameters(std::uint64_t offspring_evals, std::size_t dimension) const
{
    return effective_parameters(policy_, clock(offspring_evals), max_evals_, dimension);
}

std::optional<BlockMask> BlockingContext::draw(std::uint64_t offspring_evals, std::size_t dimension)
{
    const auto prm = parameters(offspring_evals, dimension);
    return sample_block_mask(prm.probability, prm.block_size, dimension, rng_);
}

} // namespace epimoea
