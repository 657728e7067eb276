#pragma once

#include "epimoea/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace epimoea {

/// Blocking variants: Off (baseline), E (constant probability and block
/// size), EIB (block size grows with the evaluation budget), EIP (trigger
/// probability grows with the evaluation budget).
enum class BlockingVariant { Off, E, EIB, EIP };

std::string_view to_string(BlockingVariant v);

/// Parses "off"/"baseline", "e", "eib", "eip" (case-insensitive).
BlockingVariant parse_blocking_variant(std::string_view text);

struct BlockingPolicy {
    BlockingVariant variant = BlockingVariant::Off;
    double base_probability = 0.1;     ///< P(b) for E and EIB
    std::size_t base_block_size = 6;   ///< s for E and EIP
    double max_probability = 0.8;      ///< EIP cap
    double probability_quantum = 0.01; ///< EIP step
    bool shields_mutation = false;     ///< blocked loci also skip mutation

    /// Throws ConfigError when a field is out of range.
    void validate() const;

    static BlockingPolicy for_variant(BlockingVariant v);
};

/// Loci whose variation is suppressed for one offspring. Sorted, distinct.
struct BlockMask {
    std::vector<std::size_t> indices;
};

/// round-half-up(evals / max_evals * dimension), clamped to [1, dimension].
std::size_t eib_block_size(std::uint64_t evals, std::uint64_t max_evals, std::size_t dimension);

/// evals / max_evals * max_probability, floored to `quantum` steps and
/// capped at max_probability.
double eip_probability(std::uint64_t evals, std::uint64_t max_evals, double max_probability = 0.8, double quantum = 0.01);

struct BlockingParameters {
    double probability = 0.0;
    std::size_t block_size = 0;
};

BlockingParameters effective_parameters(const BlockingPolicy& policy, std::uint64_t evals, std::uint64_t max_evals, std::size_t dimension);

/// With probability p, s distinct loci drawn uniformly from [0, dimension).
/// Consumes no randomness when p <= 0. The sampler only sees the sizes, so
/// the draw is independent of fitness.
std::optional<BlockMask> sample_block_mask(double p, std::size_t s, std::size_t dimension, Rng& rng);

/// Copies the parent's genes back into `child` at the masked loci.
std::vector<double> apply_block(std::span<const double> parent, std::vector<double> child, const std::optional<BlockMask>& mask);

/// Per-run blocking state: the policy, the schedule span and a dedicated
/// random stream. The stream is separate from the algorithm's so that a
/// policy that never fires leaves the search trajectory untouched.
class BlockingContext {
public:
    /// `max_evals` is the schedule span in offspring evaluations. With
    /// `reset_each_span` the clock restarts every span instead of saturating.
    BlockingContext(BlockingPolicy policy, std::uint64_t max_evals, bool reset_each_span, Rng rng);

    static BlockingContext disabled();

    const BlockingPolicy& policy() const { return policy_; }

    /// Schedule clock value for a count of offspring evaluations so far.
    std::uint64_t clock(std::uint64_t offspring_evals) const;

    BlockingParameters parameters(std::uint64_t offspring_evals, std::size_t dimension) const;

    std::optional<BlockMask> draw(std::uint64_t offspring_evals, std::size_t dimension);

private:
    BlockingPolicy policy_;
    std::uint64_t max_evals_;
    bool reset_each_span_;
    Rng rng_;
};

} // namespace epimoea
