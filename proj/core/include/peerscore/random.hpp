#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "peerscore/probability.hpp"

namespace peerscore {

using Rng = std::mt19937_64;

// Stream splitting: every (seed, stream...) tuple is hashed through
// SplitMix64 into an independent generator seed. Per-trial and per-reviewer
// streams derived this way are reproducible regardless of the order in
// which they are consumed.
std::uint64_t SplitMix64(std::uint64_t x) noexcept;
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) noexcept;
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t substream) noexcept;

Rng MakeRng(std::uint64_t seed, std::uint64_t stream);
Rng MakeRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream);

// Uniform on [0, 1) with 53 random bits.
double Uniform01(Rng& rng);
// Uniform on {0, ..., bound - 1}; bound must be positive.
std::size_t UniformIndex(Rng& rng, std::size_t bound);
// Inverse-CDF draw from a categorical distribution.
std::size_t SampleCategorical(Rng& rng, const ProbabilityVector& probs);
// Dirichlet draw via normalized gamma variates.
ProbabilityVector SampleDirichlet(Rng& rng, std::span<const double> alpha);

}  // namespace peerscore
