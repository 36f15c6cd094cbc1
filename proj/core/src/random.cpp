#include "peerscore/random.hpp"

#include <vector>

#include "peerscore/error.hpp"

namespace peerscore {

std::uint64_t SplitMix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return SplitMix64(SplitMix64(seed) ^ SplitMix64(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t substream) noexcept {
  return DeriveSeed(DeriveSeed(seed, stream), substream);
}

Rng MakeRng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(DeriveSeed(seed, stream));
}

Rng MakeRng(std::uint64_t seed, std::uint64_t stream,
            std::uint64_t substream) {
  return Rng(DeriveSeed(seed, stream, substream));
}

double Uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t UniformIndex(Rng& rng, std::size_t bound) {
  if (bound == 0) throw DomainError("uniform index bound must be positive");
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t n = bound;
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return static_cast<std::size_t>(x % n);
}

std::size_t SampleCategorical(Rng& rng, const ProbabilityVector& probs) {
  const double u = Uniform01(rng);
  double running = 0.0;
  for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
    running += probs[k];
    if (u < running) return k;
  }
  // Skip trailing zero-mass outcomes left over from rounding.
  std::size_t last = probs.size() - 1;
  while (last > 0 && probs[last] == 0.0) --last;
  return last;
}

ProbabilityVector SampleDirichlet(Rng& rng, std::span<const double> alpha) {
  std::vector<double> draws(alpha.size());
  double total = 0.0;
  do {
    total = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      std::gamma_distribution<double> gamma(alpha[k], 1.0);
      draws[k] = gamma(rng);
      total += draws[k];
    }
  } while (total <= 0.0);
  return ProbabilityVector::Normalized(std::move(draws));
}

}  // namespace peerscore
