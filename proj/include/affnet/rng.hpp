#ifndef AFFNET_RNG_HPP
#define AFFNET_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace affnet {

// One seeded random stream. The engine is std::mt19937_64, whose output
// sequence is pinned by the C++ standard, and all transforms below are
// written out explicitly so a (seed, draw sequence) pair yields the same
// values on any conforming implementation.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_bits() { return eng_(); }

    // Uniform double in [0, 1): top 53 bits of the engine output.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi); lo == hi returns lo. lo > hi is a programming error.
    double uniform(double lo, double hi);

    // Gaussian via Box-Muller, two uniform draws per call. sd == 0 returns
    // mean exactly without consuming draws.
    double gaussian(double mean, double sd);

    // Uniform integer in [0, n), rejection sampled so every value is equally likely.
    std::uint64_t below(std::uint64_t n);

    // Fisher-Yates permutation of 0..n-1.
    std::vector<std::uint32_t> permutation(std::uint32_t n);

private:
    std::mt19937_64 eng_;
};

// The independent substreams a simulation draws from, keyed by purpose.
// Each substream owns its engine, so draws from one never perturb another.
struct StreamSet {
    RandomStream init;         // initial ages/affinities/sensibilities/influentiabilities
    RandomStream scheduling;   // per-step agent processing order
    RandomStream perception;   // Gaussian distortion of observed affinities
    RandomStream rejection;    // sensibility comparisons when a tie is at risk
    RandomStream mortality;    // stochastic death draws
    RandomStream replacement;  // attributes of replacement profiles
};

// Substream seeds are derived from the master seed by iterating SplitMix64,
// in the fixed order the StreamSet fields are declared.
StreamSet make_streams(std::uint64_t master_seed);

// SplitMix64 step; exposed for deterministic seed derivation elsewhere
// (experiment cells derive per-replication seeds with it).
std::uint64_t splitmix64(std::uint64_t& state);

} // namespace affnet

#endif
