#ifndef AFFNET_TIER_HPP
#define AFFNET_TIER_HPP

#include <array>
#include <cstdint>

namespace affnet {

// Five-level link strength scale. Ordinal 0 is the strongest tie.
enum class Tier : std::uint8_t {
    Strongest = 0,
    Strong    = 1,
    Medium    = 2,
    Weak      = 3,
    Weakest   = 4,
};

inline constexpr int kTierCount = 5;

constexpr int ordinal(Tier t) { return static_cast<int>(t); }
constexpr Tier tier_from_ordinal(int o) { return static_cast<Tier>(o); }

// One level up the strength scale (Weak -> Medium). Caller guarantees t != Strongest.
constexpr Tier stronger(Tier t) { return tier_from_ordinal(ordinal(t) - 1); }
// One level down (Medium -> Weak). Caller guarantees t != Weakest.
constexpr Tier weaker(Tier t) { return tier_from_ordinal(ordinal(t) + 1); }

// Capacity percentages per tier, strongest first. They sum to 105%; the global
// out-degree cap is enforced separately at link creation.
inline constexpr std::array<int, kTierCount> kTierCapacityPercent = {5, 10, 20, 30, 40};

// Per-tier slot caps: floor(percent * maxNetwork / 100), computed in integers
// so the floor is exact for every maxNetwork.
constexpr std::array<int, kTierCount> tier_caps(int max_network) {
    std::array<int, kTierCount> caps{};
    for (int t = 0; t < kTierCount; ++t)
        caps[t] = static_cast<int>(static_cast<long long>(max_network) * kTierCapacityPercent[t] / 100);
    return caps;
}

// Fraction of the affinity radius a tier's acceptance band spans: 1/5 for
// Strongest up to 5/5 for Weakest. Bands are nested.
constexpr double band_fraction(Tier t) { return (ordinal(t) + 1) / 5.0; }

struct AffinityBand {
    double lo;
    double hi;
    constexpr bool contains(double x) const { return lo <= x && x <= hi; }
};

// Acceptance interval [aff - f*radius, aff + f*radius] for a tier. Not clipped
// to [0,1]; membership tests use perceived affinities, which are clamped.
constexpr AffinityBand tier_band(Tier t, double own_affinity, double aff_radius) {
    const double half = band_fraction(t) * aff_radius;
    return {own_affinity - half, own_affinity + half};
}

const char* tier_name(Tier t);
// Parses a lowercase tier name ("strongest".."weakest"); returns false on anything else.
bool tier_from_name(const char* name, Tier& out);

} // namespace affnet

#endif
