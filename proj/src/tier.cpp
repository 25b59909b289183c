#include "affnet/tier.hpp"

#include <cstring>

namespace affnet {

const char* tier_name(Tier t) {
    switch (t) {
    case Tier::Strongest: return "strongest";
    case Tier::Strong:    return "strong";
    case Tier::Medium:    return "medium";
    case Tier::Weak:      return "weak";
    case Tier::Weakest:   return "weakest";
    }
    return "?";
}

bool tier_from_name(const char* name, Tier& out) {
    for (int o = 0; o < kTierCount; ++o) {
        if (std::strcmp(name, tier_name(tier_from_ordinal(o))) == 0) {
            out = tier_from_ordinal(o);
            return true;
        }
    }
    return false;
}

} // namespace affnet
