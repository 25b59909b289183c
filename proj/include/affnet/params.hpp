#ifndef AFFNET_PARAMS_HPP
#define AFFNET_PARAMS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace affnet {

// Full model configuration. Defaults are the published ones: 100 profiles,
// 50 connections max, tier percentages 5/10/20/30/40, distortion 0.05,
// max change 0.15, affinity radius 0.2, 5 deaths per step, 1000 steps.
struct Params {
    int max_profiles = 100;     // population size, constant over a run
    int max_network  = 50;      // per-profile out-degree cap
    double distortion = 0.05;   // Gaussian sd of perceived affinity at the strongest tier
    double max_change = 0.15;   // per-step cap on |affinity delta|
    double aff_radius = 0.2;    // tolerated |own - perceived| before a tie is at risk
    int people_dead = 5;        // cap on stochastic deaths per step
    long steps = 1000;          // 10 days each
    std::uint64_t seed = 1;
};

struct ParamViolation {
    std::string field;
    std::string message;
};

// Returns every violated Params invariant; empty means the record is usable.
std::vector<ParamViolation> validate_params(const Params& p);

// Throws std::invalid_argument listing all violations.
void require_valid(const Params& p);

} // namespace affnet

#endif
