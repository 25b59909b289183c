#ifndef AFFNET_DYNAMICS_HPP
#define AFFNET_DYNAMICS_HPP

#include <span>
#include <vector>

#include "affnet/network.hpp"
#include "affnet/params.hpp"
#include "affnet/rng.hpp"

namespace affnet {

// What one step did; deaths and replacements always pair up.
struct StepEvents {
    long links_created = 0;
    long promotions = 0;
    long demotions = 0;
    long severances = 0; // weakest links eradicated during evaluation (death cleanup not included)
    std::vector<ProfileId> deaths;
    std::vector<ProfileId> replacements;
};

// A noisy observation of one connected profile's affinity, clamped to [0,1].
struct Perception {
    ProfileId observer;
    ProfileId observed;
    Tier tier;
    double perceived_affinity;
};

// Fresh population: ages uniform in [10,80), the three traits uniform in
// [0,1), no links. Throws on invalid Params.
Network initialize(const Params& p, StreamSet& streams);

// Observation with Gaussian distortion. The noise sd is distortion at the
// strongest tier and grows by a factor 1.1 per tier of weaker connection.
Perception perceive_affinity(const Profile& observer, const Profile& observed, Tier tier,
                             double distortion, RandomStream& perception);

// Connection search for one profile: the `n` age-closest profiles it has no
// out-link to are screened at weakest-tier perception accuracy, and each one
// within aff_radius of the own affinity gains a weakest out-link. `n` is
// capped by the remaining out-degree budget. This is the raw procedure; the
// step pipeline computes n per the schedule (see create_connections).
int create_connections_with_budget(Network& net, ProfileId id, int n, const Params& p,
                                   StreamSet& streams);

// Scheduled connection search: n = min(floor(0.30 * max_network), free
// weakest-tier slots, remaining out-degree budget). Returns links created.
int create_connections(Network& net, ProfileId id, const Params& p, StreamSet& streams);

// Re-evaluates every out-link of one profile against a fresh perception:
// differences beyond aff_radius risk a one-tier demotion (weakest links are
// severed) gated by the profile's sensibility; perceptions inside the next
// stronger tier's band promote one tier when that tier has a free slot.
// Perceptions are appended to `kept` for the affinity-update phase.
void evaluate_network(Network& net, ProfileId id, const Params& p, StreamSet& streams,
                      std::vector<Perception>& kept, StepEvents& events);

// New affinity from the kept perceptions of medium-or-stronger ties: a
// weighted mean (weights 3/2/1 for strongest/strong/medium, own weight equal
// to the neighbour total) pulls the profile by influentiability times the
// difference, capped at max_change and clamped to [0,1].
double update_affinity(const Profile& profile, std::span<const Perception> perceptions,
                       const Params& p);

// Removes the dead: everyone at age >= 80 unconditionally, then at most
// people_dead more whose mortality draw u fell below the age hazard
// h(age) = 1 - exp(-age/80), preferring the smallest u/h ratios.
// Returns the removed ids (forced deaths first).
std::vector<ProfileId> mortality(Network& net, const Params& p, StreamSet& streams);

// One replacement per death: age 10, fresh uniform traits, no links.
std::vector<ProfileId> replace_agents(Network& net, const std::vector<ProfileId>& deaths,
                                      StreamSet& streams);

// A whole simulation run: owns the network and its streams.
class Simulation {
public:
    Simulation(const Params& p, std::uint64_t seed);

    // One tick: connection search, network evaluation, affinity update,
    // mortality, replacement, then 10 days of ageing for everyone.
    StepEvents step();

    const Network& network() const { return net_; }
    Network& network_mutable() { return net_; }
    const Params& params() const { return params_; }

private:
    Params params_;
    StreamSet streams_;
    Network net_;
};

// Days per step expressed in years; one step is 10 days.
inline constexpr double kYearsPerStep = 10.0 / 365.25;
inline constexpr double kMaxAge = 80.0;

} // namespace affnet

#endif
