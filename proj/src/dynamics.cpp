#include "affnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace affnet {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Noise grows by a factor 1.1 for each tier below the strongest.
double perception_sd(double distortion, Tier tier) {
    double sd = distortion;
    for (int i = 0; i < ordinal(tier); ++i)
        sd *= 1.1;
    return sd;
}

} // namespace

Network initialize(const Params& p, StreamSet& streams) {
    require_valid(p);
    Network net;
    for (int i = 0; i < p.max_profiles; ++i) {
        const double age = streams.init.uniform(10.0, 80.0);
        const double affinity = streams.init.uniform(0.0, 1.0);
        const double sensibility = streams.init.uniform(0.0, 1.0);
        const double influentiability = streams.init.uniform(0.0, 1.0);
        net.add_profile(age, affinity, sensibility, influentiability);
    }
    return net;
}

Perception perceive_affinity(const Profile& observer, const Profile& observed, Tier tier,
                             double distortion, RandomStream& perception) {
    const double noise = perception.gaussian(0.0, perception_sd(distortion, tier));
    return {observer.id, observed.id, tier, clamp01(observed.affinity + noise)};
}

int create_connections_with_budget(Network& net, ProfileId id, int n, const Params& p,
                                   StreamSet& streams) {
    const int budget = p.max_network - net.out_degree(id);
    n = std::min(n, budget);
    if (n <= 0)
        return 0;

    const Profile& self = net.profile(id);
    struct Candidate {
        double age_gap;
        ProfileId id;
    };
    std::vector<Candidate> candidates;
    for (ProfileId other : net.ids_ascending()) {
        if (other == id || net.has_link(id, other))
            continue;
        candidates.push_back({std::abs(net.profile(other).age - self.age), other});
    }
    const auto closer = [](const Candidate& a, const Candidate& b) {
        return a.age_gap != b.age_gap ? a.age_gap < b.age_gap : a.id < b.id;
    };
    const std::size_t take = std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(n));
    std::partial_sort(candidates.begin(), candidates.begin() + take, candidates.end(), closer);

    // New acquaintances are screened at weakest-tier accuracy.
    int created = 0;
    for (std::size_t i = 0; i < take; ++i) {
        const Perception seen = perceive_affinity(self, net.profile(candidates[i].id),
                                                  Tier::Weakest, p.distortion, streams.perception);
        if (std::abs(seen.perceived_affinity - self.affinity) <= p.aff_radius) {
            net.add_link(id, candidates[i].id, Tier::Weakest);
            ++created;
        }
    }
    return created;
}

int create_connections(Network& net, ProfileId id, const Params& p, StreamSet& streams) {
    if (net.out_degree(id) >= p.max_network)
        return 0;
    const auto caps = tier_caps(p.max_network);
    const int share = 3 * p.max_network / 10; // floor(0.30 * max_network), exact
    const int weakest_free = caps[ordinal(Tier::Weakest)] - net.tier_count(id, Tier::Weakest);
    const int n = std::min(share, weakest_free);
    if (n <= 0)
        return 0;
    return create_connections_with_budget(net, id, n, p, streams);
}

void evaluate_network(Network& net, ProfileId id, const Params& p, StreamSet& streams,
                      std::vector<Perception>& kept, StepEvents& events) {
    const auto caps = tier_caps(p.max_network);

    // Snapshot: evaluation may sever or retier links while walking them.
    std::vector<std::pair<ProfileId, Tier>> links(net.out_links(id).begin(), net.out_links(id).end());

    for (const auto& [target, tier] : links) {
        const Profile& self = net.profile(id);
        const Perception seen =
            perceive_affinity(self, net.profile(target), tier, p.distortion, streams.perception);
        kept.push_back(seen);

        const double diff = std::abs(seen.perceived_affinity - self.affinity);
        if (diff > p.aff_radius) {
            // Too different: the profile may push the tie away, one tier at a time.
            const double u = streams.rejection.uniform01();
            if (u < self.sensibility) {
                if (tier == Tier::Weakest) {
                    net.remove_link(id, target);
                    ++events.severances;
                } else {
                    const Tier down = weaker(tier);
                    if (net.tier_count(id, down) < caps[ordinal(down)]) {
                        net.set_tier(id, target, down);
                        ++events.demotions;
                    }
                }
            }
        } else if (tier != Tier::Strongest) {
            const Tier up = stronger(tier);
            if (net.tier_count(id, up) < caps[ordinal(up)] &&
                tier_band(up, self.affinity, p.aff_radius).contains(seen.perceived_affinity)) {
                net.set_tier(id, target, up);
                ++events.promotions;
            }
        }
    }
}

double update_affinity(const Profile& profile, std::span<const Perception> perceptions,
                       const Params& p) {
    if (perceptions.empty())
        return profile.affinity;

    // Closer ties weigh more: 3 for strongest, 2 for strong, 1 for medium.
    double weight_sum = 0.0;
    double weighted = 0.0;
    for (const Perception& seen : perceptions) {
        const double w = 3.0 - ordinal(seen.tier);
        weight_sum += w;
        weighted += w * seen.perceived_affinity;
    }
    // The own value carries as much weight as all neighbours together.
    const double mean = (weighted + weight_sum * profile.affinity) / (2.0 * weight_sum);
    const double raw_delta = mean - profile.affinity;
    const double magnitude = std::min(std::abs(profile.influentiability * raw_delta), p.max_change);
    const double applied = raw_delta < 0.0 ? -magnitude : magnitude;
    return clamp01(profile.affinity + applied);
}

std::vector<ProfileId> mortality(Network& net, const Params& p, StreamSet& streams) {
    std::vector<ProfileId> deaths;
    struct DeathCandidate {
        double ratio;
        ProfileId id;
    };
    std::vector<DeathCandidate> candidates;

    for (ProfileId id : net.ids_ascending()) {
        const double age = net.profile(id).age;
        if (age >= kMaxAge) {
            deaths.push_back(id); // forced, does not count against the cap
            continue;
        }
        const double u = streams.mortality.uniform01();
        const double hazard = 1.0 - std::exp(-age / kMaxAge);
        if (u < hazard)
            candidates.push_back({u / hazard, id});
    }

    std::sort(candidates.begin(), candidates.end(), [](const DeathCandidate& a, const DeathCandidate& b) {
        return a.ratio != b.ratio ? a.ratio < b.ratio : a.id < b.id;
    });
    const std::size_t cap = std::min<std::size_t>(candidates.size(),
                                                  static_cast<std::size_t>(std::max(p.people_dead, 0)));
    for (std::size_t i = 0; i < cap; ++i)
        deaths.push_back(candidates[i].id);

    for (ProfileId id : deaths)
        net.remove_profile(id);
    return deaths;
}

std::vector<ProfileId> replace_agents(Network& net, const std::vector<ProfileId>& deaths,
                                       StreamSet& streams) {
    std::vector<ProfileId> fresh;
    fresh.reserve(deaths.size());
    for (std::size_t i = 0; i < deaths.size(); ++i) {
        const double affinity = streams.replacement.uniform(0.0, 1.0);
        const double sensibility = streams.replacement.uniform(0.0, 1.0);
        const double influentiability = streams.replacement.uniform(0.0, 1.0);
        fresh.push_back(net.add_replacement(10.0, affinity, sensibility, influentiability));
    }
    return fresh;
}

Simulation::Simulation(const Params& p, std::uint64_t seed)
    : params_(p), streams_(make_streams(seed)), net_(initialize(p, streams_)) {}

StepEvents Simulation::step() {
    StepEvents events;
    const std::vector<ProfileId> ids = net_.ids_ascending();
    const auto n = static_cast<std::uint32_t>(ids.size());

    // 1. Connection search, in a fresh random order.
    for (std::uint32_t k : streams_.scheduling.permutation(n))
        events.links_created += create_connections(net_, ids[k], params_, streams_);

    // 2. Network evaluation; perceptions are kept for the affinity phase.
    std::vector<std::vector<Perception>> kept(ids.size());
    for (std::uint32_t k : streams_.scheduling.permutation(n))
        evaluate_network(net_, ids[k], params_, streams_, kept[k], events);

    // 3. Affinity update from medium-or-stronger ties as they stand after
    // evaluation. Each update reads only stored perceptions and the own
    // value, so processing order cannot matter.
    for (std::size_t k = 0; k < ids.size(); ++k) {
        const ProfileId id = ids[k];
        std::vector<Perception> qualifying;
        for (const Perception& seen : kept[k]) {
            if (!net_.has_link(id, seen.observed))
                continue; // severed during evaluation
            const Tier now = net_.link_tier(id, seen.observed);
            if (ordinal(now) <= ordinal(Tier::Medium))
                qualifying.push_back({seen.observer, seen.observed, now, seen.perceived_affinity});
        }
        net_.profile(id).affinity = update_affinity(net_.profile(id), qualifying, params_);
    }

    // 4 & 5. Mortality, then replacement.
    events.deaths = mortality(net_, params_, streams_);
    events.replacements = replace_agents(net_, events.deaths, streams_);

    // Everyone ages 10 days.
    for (ProfileId id : net_.ids_ascending())
        net_.profile(id).age += kYearsPerStep;

    net_.set_step_index(net_.step_index() + 1);
    return events;
}

} // namespace affnet
