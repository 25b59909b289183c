#ifndef AFFNET_NETWORK_HPP
#define AFFNET_NETWORK_HPP

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "affnet/tier.hpp"

namespace affnet {

using ProfileId = std::uint32_t;

// One social-network account. Sensibility and influentiability are fixed for
// the profile's lifetime; affinity stays clamped to [0,1]; age only grows.
struct Profile {
    ProfileId id = 0;
    double age = 0.0;
    double affinity = 0.0;
    double sensibility = 0.0;
    double influentiability = 0.0;
};

struct Link {
    ProfileId source;
    ProfileId target;
    Tier tier;
};

// The population plus its directed, tiered adjacency. Out-links are kept per
// profile ordered by target id, which fixes every iteration order the
// dynamics depend on; in-neighbour sets give the reverse lookup needed when a
// profile dies.
class Network {
public:
    Network() = default;

    // Adds a profile with the next free id, returns the id.
    ProfileId add_profile(double age, double affinity, double sensibility, double influentiability);

    // Removes the profile and every link touching it. The freed slot is
    // remembered so a replacement lands in the same position.
    void remove_profile(ProfileId id);

    // Places a replacement in the most recently freed slot (or appends).
    ProfileId add_replacement(double age, double affinity, double sensibility, double influentiability);

    bool contains(ProfileId id) const { return index_.count(id) != 0; }
    std::size_t size() const { return profiles_.size(); }

    Profile& profile(ProfileId id) { return profiles_[slot_of(id)]; }
    const Profile& profile(ProfileId id) const { return profiles_[slot_of(id)]; }

    // Ids in ascending order; the canonical iteration order everywhere a
    // deterministic ordering matters (draws, metric sums).
    std::vector<ProfileId> ids_ascending() const;

    void add_link(ProfileId source, ProfileId target, Tier tier);
    void remove_link(ProfileId source, ProfileId target);
    void set_tier(ProfileId source, ProfileId target, Tier tier);

    bool has_link(ProfileId source, ProfileId target) const;
    Tier link_tier(ProfileId source, ProfileId target) const;

    // Out-links of one profile keyed by target id (ascending).
    const std::map<ProfileId, Tier>& out_links(ProfileId source) const;
    const std::set<ProfileId>& in_neighbors(ProfileId target) const;

    int out_degree(ProfileId id) const;
    int tier_count(ProfileId id, Tier t) const;
    const std::array<int, kTierCount>& tier_counts(ProfileId id) const;

    long total_links() const { return total_links_; }
    std::array<long, kTierCount> global_tier_counts() const;
    std::vector<Link> all_links() const;

    long step_index() const { return step_index_; }
    void set_step_index(long s) { step_index_ = s; }

    // Cross-checks the redundant adjacency structures (forward/reverse maps,
    // per-tier counters, link total); throws std::logic_error on mismatch.
    void audit_consistency() const;

private:
    struct Adjacency {
        std::map<ProfileId, Tier> out;
        std::set<ProfileId> in;
        std::array<int, kTierCount> tier_count{};
        int out_degree = 0;
    };

    std::size_t slot_of(ProfileId id) const;

    std::vector<Profile> profiles_;
    std::vector<Adjacency> adj_;
    std::unordered_map<ProfileId, std::size_t> index_;
    std::vector<std::size_t> free_slots_;
    ProfileId next_id_ = 0;
    long total_links_ = 0;
    long step_index_ = 0;
};

} // namespace affnet

#endif
