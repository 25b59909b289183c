#include "affnet/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace affnet {

std::size_t Network::slot_of(ProfileId id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw std::out_of_range("unknown profile id " + std::to_string(id));
    return it->second;
}

ProfileId Network::add_profile(double age, double affinity, double sensibility, double influentiability) {
    const ProfileId id = next_id_++;
    profiles_.push_back({id, age, affinity, sensibility, influentiability});
    adj_.emplace_back();
    index_[id] = profiles_.size() - 1;
    return id;
}

void Network::remove_profile(ProfileId id) {
    const std::size_t slot = slot_of(id);
    // Drop out-links (we appear in targets' in-sets)...
    for (const auto& [target, tier] : adj_[slot].out) {
        (void)tier;
        adj_[slot_of(target)].in.erase(id);
        --total_links_;
    }
    // ...and in-links (each source loses one out-link).
    for (ProfileId source : adj_[slot].in) {
        auto& src = adj_[slot_of(source)];
        auto it = src.out.find(id);
        --src.tier_count[ordinal(it->second)];
        --src.out_degree;
        src.out.erase(it);
        --total_links_;
    }
    adj_[slot] = Adjacency{};
    profiles_[slot] = Profile{};
    index_.erase(id);
    free_slots_.push_back(slot);
}

ProfileId Network::add_replacement(double age, double affinity, double sensibility, double influentiability) {
    if (free_slots_.empty())
        return add_profile(age, affinity, sensibility, influentiability);
    const std::size_t slot = free_slots_.back();
    free_slots_.pop_back();
    const ProfileId id = next_id_++;
    profiles_[slot] = {id, age, affinity, sensibility, influentiability};
    adj_[slot] = Adjacency{};
    index_[id] = slot;
    return id;
}

std::vector<ProfileId> Network::ids_ascending() const {
    std::vector<ProfileId> ids;
    ids.reserve(index_.size());
    for (const auto& [id, slot] : index_) {
        (void)slot;
        ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

void Network::add_link(ProfileId source, ProfileId target, Tier tier) {
    if (source == target)
        throw std::invalid_argument("self link");
    auto& src = adj_[slot_of(source)];
    if (!src.out.emplace(target, tier).second)
        throw std::invalid_argument("duplicate link");
    ++src.tier_count[ordinal(tier)];
    ++src.out_degree;
    adj_[slot_of(target)].in.insert(source);
    ++total_links_;
}

void Network::remove_link(ProfileId source, ProfileId target) {
    auto& src = adj_[slot_of(source)];
    auto it = src.out.find(target);
    if (it == src.out.end())
        throw std::invalid_argument("no such link");
    --src.tier_count[ordinal(it->second)];
    --src.out_degree;
    src.out.erase(it);
    adj_[slot_of(target)].in.erase(source);
    --total_links_;
}

void Network::set_tier(ProfileId source, ProfileId target, Tier tier) {
    auto& src = adj_[slot_of(source)];
    auto it = src.out.find(target);
    if (it == src.out.end())
        throw std::invalid_argument("no such link");
    --src.tier_count[ordinal(it->second)];
    it->second = tier;
    ++src.tier_count[ordinal(tier)];
}

bool Network::has_link(ProfileId source, ProfileId target) const {
    const auto& out = adj_[slot_of(source)].out;
    return out.find(target) != out.end();
}

Tier Network::link_tier(ProfileId source, ProfileId target) const {
    const auto& out = adj_[slot_of(source)].out;
    auto it = out.find(target);
    if (it == out.end())
        throw std::invalid_argument("no such link");
    return it->second;
}

const std::map<ProfileId, Tier>& Network::out_links(ProfileId source) const {
    return adj_[slot_of(source)].out;
}

const std::set<ProfileId>& Network::in_neighbors(ProfileId target) const {
    return adj_[slot_of(target)].in;
}

int Network::out_degree(ProfileId id) const {
    return adj_[slot_of(id)].out_degree;
}

int Network::tier_count(ProfileId id, Tier t) const {
    return adj_[slot_of(id)].tier_count[ordinal(t)];
}

const std::array<int, kTierCount>& Network::tier_counts(ProfileId id) const {
    return adj_[slot_of(id)].tier_count;
}

std::array<long, kTierCount> Network::global_tier_counts() const {
    std::array<long, kTierCount> counts{};
    for (const auto& [id, slot] : index_) {
        (void)id;
        for (int t = 0; t < kTierCount; ++t)
            counts[t] += adj_[slot].tier_count[t];
    }
    return counts;
}

std::vector<Link> Network::all_links() const {
    std::vector<Link> links;
    links.reserve(static_cast<std::size_t>(total_links_));
    for (ProfileId id : ids_ascending())
        for (const auto& [target, tier] : adj_[slot_of(id)].out)
            links.push_back({id, target, tier});
    return links;
}

void Network::audit_consistency() const {
    long total = 0;
    for (const auto& [id, slot] : index_) {
        if (profiles_[slot].id != id)
            throw std::logic_error("index/profile id mismatch");
        const auto& a = adj_[slot];
        std::array<int, kTierCount> counted{};
        for (const auto& [target, tier] : a.out) {
            if (!index_.count(target))
                throw std::logic_error("dangling out-link target");
            if (target == id)
                throw std::logic_error("self link");
            if (!adj_[slot_of(target)].in.count(id))
                throw std::logic_error("missing reverse entry");
            ++counted[ordinal(tier)];
        }
        for (int t = 0; t < kTierCount; ++t)
            if (counted[t] != a.tier_count[t])
                throw std::logic_error("tier counter out of sync");
        if (a.out_degree != static_cast<int>(a.out.size()))
            throw std::logic_error("out-degree counter out of sync");
        for (ProfileId source : a.in) {
            if (!index_.count(source))
                throw std::logic_error("dangling in-link source");
            const auto& src_out = adj_[slot_of(source)].out;
            if (src_out.find(id) == src_out.end())
                throw std::logic_error("in-set entry without forward link");
        }
        total += a.out_degree;
    }
    if (total != total_links_)
        throw std::logic_error("link total out of sync");
}

} // namespace affnet
