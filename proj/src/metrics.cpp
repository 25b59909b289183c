#include "affnet/metrics.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace affnet {

double network_density(const Network& net) {
    const auto n = static_cast<long>(net.size());
    if (n < 2)
        return 0.0;
    return static_cast<double>(net.total_links()) / (static_cast<double>(n) * (n - 1));
}

double mean_personal_network_size(const Network& net) {
    if (net.size() == 0)
        throw std::invalid_argument("mean_personal_network_size: empty network");
    return static_cast<double>(net.total_links()) / static_cast<double>(net.size());
}

double clustering_coefficient(const Network& net) {
    if (net.size() == 0)
        throw std::invalid_argument("clustering_coefficient: empty network");
    const std::vector<ProfileId> ids = net.ids_ascending();
    const std::size_t n = ids.size();

    // Undirected projection as bit rows; neighbour intersections are popcounts.
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> rows(n * words, 0);
    std::vector<std::size_t> pos(ids.empty() ? 0 : ids.back() + 1);
    for (std::size_t i = 0; i < n; ++i)
        pos[ids[i]] = i;
    auto set_edge = [&](std::size_t a, std::size_t b) {
        rows[a * words + b / 64] |= std::uint64_t{1} << (b % 64);
        rows[b * words + a / 64] |= std::uint64_t{1} << (a % 64);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [target, tier] : net.out_links(ids[i])) {
            (void)tier;
            set_edge(i, pos[target]);
        }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t* row = &rows[i * words];
        int degree = 0;
        for (std::size_t w = 0; w < words; ++w)
            degree += std::popcount(row[w]);
        if (degree < 2)
            continue;
        // Twice the edge count among neighbours: sum of |N(u) ∩ N(i)| over u in N(i).
        long shared = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                const std::uint64_t* other = &rows[u * words];
                for (std::size_t v = 0; v < words; ++v)
                    shared += std::popcount(row[v] & other[v]);
            }
        }
        total += static_cast<double>(shared) / (static_cast<double>(degree) * (degree - 1));
    }
    return total / static_cast<double>(n);
}

std::pair<long, long> outlier_counts(const Network& net, int max_network) {
    if (max_network < 1)
        throw std::invalid_argument("outlier_counts: max_network must be >= 1");
    long low = 0;
    long high = 0;
    for (ProfileId id : net.ids_ascending()) {
        const long deg = net.out_degree(id);
        if (10 * deg <= max_network)
            ++low;
        if (10 * deg >= 7L * max_network)
            ++high;
    }
    return {low, high};
}

std::pair<double, double> affinity_stats(const Network& net) {
    if (net.size() == 0)
        throw std::invalid_argument("affinity_stats: empty network");
    const std::vector<ProfileId> ids = net.ids_ascending();
    double sum = 0.0;
    for (ProfileId id : ids)
        sum += net.profile(id).affinity;
    const double mean = sum / static_cast<double>(ids.size());
    double sq = 0.0;
    for (ProfileId id : ids) {
        const double d = net.profile(id).affinity - mean;
        sq += d * d;
    }
    return {mean, std::sqrt(sq / static_cast<double>(ids.size()))};
}

std::array<long, kTierCount> link_tier_counts(const Network& net) {
    return net.global_tier_counts();
}

MetricsRow compute_metrics(const Network& net, int max_network) {
    MetricsRow row;
    row.step = net.step_index();
    row.density = network_density(net);
    row.mean_net_size = mean_personal_network_size(net);
    row.clustering = clustering_coefficient(net);
    const auto [mean, sd] = affinity_stats(net);
    row.mean_affinity = mean;
    row.std_affinity = sd;
    const auto [low, high] = outlier_counts(net, max_network);
    row.low_outliers = low;
    row.high_outliers = high;
    row.tier_counts = link_tier_counts(net);
    return row;
}

} // namespace affnet
