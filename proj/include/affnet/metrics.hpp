#ifndef AFFNET_METRICS_HPP
#define AFFNET_METRICS_HPP

#include <array>

#include "affnet/network.hpp"

namespace affnet {

// One observation row, computed on a snapshot after each step.
struct MetricsRow {
    long step = 0;
    double density = 0.0;
    double mean_net_size = 0.0;
    double clustering = 0.0;
    double mean_affinity = 0.0;
    double std_affinity = 0.0;
    long low_outliers = 0;
    long high_outliers = 0;
    std::array<long, kTierCount> tier_counts{};
};

// Directed links over N(N-1) possible ones; 0 for fewer than two profiles.
double network_density(const Network& net);

// Average out-degree. Rejects an empty network.
double mean_personal_network_size(const Network& net);

// Mean local clustering over the undirected projection (an edge joins two
// profiles linked in either direction); nodes of degree < 2 contribute 0.
double clustering_coefficient(const Network& net);

// Profiles with out-degree <= 10% of max_network (low) or >= 70% (high).
// Thresholds are inclusive and compared exactly via integer cross products.
std::pair<long, long> outlier_counts(const Network& net, int max_network);

// Population mean and population standard deviation of all affinities.
std::pair<double, double> affinity_stats(const Network& net);

std::array<long, kTierCount> link_tier_counts(const Network& net);

MetricsRow compute_metrics(const Network& net, int max_network);

} // namespace affnet

#endif
