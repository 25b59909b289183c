#include "affnet/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace affnet {

double RandomStream::uniform(double lo, double hi) {
    if (lo > hi)
        throw std::invalid_argument("uniform: lo > hi");
    if (lo == hi)
        return lo;
    return lo + uniform01() * (hi - lo);
}

double RandomStream::gaussian(double mean, double sd) {
    if (sd < 0.0)
        throw std::invalid_argument("gaussian: sd < 0");
    if (sd == 0.0)
        return mean;
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + sd * z;
}

std::uint64_t RandomStream::below(std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("below: n == 0");
    // Reject the low remainder zone so every residue is equally likely.
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t x = eng_();
        if (x >= threshold)
            return x % n;
    }
}

std::vector<std::uint32_t> RandomStream::permutation(std::uint32_t n) {
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i)
        order[i] = i;
    for (std::uint32_t i = n; i > 1; --i) {
        const auto j = static_cast<std::uint32_t>(below(i));
        std::swap(order[i - 1], order[j]);
    }
    return order;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

StreamSet make_streams(std::uint64_t master_seed) {
    std::uint64_t state = master_seed;
    const std::uint64_t s_init = splitmix64(state);
    const std::uint64_t s_sched = splitmix64(state);
    const std::uint64_t s_percep = splitmix64(state);
    const std::uint64_t s_reject = splitmix64(state);
    const std::uint64_t s_mort = splitmix64(state);
    const std::uint64_t s_repl = splitmix64(state);
    return StreamSet{
        RandomStream(s_init),   RandomStream(s_sched), RandomStream(s_percep),
        RandomStream(s_reject), RandomStream(s_mort),  RandomStream(s_repl),
    };
}

} // namespace affnet
