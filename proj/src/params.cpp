#include "affnet/params.hpp"

#include <sstream>
#include <stdexcept>

namespace affnet {

std::vector<ParamViolation> validate_params(const Params& p) {
    std::vector<ParamViolation> v;
    auto bad = [&v](const char* field, const std::string& msg) { v.push_back({field, msg}); };

    if (p.max_profiles < 2)
        bad("max-profiles", "must be at least 2");
    if (p.max_network < 1)
        bad("max-network", "must be at least 1");
    else if (p.max_network > p.max_profiles - 1)
        bad("max-network", "must be at most max-profiles - 1 = " + std::to_string(p.max_profiles - 1));
    if (p.distortion < 0.0)
        bad("distortion", "must be >= 0");
    if (p.max_change < 0.0 || p.max_change > 1.0)
        bad("max-change", "must lie in [0, 1]");
    if (p.aff_radius < 0.0 || p.aff_radius > 1.0)
        bad("aff-radius", "must lie in [0, 1]");
    if (p.people_dead < 0 || p.people_dead > p.max_profiles)
        bad("people-dead", "must lie in [0, max-profiles]");
    if (p.steps < 0)
        bad("steps", "must be >= 0");
    return v;
}

void require_valid(const Params& p) {
    const auto violations = validate_params(p);
    if (violations.empty())
        return;
    std::ostringstream msg;
    msg << "invalid parameters:";
    for (const auto& v : violations)
        msg << " [" << v.field << ": " << v.message << "]";
    throw std::invalid_argument(msg.str());
}

} // namespace affnet
