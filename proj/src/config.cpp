#include "affnet/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace affnet {

namespace {

bool is_blank(const std::string& text) {
    return text.find_first_not_of(" \t\r\n") == std::string::npos;
}

long get_integer(const nlohmann::json& value, const std::string& key, long lo, long hi) {
    if (!value.is_number_integer())
        throw std::runtime_error("config key '" + key + "' must be an integer");
    const auto v = value.get<long long>();
    if (v < lo || v > hi)
        throw std::runtime_error("config key '" + key + "' is out of range");
    return static_cast<long>(v);
}

double get_real(const nlohmann::json& value, const std::string& key) {
    if (!value.is_number())
        throw std::runtime_error("config key '" + key + "' must be a number");
    return value.get<double>();
}

} // namespace

void apply_config_text(const std::string& text, Params& p) {
    if (is_blank(text))
        return;

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::runtime_error("config must be a JSON object of key/value pairs");

    for (const auto& [key, value] : doc.items()) {
        if (key == "max-profiles") {
            p.max_profiles = static_cast<int>(get_integer(value, key, -1'000'000, 1'000'000));
        } else if (key == "max-network") {
            p.max_network = static_cast<int>(get_integer(value, key, -1'000'000, 1'000'000));
        } else if (key == "distortion") {
            p.distortion = get_real(value, key);
        } else if (key == "max-change") {
            p.max_change = get_real(value, key);
        } else if (key == "aff-radius") {
            p.aff_radius = get_real(value, key);
        } else if (key == "people-dead") {
            p.people_dead = static_cast<int>(get_integer(value, key, -1'000'000, 1'000'000));
        } else if (key == "steps") {
            p.steps = get_integer(value, key, -1'000'000'000, 1'000'000'000);
        } else if (key == "seed") {
            if (!value.is_number_integer() && !value.is_number_unsigned())
                throw std::runtime_error("config key 'seed' must be an integer");
            p.seed = value.get<std::uint64_t>();
        } else {
            throw std::runtime_error(
                "unknown config key '" + key +
                "' (expected one of: max-profiles, max-network, distortion, max-change, "
                "aff-radius, people-dead, steps, seed)");
        }
    }
}

void apply_config_file(const std::string& path, Params& p) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(buf.str(), p);
}

} // namespace affnet
