#ifndef AFFNET_CONFIG_HPP
#define AFFNET_CONFIG_HPP

#include <string>

#include "affnet/params.hpp"

namespace affnet {

// Applies a JSON config document onto `p`. Recognized keys: max-profiles,
// max-network, distortion, max-change, aff-radius, people-dead, steps, seed;
// anything else is an error (catches typos). An empty document leaves the
// defaults untouched. Throws std::runtime_error naming the key and reason.
void apply_config_text(const std::string& text, Params& p);

// Same, reading the document from a file.
void apply_config_file(const std::string& path, Params& p);

} // namespace affnet

#endif
