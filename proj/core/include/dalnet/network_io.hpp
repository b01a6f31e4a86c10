#pragma once

#include <filesystem>
#include <string>

#include "dalnet/network.hpp"

namespace dalnet {

// JSON layout:
//   {"root": <id|null>, "vertices": [{"id": 1, "coords": [x, y]}],
//    "segments": [{"id": 1, "from": 1, "to": 2, "length": 3.0}]}
// "coords" and "length" are optional; unknown keys are rejected.
NetworkSpec parse_network_json(const std::string& text);
NetworkSpec read_network_spec(const std::filesystem::path& path);
Network read_network(const std::filesystem::path& path);

std::string network_to_json(const Network& net);
void write_network(const Network& net, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dalnet
