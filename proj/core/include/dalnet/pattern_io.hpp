#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "dalnet/pattern.hpp"

namespace dalnet {

// CSV with header `segment_id,offset` or `segment_id,offset,mark`. Marks are
// integer labels 1..K; lines starting with '#' are comments. Points at offset
// 0 or at the segment length sit on a vertex and are re-allocated with
// Network::allocate_vertex_point.
PointPattern parse_pattern_csv(const std::string& text, std::shared_ptr<const Network> net,
                               std::optional<int> mark_count = std::nullopt);
PointPattern read_pattern(const std::filesystem::path& path, std::shared_ptr<const Network> net,
                          std::optional<int> mark_count = std::nullopt);

std::string pattern_to_csv(const PointPattern& pattern);
void write_pattern(const PointPattern& pattern, const std::filesystem::path& path);

}  // namespace dalnet
