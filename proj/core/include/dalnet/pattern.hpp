#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "dalnet/network.hpp"

namespace dalnet {

using PointId = std::size_t;

// Offset along a segment plus a 0-based mark (always 0 for unmarked patterns).
struct MarkedOffset {
  double offset = 0.0;
  int mark = 0;
};

struct PointRecord {
  std::size_t segment = 0;
  double offset = 0.0;
  int mark = 0;
};

// Points grouped by dense segment index, each group sorted by offset.
using SegmentPoints = std::span<const std::vector<MarkedOffset>>;

// A finite point pattern on a network, optionally carrying marks from a
// finite mark space {0, ..., mark_count - 1}. Point ids run through the
// segments in index order and, within a segment, by increasing offset.
class PointPattern {
 public:
  PointPattern(std::shared_ptr<const Network> net, std::vector<PointRecord> points, int mark_count = 1,
               bool marked = false);
  PointPattern(std::shared_ptr<const Network> net, std::vector<std::vector<MarkedOffset>> by_segment,
               int mark_count = 1, bool marked = false);

  const Network& network() const noexcept { return *net_; }
  const std::shared_ptr<const Network>& network_ptr() const noexcept { return net_; }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool marked() const noexcept { return marked_; }
  int mark_count() const noexcept { return mark_count_; }

  std::span<const MarkedOffset> on_segment(std::size_t segment) const { return by_segment_.at(segment); }
  SegmentPoints by_segment() const noexcept { return by_segment_; }

  PointRecord point(PointId id) const;
  NetworkLocation location(PointId id) const;
  PointId first_id(std::size_t segment) const { return first_id_.at(segment); }
  std::vector<PointRecord> points() const;
  std::size_t count_with_mark(int mark) const;

  // The sub-pattern of points carrying `mark` (kept as an unmarked pattern).
  PointPattern restricted_to_mark(int mark) const;

 private:
  void validate_and_index();

  std::shared_ptr<const Network> net_;
  std::vector<std::vector<MarkedOffset>> by_segment_;
  std::vector<PointId> first_id_;
  std::size_t size_ = 0;
  int mark_count_ = 1;
  bool marked_ = false;
};

struct IntereventRecord {
  PointId child = 0;
  PointId parent = 0;
  double distance = 0.0;
  bool crossing = false;  // parent and child lie on different segments
};

std::vector<PointId> ancestors(const PointPattern& pattern, PointId x);
std::vector<PointId> descendants(const PointPattern& pattern, PointId x);
// Ancestors joined to x by at least one directed path free of other points.
std::vector<PointId> parents(const PointPattern& pattern, PointId x);
std::vector<PointId> children(const PointPattern& pattern, PointId x);

std::vector<IntereventRecord> interevent_distances(const PointPattern& pattern);

// Points y with y -> u.
PointPattern history_before(const PointPattern& pattern, const NetworkLocation& u);

}  // namespace dalnet
