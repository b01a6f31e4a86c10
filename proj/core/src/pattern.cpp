#include "dalnet/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dalnet/error.hpp"

namespace dalnet {

PointPattern::PointPattern(std::shared_ptr<const Network> net, std::vector<PointRecord> points, int mark_count,
                           bool marked)
    : net_(std::move(net)), mark_count_(mark_count), marked_(marked) {
  if (!net_) throw Error(Errc::InvalidParameter, "point pattern needs a network");
  by_segment_.assign(net_->segment_count(), {});
  for (const auto& p : points) {
    if (p.segment >= by_segment_.size()) {
      throw Error(Errc::InvalidLocation, "point on unknown segment index " + std::to_string(p.segment));
    }
    by_segment_[p.segment].push_back({p.offset, p.mark});
  }
  validate_and_index();
}

PointPattern::PointPattern(std::shared_ptr<const Network> net, std::vector<std::vector<MarkedOffset>> by_segment,
                           int mark_count, bool marked)
    : net_(std::move(net)), by_segment_(std::move(by_segment)), mark_count_(mark_count), marked_(marked) {
  if (!net_) throw Error(Errc::InvalidParameter, "point pattern needs a network");
  if (by_segment_.size() != net_->segment_count()) {
    throw Error(Errc::InvalidParameter, "per-segment point lists do not match the network");
  }
  validate_and_index();
}

void PointPattern::validate_and_index() {
  if (mark_count_ < 1) throw Error(Errc::InvalidParameter, "mark space must be non-empty");
  first_id_.assign(by_segment_.size(), 0);
  size_ = 0;
  for (std::size_t s = 0; s < by_segment_.size(); ++s) {
    auto& pts = by_segment_[s];
    std::stable_sort(pts.begin(), pts.end(),
                     [](const MarkedOffset& a, const MarkedOffset& b) { return a.offset < b.offset; });
    const Segment& seg = net_->segment(s);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto& p = pts[k];
      if (!std::isfinite(p.offset) || p.offset < 0.0 || p.offset > seg.length) {
        throw Error(Errc::InvalidLocation, "offset " + std::to_string(p.offset) + " outside segment " +
                                               std::to_string(seg.id));
      }
      if (p.mark < 0 || p.mark >= mark_count_) {
        throw Error(Errc::UnknownMark, "mark " + std::to_string(p.mark + 1) + " outside the mark space");
      }
      if (k > 0 && pts[k - 1].offset == p.offset) {
        throw Error(Errc::DuplicateLocation, "two points at offset " + std::to_string(p.offset) +
                                                 " on segment " + std::to_string(seg.id));
      }
    }
    first_id_[s] = size_;
    size_ += pts.size();
  }
  // A vertex point may be written either as the end of one segment or the
  // start of another; both spellings denote the same location.
  for (std::size_t s = 0; s < by_segment_.size(); ++s) {
    const auto& pts = by_segment_[s];
    if (pts.empty() || pts.back().offset != net_->length(s)) continue;
    for (std::size_t next : net_->out_segments(net_->segment(s).head)) {
      const auto& other = by_segment_[next];
      if (!other.empty() && other.front().offset == 0.0) {
        throw Error(Errc::DuplicateLocation, "two points at the vertex joining segments " +
                                                 std::to_string(net_->segment(s).id) + " and " +
                                                 std::to_string(net_->segment(next).id));
      }
    }
  }
}

PointRecord PointPattern::point(PointId id) const {
  if (id >= size_) throw Error(Errc::UnknownPoint, "point id " + std::to_string(id));
  const auto it = std::upper_bound(first_id_.begin(), first_id_.end(), id);
  std::size_t s = static_cast<std::size_t>(it - first_id_.begin()) - 1;
  // Skip empty segments that share the same first id.
  while (id - first_id_[s] >= by_segment_[s].size()) ++s;
  const auto& p = by_segment_[s][id - first_id_[s]];
  return {s, p.offset, p.mark};
}

NetworkLocation PointPattern::location(PointId id) const {
  const PointRecord p = point(id);
  return {p.segment, p.offset};
}

std::vector<PointRecord> PointPattern::points() const {
  std::vector<PointRecord> out;
  out.reserve(size_);
  for (std::size_t s = 0; s < by_segment_.size(); ++s) {
    for (const auto& p : by_segment_[s]) out.push_back({s, p.offset, p.mark});
  }
  return out;
}

std::size_t PointPattern::count_with_mark(int mark) const {
  std::size_t n = 0;
  for (const auto& pts : by_segment_) {
    n += static_cast<std::size_t>(std::count_if(pts.begin(), pts.end(), [mark](const MarkedOffset& p) {
      return p.mark == mark;
    }));
  }
  return n;
}

PointPattern PointPattern::restricted_to_mark(int mark) const {
  std::vector<std::vector<MarkedOffset>> kept(by_segment_.size());
  for (std::size_t s = 0; s < by_segment_.size(); ++s) {
    for (const auto& p : by_segment_[s]) {
      if (p.mark == mark) kept[s].push_back({p.offset, 0});
    }
  }
  return PointPattern(net_, std::move(kept));
}

namespace {

// Vertices from which `target` is reachable through point-free segments.
std::vector<bool> empty_reach_backward(const PointPattern& pattern, std::size_t target) {
  const Network& net = pattern.network();
  std::vector<bool> seen(net.vertex_count(), false);
  std::vector<std::size_t> stack{target};
  seen[target] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t s : net.in_segments(v)) {
      if (!pattern.on_segment(s).empty()) continue;
      const std::size_t w = net.segment(s).tail;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<bool> empty_reach_forward(const PointPattern& pattern, std::size_t source) {
  const Network& net = pattern.network();
  std::vector<bool> seen(net.vertex_count(), false);
  std::vector<std::size_t> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t s : net.out_segments(v)) {
      if (!pattern.on_segment(s).empty()) continue;
      const std::size_t w = net.segment(s).head;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<PointId> ancestors(const PointPattern& pattern, PointId x) {
  const PointRecord px = pattern.point(x);
  const Network& net = pattern.network();
  std::vector<PointId> result;
  for (std::size_t s = 0; s < net.segment_count(); ++s) {
    const auto pts = pattern.on_segment(s);
    if (s == px.segment) {
      for (std::size_t k = 0; k < pts.size() && pts[k].offset < px.offset; ++k) {
        result.push_back(pattern.first_id(s) + k);
      }
    } else if (net.reaches(s, px.segment)) {
      for (std::size_t k = 0; k < pts.size(); ++k) result.push_back(pattern.first_id(s) + k);
    }
  }
  return result;
}

std::vector<PointId> descendants(const PointPattern& pattern, PointId x) {
  const PointRecord px = pattern.point(x);
  const Network& net = pattern.network();
  std::vector<PointId> result;
  for (std::size_t s = 0; s < net.segment_count(); ++s) {
    const auto pts = pattern.on_segment(s);
    if (s == px.segment) {
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (pts[k].offset > px.offset) result.push_back(pattern.first_id(s) + k);
      }
    } else if (net.reaches(px.segment, s)) {
      for (std::size_t k = 0; k < pts.size(); ++k) result.push_back(pattern.first_id(s) + k);
    }
  }
  return result;
}

std::vector<PointId> parents(const PointPattern& pattern, PointId x) {
  const PointRecord px = pattern.point(x);
  const std::size_t rank = x - pattern.first_id(px.segment);
  if (rank > 0) return {x - 1};

  const Network& net = pattern.network();
  const auto open = empty_reach_backward(pattern, net.segment(px.segment).tail);
  std::vector<PointId> result;
  for (std::size_t s = 0; s < net.segment_count(); ++s) {
    const auto pts = pattern.on_segment(s);
    if (s == px.segment || pts.empty()) continue;
    if (open[net.segment(s).head]) result.push_back(pattern.first_id(s) + pts.size() - 1);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<PointId> children(const PointPattern& pattern, PointId x) {
  const PointRecord px = pattern.point(x);
  const auto own = pattern.on_segment(px.segment);
  const std::size_t rank = x - pattern.first_id(px.segment);
  if (rank + 1 < own.size()) return {x + 1};

  const Network& net = pattern.network();
  const auto open = empty_reach_forward(pattern, net.segment(px.segment).head);
  std::vector<PointId> result;
  for (std::size_t s = 0; s < net.segment_count(); ++s) {
    const auto pts = pattern.on_segment(s);
    if (s == px.segment || pts.empty()) continue;
    if (open[net.segment(s).tail]) result.push_back(pattern.first_id(s));
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<IntereventRecord> interevent_distances(const PointPattern& pattern) {
  std::vector<IntereventRecord> records;
  const Network& net = pattern.network();
  for (PointId child = 0; child < pattern.size(); ++child) {
    const NetworkLocation to = pattern.location(child);
    for (PointId parent : parents(pattern, child)) {
      const NetworkLocation from = pattern.location(parent);
      records.push_back({child, parent, net.distance(from, to), from.segment != to.segment});
    }
  }
  return records;
}

PointPattern history_before(const PointPattern& pattern, const NetworkLocation& u) {
  const Network& net = pattern.network();
  net.check_location(u);
  std::vector<std::vector<MarkedOffset>> kept(net.segment_count());
  for (std::size_t s = 0; s < net.segment_count(); ++s) {
    const auto pts = pattern.on_segment(s);
    if (s == u.segment) {
      for (const auto& p : pts) {
        if (p.offset < u.offset) kept[s].push_back(p);
      }
    } else if (net.reaches(s, u.segment)) {
      kept[s].assign(pts.begin(), pts.end());
    }
  }
  return PointPattern(pattern.network_ptr(), std::move(kept), pattern.mark_count(), pattern.marked());
}

}  // namespace dalnet
