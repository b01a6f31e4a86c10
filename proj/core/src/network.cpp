#include "dalnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "dalnet/error.hpp"

namespace dalnet {

namespace {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

Network Network::build(const NetworkSpec& spec, const BuildOptions& options) {
  Network net;
  net.allow_zero_length_ = options.allow_zero_length;

  net.vertices_.reserve(spec.vertices.size());
  for (const auto& v : spec.vertices) {
    if (v.coords && v.coords->size() < 2) {
      throw Error(Errc::ParseError, "vertex " + std::to_string(v.id) + " has fewer than 2 coordinates");
    }
    if (!net.vertex_lookup_.emplace(v.id, net.vertices_.size()).second) {
      throw Error(Errc::DuplicateId, "vertex id " + std::to_string(v.id) + " declared twice");
    }
    net.vertices_.push_back({v.id, v.coords});
  }

  net.segments_.reserve(spec.segments.size());
  for (const auto& s : spec.segments) {
    const auto tail = net.vertex_lookup_.find(s.from);
    const auto head = net.vertex_lookup_.find(s.to);
    if (tail == net.vertex_lookup_.end() || head == net.vertex_lookup_.end()) {
      throw Error(Errc::DanglingVertexRef,
                  "segment " + std::to_string(s.id) + " references an undeclared vertex");
    }
    if (!net.segment_lookup_.emplace(s.id, net.segments_.size()).second) {
      throw Error(Errc::DuplicateId, "segment id " + std::to_string(s.id) + " declared twice");
    }
    if (tail->second == head->second) {
      throw Error(Errc::CycleDetected, "segment " + std::to_string(s.id) + " is a self-loop");
    }
    double length = 0.0;
    if (s.length) {
      length = *s.length;
    } else {
      const auto& a = net.vertices_[tail->second].coords;
      const auto& b = net.vertices_[head->second].coords;
      if (!a || !b) {
        throw Error(Errc::MissingLengthAndCoords,
                    "segment " + std::to_string(s.id) + " has no length and its endpoints lack coords");
      }
      if (a->size() != b->size()) {
        throw Error(Errc::ParseError,
                    "segment " + std::to_string(s.id) + " joins vertices of different dimension");
      }
      length = euclidean(*a, *b);
    }
    const bool ok = std::isfinite(length) && (length > 0.0 || (options.allow_zero_length && length == 0.0));
    if (!ok) {
      throw Error(Errc::NonpositiveLength, "segment " + std::to_string(s.id) + " has length " +
                                               std::to_string(length));
    }
    net.segments_.push_back({s.id, tail->second, head->second, length});
  }

  if (spec.root) {
    const auto it = net.vertex_lookup_.find(*spec.root);
    if (it == net.vertex_lookup_.end()) {
      throw Error(Errc::UnknownVertex, "root vertex " + std::to_string(*spec.root) + " is not declared");
    }
    net.root_ = it->second;
  }

  net.finalize();
  return net;
}

void Network::finalize() {
  const std::size_t nv = vertices_.size();
  const std::size_t ns = segments_.size();

  out_.assign(nv, {});
  in_.assign(nv, {});
  total_length_ = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    out_[segments_[i].tail].push_back(i);
    in_[segments_[i].head].push_back(i);
    total_length_ += segments_[i].length;
  }
  const auto by_id = [this](std::size_t a, std::size_t b) { return segments_[a].id < segments_[b].id; };
  for (auto& list : out_) std::sort(list.begin(), list.end(), by_id);
  for (auto& list : in_) std::sort(list.begin(), list.end(), by_id);

  // Kahn's algorithm over the segment-succession DAG.
  std::vector<std::size_t> pending(ns);
  for (std::size_t i = 0; i < ns; ++i) pending[i] = in_[segments_[i].tail].size();
  const auto heap_cmp = [this](std::size_t a, std::size_t b) { return segments_[a].id > segments_[b].id; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(heap_cmp)> ready(heap_cmp);
  for (std::size_t i = 0; i < ns; ++i) {
    if (pending[i] == 0) ready.push(i);
  }
  order_.clear();
  order_.reserve(ns);
  while (!ready.empty()) {
    const std::size_t s = ready.top();
    ready.pop();
    order_.push_back(s);
    for (std::size_t next : out_[segments_[s].head]) {
      if (--pending[next] == 0) ready.push(next);
    }
  }
  if (order_.size() != ns) {
    // Every unprocessed segment has an unprocessed predecessor; walking
    // backwards must revisit a segment, which closes a cycle.
    std::size_t cur = 0;
    while (pending[cur] == 0) ++cur;
    std::vector<std::size_t> walk;
    std::vector<int> seen(ns, -1);
    while (seen[cur] < 0) {
      seen[cur] = static_cast<int>(walk.size());
      walk.push_back(cur);
      for (std::size_t prev : in_[segments_[cur].tail]) {
        if (pending[prev] != 0) {
          cur = prev;
          break;
        }
      }
    }
    std::ostringstream msg;
    msg << "directed cycle through segments";
    for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
      msg << ' ' << segments_[*it].id;
      if (*it == cur) break;
    }
    throw Error(Errc::CycleDetected, msg.str());
  }

  reach_.assign(ns, std::vector<bool>(ns, false));
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    const std::size_t s = *it;
    for (std::size_t next : out_[segments_[s].head]) {
      reach_[s][next] = true;
      for (std::size_t k = 0; k < ns; ++k) {
        if (reach_[next][k]) reach_[s][k] = true;
      }
    }
  }

  // Dijkstra from every vertex.
  vertex_dist_.assign(nv, std::vector<double>(nv, kInfinity));
  using Item = std::pair<double, std::size_t>;
  for (std::size_t src = 0; src < nv; ++src) {
    auto& dist = vertex_dist_[src];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[src] = 0.0;
    queue.emplace(0.0, src);
    while (!queue.empty()) {
      const auto [d, v] = queue.top();
      queue.pop();
      if (d > dist[v]) continue;
      for (std::size_t s : out_[v]) {
        const std::size_t w = segments_[s].head;
        const double nd = d + segments_[s].length;
        if (nd < dist[w]) {
          dist[w] = nd;
          queue.emplace(nd, w);
        }
      }
    }
  }

  root_paths_.clear();
  if (root_) {
    root_paths_.assign(nv, RootPath{kInfinity, {}});
    root_paths_[*root_].distance = 0.0;
    const auto ids_less = [this](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                          [this](std::size_t x, std::size_t y) {
                                            return segments_[x].id < segments_[y].id;
                                          });
    };
    for (std::size_t s : order_) {
      const RootPath& from = root_paths_[segments_[s].tail];
      if (!std::isfinite(from.distance)) continue;
      RootPath candidate{from.distance + segments_[s].length, from.segments};
      candidate.segments.push_back(s);
      RootPath& to = root_paths_[segments_[s].head];
      if (!std::isfinite(to.distance) ||
          (nearly_equal(candidate.distance, to.distance) ? ids_less(candidate.segments, to.segments)
                                                         : candidate.distance < to.distance)) {
        to = std::move(candidate);
      }
    }
  }
}

std::size_t Network::segment_index(SegmentId id) const {
  const auto it = segment_lookup_.find(id);
  if (it == segment_lookup_.end()) throw Error(Errc::UnknownSegment, "segment id " + std::to_string(id));
  return it->second;
}

std::size_t Network::vertex_index(VertexId id) const {
  const auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end()) throw Error(Errc::UnknownVertex, "vertex id " + std::to_string(id));
  return it->second;
}

bool Network::reaches(std::size_t from, std::size_t to) const {
  if (from >= segments_.size() || to >= segments_.size()) {
    throw Error(Errc::UnknownSegment, "segment index out of range");
  }
  return reach_[from][to];
}

std::vector<std::size_t> Network::upstream_segments(std::size_t segment) const {
  if (segment >= segments_.size()) throw Error(Errc::UnknownSegment, "segment index out of range");
  std::vector<std::size_t> result;
  for (std::size_t j = 0; j < segments_.size(); ++j) {
    if (reach_[j][segment]) result.push_back(j);
  }
  return result;
}

double Network::vertex_distance(std::size_t from, std::size_t to) const {
  return vertex_dist_.at(from).at(to);
}

void Network::check_location(const NetworkLocation& u) const {
  if (u.segment >= segments_.size()) {
    throw Error(Errc::InvalidLocation, "segment index " + std::to_string(u.segment) + " out of range");
  }
  const double len = segments_[u.segment].length;
  if (!std::isfinite(u.offset) || u.offset < 0.0 || u.offset > len) {
    throw Error(Errc::InvalidLocation, "offset " + std::to_string(u.offset) + " outside [0, " +
                                           std::to_string(len) + "] on segment " +
                                           std::to_string(segments_[u.segment].id));
  }
}

double Network::distance(const NetworkLocation& u, const NetworkLocation& v) const {
  check_location(u);
  check_location(v);
  if (u == v) return 0.0;
  if (u.segment == v.segment) {
    return u.offset < v.offset ? v.offset - u.offset : kInfinity;
  }
  const Segment& su = segments_[u.segment];
  const Segment& sv = segments_[v.segment];
  const double mid = vertex_dist_[su.head][sv.tail];
  if (!std::isfinite(mid)) return kInfinity;
  return (su.length - u.offset) + mid + v.offset;
}

double Network::distance_to_segment_start(const NetworkLocation& u, std::size_t segment) const {
  const Segment& su = segments_[u.segment];
  const double mid = vertex_dist_[su.head][segments_.at(segment).tail];
  if (!std::isfinite(mid)) return kInfinity;
  return (su.length - u.offset) + mid;
}

std::vector<VertexPath> Network::enumerate_vertex_paths(std::size_t from, std::size_t to,
                                                        double max_length) const {
  std::vector<VertexPath> result;
  if (from >= vertices_.size() || to >= vertices_.size()) {
    throw Error(Errc::UnknownVertex, "vertex index out of range");
  }
  if (!(vertex_dist_[from][to] <= max_length)) return result;

  std::vector<std::size_t> stack;
  const std::function<void(std::size_t, double, std::int64_t)> visit =
      [&](std::size_t v, double length, std::int64_t product) {
        const auto degree = static_cast<std::int64_t>(std::max<std::size_t>(out_[v].size(), 1));
        if (v == to) {
          result.push_back({stack, length, product * degree});
          return;
        }
        for (std::size_t s : out_[v]) {
          const std::size_t w = segments_[s].head;
          const double next = length + segments_[s].length;
          if (!(next + vertex_dist_[w][to] <= max_length)) continue;
          stack.push_back(s);
          visit(w, next, product * degree);
          stack.pop_back();
        }
      };
  visit(from, 0.0, 1);
  return result;
}

std::vector<DirectedPath> Network::enumerate_paths(const NetworkLocation& u, const NetworkLocation& v,
                                                   double max_length) const {
  check_location(u);
  check_location(v);
  std::vector<DirectedPath> result;
  if (u.segment == v.segment) {
    if (u.offset < v.offset && v.offset - u.offset <= max_length) {
      result.push_back({{u.segment}, u.offset, v.offset, v.offset - u.offset, 1});
    }
    return result;
  }
  const Segment& su = segments_[u.segment];
  const Segment& sv = segments_[v.segment];
  const double ends = (su.length - u.offset) + v.offset;
  for (auto& vp : enumerate_vertex_paths(su.head, sv.tail, max_length - ends)) {
    DirectedPath p;
    p.segments.reserve(vp.segments.size() + 2);
    p.segments.push_back(u.segment);
    p.segments.insert(p.segments.end(), vp.segments.begin(), vp.segments.end());
    p.segments.push_back(v.segment);
    p.entry_offset = u.offset;
    p.exit_offset = v.offset;
    p.length = ends + vp.length;
    p.split_product = vp.split_product;
    result.push_back(std::move(p));
  }
  return result;
}

bool Network::root_reaches_all() const noexcept {
  if (!root_) return false;
  for (const auto& s : segments_) {
    if (!std::isfinite(root_paths_[s.tail].distance)) return false;
  }
  return true;
}

const RootPath& Network::root_path_to_vertex(std::size_t vertex) const {
  if (!root_) throw Error(Errc::NoRootDesignated, "network has no root vertex");
  const RootPath& p = root_paths_.at(vertex);
  if (!std::isfinite(p.distance)) {
    throw Error(Errc::RootCannotReach, "root cannot reach vertex " + std::to_string(vertices_[vertex].id));
  }
  return p;
}

RootPath Network::root_path(const NetworkLocation& u) const {
  check_location(u);
  RootPath p = root_path_to_vertex(segments_[u.segment].tail);
  p.distance += u.offset;
  p.segments.push_back(u.segment);
  return p;
}

double Network::distance_from_root(const NetworkLocation& u) const {
  check_location(u);
  return root_path_to_vertex(segments_[u.segment].tail).distance + u.offset;
}

bool Network::is_out_tree() const {
  if (!root_ || !root_reaches_all()) return false;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const std::size_t expected = (v == *root_) ? 0 : 1;
    if (in_[v].size() != expected) return false;
  }
  return true;
}

Network Network::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(Errc::NonpositiveFactor, "scale factor must be positive, got " + std::to_string(factor));
  }
  NetworkSpec spec = to_spec();
  for (auto& v : spec.vertices) v.coords.reset();
  for (std::size_t i = 0; i < spec.segments.size(); ++i) {
    spec.segments[i].length = segments_[i].length * factor;
  }
  return build(spec, BuildOptions{allow_zero_length_});
}

NetworkLocation Network::allocate_vertex_point(std::size_t vertex) const {
  if (vertex >= vertices_.size()) throw Error(Errc::UnknownVertex, "vertex index out of range");
  const auto& ins = in_[vertex];
  const auto& outs = out_[vertex];
  if (ins.empty() && outs.empty()) {
    throw Error(Errc::IsolatedVertex, "vertex " + std::to_string(vertices_[vertex].id) + " has no segments");
  }
  if (root_ && *root_ == vertex && outs.size() == 1 && ins.empty()) {
    return {outs.front(), 0.0};
  }
  if (ins.size() == 1) {
    return {ins.front(), segments_[ins.front()].length};
  }
  throw Error(Errc::AmbiguousAllocation,
              "vertex " + std::to_string(vertices_[vertex].id) + " has in-degree " +
                  std::to_string(ins.size()) + "; no unique segment to allocate to");
}

NetworkSpec Network::to_spec() const {
  NetworkSpec spec;
  if (root_) spec.root = vertices_[*root_].id;
  for (const auto& v : vertices_) spec.vertices.push_back({v.id, v.coords});
  for (const auto& s : segments_) {
    spec.segments.push_back({s.id, vertices_[s.tail].id, vertices_[s.head].id, s.length});
  }
  return spec;
}

}  // namespace dalnet
