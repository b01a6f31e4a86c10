#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace dalnet {

// User-facing identifiers as they appear in network and pattern files.
using VertexId = std::int64_t;
using SegmentId = std::int64_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct VertexSpec {
  VertexId id = 0;
  std::optional<std::vector<double>> coords;
};

struct SegmentSpec {
  SegmentId id = 0;
  VertexId from = 0;
  VertexId to = 0;
  std::optional<double> length;
};

struct NetworkSpec {
  std::optional<VertexId> root;
  std::vector<VertexSpec> vertices;
  std::vector<SegmentSpec> segments;
};

struct Vertex {
  VertexId id = 0;
  std::optional<std::vector<double>> coords;
};

// A directed segment running from vertex index `tail` to vertex index `head`.
struct Segment {
  SegmentId id = 0;
  std::size_t tail = 0;
  std::size_t head = 0;
  double length = 0.0;
};

// A point u_i(t) on the network. `segment` is the dense segment index (the
// position in Network::segments()), not the user-facing SegmentId.
struct NetworkLocation {
  std::size_t segment = 0;
  double offset = 0.0;

  friend bool operator==(const NetworkLocation&, const NetworkLocation&) = default;
};

struct DirectedPath {
  std::vector<std::size_t> segments;  // dense segment indices
  double entry_offset = 0.0;
  double exit_offset = 0.0;
  double length = 0.0;
  std::int64_t split_product = 1;  // n_p: product of out-degrees at traversed junctions
};

// A path through whole segments between two vertices. `split_product`
// multiplies the out-degree of every vertex visited, both ends included.
struct VertexPath {
  std::vector<std::size_t> segments;
  double length = 0.0;
  std::int64_t split_product = 1;
};

struct RootPath {
  double distance = 0.0;
  std::vector<std::size_t> segments;  // dense indices, root segment first
};

struct BuildOptions {
  // Residual networks may carry segments whose transformed length is zero.
  bool allow_zero_length = false;
};

// An immutable directed acyclic linear network. All queries are const and
// safe to call concurrently.
class Network {
 public:
  static Network build(const NetworkSpec& spec, const BuildOptions& options = {});

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t segment_count() const noexcept { return segments_.size(); }
  const Segment& segment(std::size_t index) const { return segments_.at(index); }
  double length(std::size_t segment) const { return segments_.at(segment).length; }
  double total_length() const noexcept { return total_length_; }

  std::size_t segment_index(SegmentId id) const;
  std::size_t vertex_index(VertexId id) const;

  std::span<const std::size_t> out_segments(std::size_t vertex) const { return out_.at(vertex); }
  std::span<const std::size_t> in_segments(std::size_t vertex) const { return in_.at(vertex); }

  // Deterministic linear extension of the segment order; ties broken by
  // ascending SegmentId.
  std::span<const std::size_t> topological_order() const noexcept { return order_; }

  // True iff a directed path leads from segment `from` to segment `to`
  // (a segment does not reach itself).
  bool reaches(std::size_t from, std::size_t to) const;
  std::vector<std::size_t> upstream_segments(std::size_t segment) const;

  // Shortest directed distance between vertices; +inf when unreachable.
  double vertex_distance(std::size_t from, std::size_t to) const;
  // Shortest directed distance d(u, v) between locations.
  double distance(const NetworkLocation& u, const NetworkLocation& v) const;
  // Distance from a location to the tail vertex of `segment`.
  double distance_to_segment_start(const NetworkLocation& u, std::size_t segment) const;

  std::vector<DirectedPath> enumerate_paths(const NetworkLocation& u, const NetworkLocation& v,
                                            double max_length) const;
  std::vector<VertexPath> enumerate_vertex_paths(std::size_t from, std::size_t to,
                                                 double max_length) const;

  std::optional<std::size_t> root() const noexcept { return root_; }
  bool root_reaches_all() const noexcept;
  RootPath root_path(const NetworkLocation& u) const;
  double distance_from_root(const NetworkLocation& u) const;
  // Shortest path from the root to a vertex, tie-broken lexicographically.
  const RootPath& root_path_to_vertex(std::size_t vertex) const;

  bool is_out_tree() const;

  Network scaled(double factor) const;
  NetworkLocation allocate_vertex_point(std::size_t vertex) const;

  void check_location(const NetworkLocation& u) const;

  // Reconstruct a spec (for serialization).
  NetworkSpec to_spec() const;

 private:
  Network() = default;
  void finalize();

  std::vector<Vertex> vertices_;
  std::vector<Segment> segments_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<bool>> reach_;          // reach_[from][to]
  std::vector<std::vector<double>> vertex_dist_;  // all-pairs vertex distances
  std::unordered_map<SegmentId, std::size_t> segment_lookup_;
  std::unordered_map<VertexId, std::size_t> vertex_lookup_;
  std::optional<std::size_t> root_;
  std::vector<RootPath> root_paths_;  // per vertex; distance is +inf when unreachable
  double total_length_ = 0.0;
  bool allow_zero_length_ = false;
};

}  // namespace dalnet
