#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "contact/random.hpp"

namespace contact {

using Vertex = std::uint32_t;
using VertexSet = std::vector<Vertex>;  // sorted, duplicate-free

/// Undirected edge stored canonically with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Neighbor entry: the adjacent vertex and the id of the connecting edge.
struct Incidence {
  Vertex to = 0;
  std::uint32_t edge = 0;
};

/// Immutable finite simple graph on vertices 0..n-1.
///
/// Edges are kept sorted lexicographically; the position of an edge in
/// `edges()` is its id. Adjacency lists are sorted by neighbor id.
class Graph {
 public:
  Graph() = default;

  /// Validates and canonicalizes. Throws InvalidArgument on out-of-range
  /// endpoints and PreconditionError on self-loops or parallel edges.
  static Graph from_edges(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t n_vertices() const noexcept { return adjacency_.size(); }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Incidence> neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  std::size_t max_degree() const noexcept;

  /// Id of edge {a, b}, if present.
  std::optional<std::uint32_t> edge_id(Vertex a, Vertex b) const;

  bool is_connected() const;
  bool is_tree() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.edges_ == b.edges_ && a.n_vertices() == b.n_vertices(); }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// A subgraph relabeled to 0..k-1; `vertices[i]` is the original id of local vertex i.
struct InducedSubgraph {
  Graph graph;
  VertexSet vertices;
};

// Generators.
Graph make_line(std::size_t n);
Graph make_star(std::size_t n);
/// Uniform labeled tree decoded from a random Prüfer sequence.
Graph random_tree(std::size_t n, Seed seed);
/// Decodes a Prüfer sequence over n = code.size() + 2 vertices.
Graph tree_from_pruefer(std::span<const Vertex> code);

// Edge-list text format.
//
// One edge per line as "u v"; blank lines and lines starting with '#' are
// ignored, except for the directive "# vertices: N" which declares the vertex
// count (needed for isolated vertices). Without it n = 1 + max id.
Graph load_edge_list(std::string_view text);
std::string save_edge_list(const Graph& g);
Graph load_edge_list_file(const std::string& path);

// Structure queries.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);
/// Breadth-first distances from a set of sources; unreachable = SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& g, std::span<const Vertex> sources);
/// Shortest path between a and b (inclusive), neighbors explored in ascending id.
std::vector<Vertex> shortest_path(const Graph& g, Vertex a, Vertex b);
/// Vertex sets of connected components, ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g);
std::size_t diameter(const Graph& g);
bool is_line(const Graph& g);
bool is_star(const Graph& g);

/// Breadth-first spanning tree from vertex 0, neighbors in ascending id.
Graph spanning_tree(const Graph& g);

/// Normalizes an arbitrary vertex list into a VertexSet.
VertexSet make_vertex_set(std::vector<Vertex> v);

}  // namespace contact
