#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "contact/error.hpp"
#include "contact/graph.hpp"

namespace contact {

/// Removal of one tree edge; side_a holds removed_edge.u, side_b holds removed_edge.v.
struct TreeSplit {
  Edge removed_edge;
  VertexSet side_a;
  VertexSet side_b;
};

enum class DecompositionKind { HighDegreeVertex, ManyMediumSubtrees, FewPieces };
enum class ClassifyMode { Level3, Level4 };

std::string to_string(DecompositionKind kind);
std::string to_string(ClassifyMode mode);

/// Outcome of classify_tree, with the thresholds that were applied so callers
/// can re-check the witness independently.
struct Decomposition {
  DecompositionKind kind = DecompositionKind::FewPieces;
  std::vector<VertexSet> parts;
  std::optional<Vertex> witness;  // high-degree vertex, or the centroid
  std::optional<int> level_k;     // 1..3 for Level4 ManyMediumSubtrees
  std::string branch;             // "degree", "hypJ", "hypI", "i", "ii", "iii", "iv"

  double log_n = 0;               // natural log of |T|
  double degree_threshold = 0;    // n / (log n)^p
  double part_size_floor = 0;     // lower bound on part sizes (ManyMediumSubtrees)
  double count_bound = 0;         // min part count (ManyMedium) or max (FewPieces)
};

/// Raised by iterated_split when the size guarantee runs out.
class InfeasibleSplit : public PreconditionError {
 public:
  InfeasibleSplit(std::size_t achieved, const std::string& what)
      : PreconditionError(what), achieved_(achieved) {}
  std::size_t achieved() const noexcept { return achieved_; }

 private:
  std::size_t achieved_;
};

/// The union of two parts and the shortest path joining them.
struct BridgeSubgraph {
  InducedSubgraph subgraph;
  std::size_t sigma = 0;     // |G_i| + |G_j| + dist - 1
  std::size_t distance = 0;  // dist(G_i, G_j)
};

/// Edge whose removal leaves two subtrees of size >= floor(n/d). Among the
/// qualifying edges the one with the smallest larger side wins, ties going to
/// the lexicographically smallest edge.
TreeSplit split_edge_balanced(const Graph& tree, std::size_t degree_bound);

/// Smallest-id vertex whose removal leaves components of size <= n/2.
Vertex centroid_vertex(const Graph& tree);

/// Components of tree minus x, ordered by the neighbor of x they contain.
std::vector<VertexSet> attached_subtrees(const Graph& tree, Vertex x);

/// Peels n_parts - 1 pieces off the tree by repeatedly splitting the larger
/// remaining piece; the final remainder is the last part.
std::vector<VertexSet> iterated_split(const Graph& tree, std::size_t n_parts, std::size_t min_size,
                                      std::size_t degree_bound);

/// Three-way case analysis of a tree around its centroid. Level3 uses the
/// exponent-10 thresholds, Level4 the (1 + eps) family with size bands k = 1..3.
Decomposition classify_tree(const Graph& tree, double a_const, double exponent_eps, ClassifyMode mode);

BridgeSubgraph bridge_subgraph(const Graph& tree, const VertexSet& part_i, const VertexSet& part_j);

/// A star of k vertices around a max-degree vertex, or the first k vertices of
/// a diametral path, whichever exists first; nullopt when neither is large enough.
std::optional<VertexSet> find_star_or_segment(const Graph& g, std::size_t k);

}  // namespace contact
