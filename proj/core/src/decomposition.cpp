#include "contact/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace contact {

namespace {

constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

struct RootedTree {
  std::vector<Vertex> parent;
  std::vector<Vertex> order;  // BFS order from the root
  std::vector<std::size_t> subtree;
};

RootedTree root_tree(const Graph& t, Vertex root) {
  RootedTree r;
  const std::size_t n = t.n_vertices();
  r.parent.assign(n, kNone);
  r.subtree.assign(n, 1);
  r.order.reserve(n);
  r.parent[root] = root;
  r.order.push_back(root);
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    Vertex x = r.order[i];
    for (const auto& inc : t.neighbors(x)) {
      if (r.parent[inc.to] == kNone) {
        r.parent[inc.to] = x;
        r.order.push_back(inc.to);
      }
    }
  }
  for (std::size_t i = r.order.size(); i-- > 1;) {
    Vertex x = r.order[i];
    r.subtree[r.parent[x]] += r.subtree[x];
  }
  return r;
}

void require_tree(const Graph& t, const char* op) {
  if (!t.is_tree()) throw PreconditionError(std::string(op) + ": input is not a tree");
}

// Vertices on the `child` side of edge {parent(child), child}.
VertexSet subtree_of(const Graph& t, Vertex blocked, Vertex start) {
  VertexSet out;
  std::vector<Vertex> stack{start};
  std::vector<bool> seen(t.n_vertices(), false);
  seen[blocked] = true;
  seen[start] = true;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (const auto& inc : t.neighbors(x)) {
      if (!seen[inc.to]) {
        seen[inc.to] = true;
        stack.push_back(inc.to);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t total_size(const std::vector<VertexSet>& parts, const std::vector<std::size_t>& idx) {
  std::size_t s = 0;
  for (auto i : idx) s += parts[i].size();
  return s;
}

}  // namespace

std::string to_string(DecompositionKind kind) {
  switch (kind) {
    case DecompositionKind::HighDegreeVertex: return "HighDegreeVertex";
    case DecompositionKind::ManyMediumSubtrees: return "ManyMediumSubtrees";
    case DecompositionKind::FewPieces: return "FewPieces";
  }
  return "?";
}

std::string to_string(ClassifyMode mode) { return mode == ClassifyMode::Level3 ? "level3" : "level4"; }

TreeSplit split_edge_balanced(const Graph& tree, std::size_t degree_bound) {
  require_tree(tree, "split_edge_balanced");
  const std::size_t n = tree.n_vertices();
  if (n < 2) throw PreconditionError("split_edge_balanced: tree needs at least 2 vertices");
  if (degree_bound < 2) throw PreconditionError("split_edge_balanced: degree bound must be at least 2");
  if (degree_bound >= n) {
    throw PreconditionError("split_edge_balanced: degree bound " + std::to_string(degree_bound) +
                            " must be smaller than n = " + std::to_string(n));
  }
  if (tree.max_degree() > degree_bound) {
    throw PreconditionError("split_edge_balanced: max degree " + std::to_string(tree.max_degree()) +
                            " exceeds bound " + std::to_string(degree_bound));
  }
  const std::size_t floor_size = n / degree_bound;
  const RootedTree r = root_tree(tree, 0);

  std::optional<Edge> best;
  std::size_t best_larger = std::numeric_limits<std::size_t>::max();
  for (const auto& e : tree.edges()) {
    const Vertex child = r.parent[e.v] == e.u ? e.v : e.u;
    const std::size_t s = r.subtree[child];
    const std::size_t smaller = std::min(s, n - s);
    const std::size_t larger = std::max(s, n - s);
    if (smaller < floor_size) continue;
    // Edges are visited in lexicographic order, so strict < keeps the smallest on ties.
    if (larger < best_larger) {
      best_larger = larger;
      best = e;
    }
  }
  if (!best) throw InternalError("split_edge_balanced: no qualifying edge exists for a valid tree");
  return {*best, subtree_of(tree, best->v, best->u), subtree_of(tree, best->u, best->v)};
}

Vertex centroid_vertex(const Graph& tree) {
  require_tree(tree, "centroid_vertex");
  const std::size_t n = tree.n_vertices();
  const RootedTree r = root_tree(tree, 0);
  for (Vertex x = 0; x < n; ++x) {
    std::size_t worst = n - r.subtree[x];
    for (const auto& inc : tree.neighbors(x)) {
      if (r.parent[inc.to] == x && inc.to != x) worst = std::max(worst, r.subtree[inc.to]);
    }
    if (2 * worst <= n) return x;
  }
  throw InternalError("centroid_vertex: no centroid found");
}

std::vector<VertexSet> attached_subtrees(const Graph& tree, Vertex x) {
  std::vector<VertexSet> out;
  for (const auto& inc : tree.neighbors(x)) out.push_back(subtree_of(tree, x, inc.to));
  return out;
}

std::vector<VertexSet> iterated_split(const Graph& tree, std::size_t n_parts, std::size_t min_size,
                                      std::size_t degree_bound) {
  require_tree(tree, "iterated_split");
  if (n_parts == 0) throw InvalidArgument("iterated_split: n_parts must be positive");
  if (tree.max_degree() > degree_bound) {
    throw PreconditionError("iterated_split: max degree exceeds the degree bound");
  }
  VertexSet all(tree.n_vertices());
  std::iota(all.begin(), all.end(), Vertex{0});
  if (all.size() < min_size) {
    throw InfeasibleSplit(0, "iterated_split: tree smaller than min_size");
  }

  std::vector<VertexSet> parts;
  VertexSet remaining = std::move(all);
  while (parts.size() + 1 < n_parts) {
    const std::size_t m = remaining.size();
    const std::size_t d = std::min(degree_bound, m > 1 ? m - 1 : std::size_t{1});
    if (m < 2 || m / d < min_size) {
      throw InfeasibleSplit(parts.size() + 1,
                            "iterated_split: floor(" + std::to_string(m) + "/" + std::to_string(d) +
                                ") < min_size " + std::to_string(min_size) + " after " +
                                std::to_string(parts.size() + 1) + " part(s)");
    }
    const InducedSubgraph piece = induced_subgraph(tree, remaining);
    const TreeSplit s = split_edge_balanced(piece.graph, d);
    auto lift = [&](const VertexSet& local) {
      VertexSet out;
      out.reserve(local.size());
      for (Vertex v : local) out.push_back(piece.vertices[v]);
      return out;  // piece.vertices is sorted, so the image stays sorted
    };
    VertexSet a = lift(s.side_a);
    VertexSet b = lift(s.side_b);
    if (b.size() > a.size()) std::swap(a, b);
    parts.push_back(std::move(b));
    remaining = std::move(a);
  }
  parts.push_back(std::move(remaining));
  return parts;
}

Decomposition classify_tree(const Graph& tree, double a_const, double exponent_eps, ClassifyMode mode) {
  require_tree(tree, "classify_tree");
  if (!(a_const > 0)) throw InvalidArgument("classify_tree: A must be positive");
  if (mode == ClassifyMode::Level4 && !(exponent_eps > 0)) {
    throw InvalidArgument("classify_tree: eps must be positive");
  }
  const std::size_t n = tree.n_vertices();
  if (n < 2) throw PreconditionError("classify_tree: tree needs at least 2 vertices");
  const double nd = static_cast<double>(n);
  const double L = std::log(nd);
  const double eps = mode == ClassifyMode::Level3 ? 0.0 : exponent_eps;
  const double p = mode == ClassifyMode::Level3 ? 10.0 : 1.0 + eps;

  Decomposition out;
  out.log_n = L;
  out.degree_threshold = nd / std::pow(L, p);

  Vertex hub = 0;
  for (Vertex v = 1; v < n; ++v)
    if (tree.degree(v) > tree.degree(hub)) hub = v;
  if (static_cast<double>(tree.degree(hub)) >= out.degree_threshold) {
    out.kind = DecompositionKind::HighDegreeVertex;
    out.witness = hub;
    out.branch = "degree";
    VertexSet star{hub};
    for (const auto& inc : tree.neighbors(hub)) star.push_back(inc.to);
    out.parts.push_back(make_vertex_set(std::move(star)));
    return out;
  }

  const Vertex x = centroid_vertex(tree);
  out.witness = x;
  std::vector<VertexSet> h = attached_subtrees(tree, x);
  auto band = [&](double lo, double hi) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double s = static_cast<double>(h[i].size());
      if (s >= lo && s < hi) idx.push_back(i);
    }
    return idx;
  };
  auto take = [&](const std::vector<std::size_t>& idx) {
    std::vector<VertexSet> parts;
    for (auto i : idx) parts.push_back(h[i]);
    return parts;
  };
  auto few_pieces = [&](const std::vector<std::size_t>& big, double count_bound, const char* branch) {
    out.kind = DecompositionKind::FewPieces;
    out.parts = take(big);
    VertexSet rest{x};
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (std::find(big.begin(), big.end(), i) == big.end()) rest.insert(rest.end(), h[i].begin(), h[i].end());
    }
    out.parts.push_back(make_vertex_set(std::move(rest)));
    out.count_bound = count_bound;
    out.branch = branch;
    return out;
  };
  auto many_medium = [&](const std::vector<std::size_t>& idx, double floor_size, double count_bound,
                         const char* branch, std::optional<int> k) {
    out.kind = DecompositionKind::ManyMediumSubtrees;
    out.parts = take(idx);
    out.part_size_floor = floor_size;
    out.count_bound = count_bound;
    out.branch = branch;
    out.level_k = k;
    return out;
  };
  const double inf = std::numeric_limits<double>::infinity();

  if (mode == ClassifyMode::Level3) {
    const double big = a_const * std::pow(L, 13);
    const double medium = std::pow(L, 10) / 4;
    const auto I = band(big, inf);
    const auto J = band(medium, big);
    if (static_cast<double>(total_size(h, J)) > nd / 4) {
      return many_medium(J, medium, nd / (4 * big), "hypJ", std::nullopt);
    }
    if (static_cast<double>(total_size(h, I)) > nd / 2) {
      return few_pieces(I, nd / big + 1, "hypI");
    }
  } else {
    const double big = a_const * std::pow(L, 4 + eps);
    const double l1 = std::pow(L, 1 + eps), l2 = std::pow(L, 2 + eps), l3 = std::pow(L, 3 + eps);
    const auto I = band(big, inf);
    const auto J1 = band(l1 / 4, l2);
    const auto J2 = band(l2, l3);
    const auto J3 = band(l3, big);
    if (static_cast<double>(total_size(h, I)) >= nd / 2) return few_pieces(I, nd / big + 1, "i");
    if (static_cast<double>(total_size(h, J1)) >= nd / 12) return many_medium(J1, l1 / 4, nd / (12 * l2), "ii", 1);
    if (static_cast<double>(total_size(h, J2)) >= nd / 12) return many_medium(J2, l2, nd / (12 * l3), "iii", 2);
    if (static_cast<double>(total_size(h, J3)) >= nd / 12) return many_medium(J3, l3, nd / (12 * big), "iv", 3);
  }
  throw InternalError("classify_tree: no case applies (n = " + std::to_string(n) + ", centroid " +
                      std::to_string(x) + ")");
}

BridgeSubgraph bridge_subgraph(const Graph& tree, const VertexSet& part_i, const VertexSet& part_j) {
  require_tree(tree, "bridge_subgraph");
  if (part_i.empty() || part_j.empty()) throw PreconditionError("bridge_subgraph: empty part");
  std::vector<int> owner(tree.n_vertices(), 0);
  for (Vertex v : part_i) owner.at(v) |= 1;
  for (Vertex v : part_j) {
    if (owner.at(v) & 1) throw PreconditionError("bridge_subgraph: parts overlap at vertex " + std::to_string(v));
    owner[v] |= 2;
  }
  for (const auto* part : {&part_i, &part_j}) {
    if (!induced_subgraph(tree, *part).graph.is_connected()) {
      throw PreconditionError("bridge_subgraph: part is not connected");
    }
  }

  // Multi-source BFS from part_i until the first vertex of part_j.
  std::vector<Vertex> parent(tree.n_vertices(), kNone);
  std::queue<Vertex> q;
  for (Vertex v : part_i) {
    parent[v] = v;
    q.push(v);
  }
  Vertex hit = kNone;
  while (!q.empty() && hit == kNone) {
    Vertex x = q.front();
    q.pop();
    for (const auto& inc : tree.neighbors(x)) {
      if (parent[inc.to] != kNone) continue;
      parent[inc.to] = x;
      if (owner[inc.to] & 2) {
        hit = inc.to;
        break;
      }
      q.push(inc.to);
    }
  }
  if (hit == kNone) throw InternalError("bridge_subgraph: parts are not connected through the tree");

  std::vector<Vertex> members(part_i.begin(), part_i.end());
  members.insert(members.end(), part_j.begin(), part_j.end());
  std::size_t dist = 0;
  for (Vertex v = hit; parent[v] != v; v = parent[v]) {
    ++dist;
    if (owner[parent[v]] == 0) members.push_back(parent[v]);
  }
  BridgeSubgraph out;
  out.distance = dist;
  out.sigma = part_i.size() + part_j.size() + dist - 1;
  out.subgraph = induced_subgraph(tree, members);
  if (out.subgraph.vertices.size() != out.sigma) {
    throw InternalError("bridge_subgraph: |G_ij| = " + std::to_string(out.subgraph.vertices.size()) +
                        " differs from sigma = " + std::to_string(out.sigma));
  }
  return out;
}

std::optional<VertexSet> find_star_or_segment(const Graph& g, std::size_t k) {
  if (!g.is_connected()) throw PreconditionError("find_star_or_segment: graph is disconnected");
  if (k == 0) return VertexSet{};
  Vertex hub = 0;
  for (Vertex v = 1; v < g.n_vertices(); ++v)
    if (g.degree(v) > g.degree(hub)) hub = v;
  if (g.degree(hub) + 1 >= k) {
    VertexSet star{hub};
    for (const auto& inc : g.neighbors(hub)) {
      if (star.size() == k) break;
      star.push_back(inc.to);
    }
    return make_vertex_set(std::move(star));
  }
  const std::size_t diam = diameter(g);
  if (diam + 1 < k) return std::nullopt;
  // Locate a diametral pair, then walk a shortest path between them.
  for (Vertex s = 0; s < g.n_vertices(); ++s) {
    auto dist = bfs_distances(g, std::span(&s, 1));
    auto it = std::find(dist.begin(), dist.end(), diam);
    if (it == dist.end()) continue;
    auto path = shortest_path(g, s, static_cast<Vertex>(it - dist.begin()));
    path.resize(k);
    return make_vertex_set(std::move(path));
  }
  throw InternalError("find_star_or_segment: diametral pair not found");
}

}  // namespace contact
