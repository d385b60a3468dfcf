#include <algorithm>
#include <cmath>
#include <set>

#include "contact/decomposition.hpp"
#include "contact/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace contact;
using namespace contact::testing;

namespace {

// Sizes of the two sides after deleting edge e, by BFS that refuses to cross it.
std::pair<std::size_t, std::size_t> sides_after_removal(const Graph& t, Edge e) {
  std::vector<char> seen(t.n_vertices(), 0);
  std::vector<Vertex> stack{e.u};
  seen[e.u] = 1;
  std::size_t count = 0;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    ++count;
    for (const auto& inc : t.neighbors(v)) {
      if ((v == e.u && inc.to == e.v) || seen[inc.to]) continue;
      seen[inc.to] = 1;
      stack.push_back(inc.to);
    }
  }
  return {count, t.n_vertices() - count};
}

std::size_t largest_component_without(const Graph& t, Vertex x) {
  std::size_t worst = 0;
  for (const auto& s : attached_subtrees(t, x)) worst = std::max(worst, s.size());
  return worst;
}

bool induces_connected(const Graph& g, const VertexSet& part) {
  return !part.empty() && induced_subgraph(g, part).graph.is_connected();
}

bool pairwise_disjoint(const std::vector<VertexSet>& parts) {
  std::set<Vertex> seen;
  for (const auto& p : parts)
    for (Vertex v : p)
      if (!seen.insert(v).second) return false;
  return true;
}

// Grows a random connected vertex set inside `allowed`.
VertexSet random_connected_part(const Graph& g, std::vector<char>& allowed, std::size_t target, SequentialRng& rng) {
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < g.n_vertices(); ++v)
    if (allowed[v]) pool.push_back(v);
  if (pool.empty()) return {};
  VertexSet part{pool[rng.below(pool.size())]};
  allowed[part[0]] = 0;
  while (part.size() < target) {
    std::vector<Vertex> frontier;
    for (Vertex v : part)
      for (const auto& inc : g.neighbors(v))
        if (allowed[inc.to]) frontier.push_back(inc.to);
    if (frontier.empty()) break;
    const Vertex pick = frontier[rng.below(frontier.size())];
    allowed[pick] = 0;
    part.push_back(pick);
  }
  return make_vertex_set(part);
}

std::size_t part_distance(const Graph& g, const VertexSet& a, const VertexSet& b) {
  const auto d = bfs_distances(g, a);
  std::size_t best = SIZE_MAX;
  for (Vertex v : b) best = std::min(best, d[v]);
  return best;
}

void check_decomposition(const Graph& t, const Decomposition& d) {
  const std::size_t n = t.n_vertices();
  const double nd = static_cast<double>(n);
  REQUIRE_FALSE(d.parts.empty());
  CHECK(pairwise_disjoint(d.parts));
  for (const auto& p : d.parts) CHECK(induces_connected(t, p));
  switch (d.kind) {
    case DecompositionKind::HighDegreeVertex:
      REQUIRE(d.witness.has_value());
      CHECK(static_cast<double>(t.degree(*d.witness)) >= d.degree_threshold);
      break;
    case DecompositionKind::FewPieces: {
      std::size_t covered = 0;
      for (const auto& p : d.parts) {
        covered += p.size();
        CHECK(static_cast<double>(p.size()) <= nd / 2);
      }
      CHECK(covered == n);
      CHECK(static_cast<double>(d.parts.size()) <= d.count_bound);
      break;
    }
    case DecompositionKind::ManyMediumSubtrees: {
      REQUIRE(d.witness.has_value());
      const Vertex x = *d.witness;
      CHECK(static_cast<double>(d.parts.size()) >= d.count_bound);
      for (const auto& p : d.parts) {
        CHECK_FALSE(std::binary_search(p.begin(), p.end(), x));
        CHECK(static_cast<double>(p.size()) >= d.part_size_floor);
        bool attached = false;
        for (const auto& inc : t.neighbors(x)) attached = attached || std::binary_search(p.begin(), p.end(), inc.to);
        CHECK(attached);
      }
      if (d.parts.size() >= 2) CHECK(part_distance(t, d.parts[0], d.parts[1]) == 2);
      break;
    }
  }
}

}  // namespace

TEST_SUITE("decomposition") {
  TEST_CASE("split examples") {
    const TreeSplit p4 = split_edge_balanced(make_line(4), 2);
    CHECK(p4.removed_edge == Edge{1, 2});
    CHECK(p4.side_a == VertexSet{0, 1});
    CHECK(p4.side_b == VertexSet{2, 3});
    const TreeSplit s5 = split_edge_balanced(make_star(5), 4);
    CHECK(s5.removed_edge == Edge{0, 1});
    const TreeSplit p5 = split_edge_balanced(make_line(5), 2);
    CHECK(p5.removed_edge == Edge{1, 2});
    CHECK(p5.side_a.size() == 2);
    CHECK(p5.side_b.size() == 3);
    CHECK_THROWS_AS(split_edge_balanced(make_star(5), 3), PreconditionError);
    CHECK_THROWS_AS(split_edge_balanced(make_line(4), 4), PreconditionError);
    CHECK_THROWS_AS(split_edge_balanced(make_line(2), 1), PreconditionError);
    CHECK_THROWS_AS(split_edge_balanced(Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}), 2), PreconditionError);
  }

  TEST_CASE("split is the minimax qualifying edge on every tree up to 6 vertices") {
    for (std::size_t n = 2; n <= 6; ++n) {
      for (std::size_t idx = 0; idx < ipow(n, n - 2); ++idx) {
        const auto code = pruefer_from_index(n, idx);
        const Graph t = n == 2 ? make_line(2) : tree_from_pruefer(code);
        for (std::size_t d = std::max<std::size_t>(2, t.max_degree()); d < n; ++d) {
          const TreeSplit s = split_edge_balanced(t, d);
          const std::size_t floor_size = n / d;
          CHECK(s.side_a.size() >= floor_size);
          CHECK(s.side_b.size() >= floor_size);
          CHECK(s.side_a.size() + s.side_b.size() == n);
          CHECK(induces_connected(t, s.side_a));
          CHECK(induces_connected(t, s.side_b));
          CHECK(std::binary_search(s.side_a.begin(), s.side_a.end(), s.removed_edge.u));
          CHECK(std::binary_search(s.side_b.begin(), s.side_b.end(), s.removed_edge.v));
          std::optional<std::pair<std::size_t, Edge>> best;
          for (const Edge& e : t.edges()) {
            const auto [a, b] = sides_after_removal(t, e);
            if (std::min(a, b) < floor_size) continue;
            const std::size_t larger = std::max(a, b);
            if (!best || larger < best->first) best = {larger, e};
          }
          REQUIRE(best.has_value());
          CHECK(s.removed_edge == best->second);
        }
      }
    }
  }

  TEST_CASE("centroid") {
    CHECK(centroid_vertex(make_line(5)) == 2);
    CHECK(centroid_vertex(make_line(4)) == 1);
    CHECK(centroid_vertex(make_star(9)) == 0);
    CHECK(centroid_vertex(make_line(1)) == 0);
    CHECK_THROWS_AS(centroid_vertex(Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}})), PreconditionError);
    for (Seed s = 0; s < 300; ++s) {
      const Graph t = random_tree(1 + s % 25, s);
      const Vertex c = centroid_vertex(t);
      CHECK(2 * largest_component_without(t, c) <= t.n_vertices());
      for (Vertex v = 0; v < c; ++v) CHECK(2 * largest_component_without(t, v) > t.n_vertices());
    }
  }

  TEST_CASE("iterated split") {
    const auto two = iterated_split(make_line(8), 2, 2, 2);
    REQUIRE(two.size() == 2);
    for (const auto& p : two) {
      CHECK(p.size() >= 2);
      CHECK(induces_connected(make_line(8), p));
    }
    CHECK(pairwise_disjoint(two));
    const auto one = iterated_split(make_line(8), 1, 1, 2);
    REQUIRE(one.size() == 1);
    CHECK(one[0].size() == 8);
    CHECK_THROWS_AS(iterated_split(make_star(8), 3, 2, 7), InfeasibleSplit);
    try {
      iterated_split(make_star(8), 3, 2, 7);
    } catch (const InfeasibleSplit& e) {
      CHECK(e.achieved() < 3);
    }
    for (Seed s = 0; s < 100; ++s) {
      const Graph t = random_tree(40 + s % 20, s);
      const std::size_t d = t.max_degree();
      const auto parts = iterated_split(t, 3, 2, d);
      CHECK(parts.size() == 3);
      CHECK(pairwise_disjoint(parts));
      std::size_t covered = 0;
      for (const auto& p : parts) {
        CHECK(p.size() >= 2);
        CHECK(induces_connected(t, p));
        covered += p.size();
      }
      CHECK(covered == t.n_vertices());
    }
  }

  TEST_CASE("classify examples") {
    const Decomposition star = classify_tree(make_star(100), 1.0, 0.1, ClassifyMode::Level4);
    CHECK(star.kind == DecompositionKind::HighDegreeVertex);
    CHECK(star.witness == Vertex{0});
    CHECK(99.0 >= 100.0 / std::pow(std::log(100.0), 1.1));
    check_decomposition(make_star(100), star);

    const Graph path = make_line(std::size_t{1} << 16);
    const Decomposition p3 = classify_tree(path, 1.0, 0.1, ClassifyMode::Level3);
    check_decomposition(path, p3);
    const Decomposition p4 = classify_tree(path, 1.0, 0.1, ClassifyMode::Level4);
    CHECK(p4.kind == DecompositionKind::FewPieces);
    CHECK(p4.branch == "i");
    check_decomposition(path, p4);

    // A spider: 204 legs of 20 vertices around vertex 0.
    std::vector<Edge> edges;
    Vertex next = 1;
    for (int leg = 0; leg < 204; ++leg) {
      Vertex prev = 0;
      for (int i = 0; i < 20; ++i, ++next) {
        edges.push_back({prev, next});
        prev = next;
      }
    }
    const Graph spider = Graph::from_edges(next, edges);
    const Decomposition sp = classify_tree(spider, 1.0, 0.1, ClassifyMode::Level4);
    CHECK(sp.kind == DecompositionKind::ManyMediumSubtrees);
    CHECK(sp.level_k == 1);
    CHECK(sp.witness == Vertex{0});
    check_decomposition(spider, sp);
  }

  TEST_CASE("classify output re-checks on random trees") {
    for (Seed s = 0; s < 60; ++s) {
      const Graph t = random_tree(50 + 40 * (s % 25), s);
      for (double a : {0.01, 1.0}) {
        for (auto mode : {ClassifyMode::Level3, ClassifyMode::Level4}) {
          const Decomposition d = classify_tree(t, a, 0.1, mode);
          check_decomposition(t, d);
        }
      }
    }
  }

  TEST_CASE("bridge subgraph") {
    const Graph line = make_line(7);
    const BridgeSubgraph adj = bridge_subgraph(line, {0, 1}, {2, 3, 4});
    CHECK(adj.distance == 1);
    CHECK(adj.sigma == 5);
    const BridgeSubgraph two = bridge_subgraph(line, {0, 1}, {3, 4});
    CHECK(two.distance == 2);
    CHECK(two.sigma == 5);
    CHECK(two.subgraph.vertices == VertexSet{0, 1, 2, 3, 4});
    CHECK_THROWS_AS(bridge_subgraph(line, {0, 1}, {1, 2}), PreconditionError);
    CHECK_THROWS_AS(bridge_subgraph(line, {0, 2}, {4}), PreconditionError);

    SequentialRng rng(2024);
    int checked = 0;
    for (Seed s = 0; checked < 1000; ++s) {
      const Graph t = random_tree(3 + rng.below(40), s);
      std::vector<char> allowed(t.n_vertices(), 1);
      const VertexSet a = random_connected_part(t, allowed, 1 + rng.below(6), rng);
      const VertexSet b = random_connected_part(t, allowed, 1 + rng.below(6), rng);
      if (a.empty() || b.empty() || !induces_connected(t, b)) continue;
      const BridgeSubgraph br = bridge_subgraph(t, a, b);
      const std::size_t dist = part_distance(t, a, b);
      CHECK(br.distance == dist);
      CHECK(br.sigma == a.size() + b.size() + dist - 1);
      CHECK(br.subgraph.vertices.size() == br.sigma);
      CHECK(br.subgraph.graph.is_connected());
      ++checked;
    }
  }

  TEST_CASE("star or segment") {
    const auto star = find_star_or_segment(make_star(10), 10);
    REQUIRE(star.has_value());
    CHECK(star->size() == 10);
    const auto line = find_star_or_segment(make_line(10), 10);
    REQUIRE(line.has_value());
    CHECK(line->size() == 10);
    CHECK(is_line(induced_subgraph(make_line(10), *line).graph));
    // Degree 3 hubs and a short diameter: neither shape reaches n vertices.
    const Graph t = Graph::from_edges(10, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}, {2, 7}, {3, 8}, {3, 9}});
    CHECK_FALSE(find_star_or_segment(t, 10).has_value());
    const auto small = find_star_or_segment(t, 4);
    REQUIRE(small.has_value());
    CHECK(is_star(induced_subgraph(t, *small).graph));
  }
}
