#include <algorithm>
#include <set>

#include "contact/error.hpp"
#include "contact/graph.hpp"
#include "doctest.h"

using namespace contact;

namespace {

std::vector<Edge> edge_vec(const Graph& g) { return {g.edges().begin(), g.edges().end()}; }

// Independent BFS eccentricity scan.
std::size_t brute_diameter(const Graph& g) {
  std::size_t best = 0;
  for (Vertex s = 0; s < g.n_vertices(); ++s) {
    const Vertex src[] = {s};
    for (auto d : bfs_distances(g, src)) best = std::max(best, d);
  }
  return best;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("line generator") {
    const Graph g = make_line(3);
    CHECK(g.n_vertices() == 3);
    CHECK(edge_vec(g) == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(make_line(1).n_vertices() == 1);
    CHECK(make_line(1).n_edges() == 0);
    const Graph five = make_line(5);
    CHECK(diameter(five) == 4);
    CHECK(brute_diameter(five) == 4);
    CHECK(five.max_degree() == 2);
    CHECK_THROWS_AS(make_line(0), InvalidArgument);
  }

  TEST_CASE("star generator") {
    const Graph g = make_star(4);
    CHECK(g.degree(0) == 3);
    for (Vertex v = 1; v < 4; ++v) CHECK(g.degree(v) == 1);
    CHECK(make_star(2) == make_line(2));
    CHECK(diameter(make_star(10)) == 2);
    CHECK(brute_diameter(make_star(10)) == 2);
    CHECK_THROWS_AS(make_star(1), InvalidArgument);
    CHECK(is_star(make_star(6)));
    CHECK(is_line(make_line(6)));
    CHECK_FALSE(is_line(make_star(5)));
  }

  TEST_CASE("random trees are trees and deterministic") {
    CHECK(random_tree(1, 3).n_vertices() == 1);
    CHECK_THROWS_AS(random_tree(0, 3), InvalidArgument);
    for (Seed s = 0; s < 200; ++s) {
      const std::size_t n = 1 + s % 40;
      const Graph g = random_tree(n, s);
      CHECK(g.n_vertices() == n);
      CHECK(g.n_edges() == n - 1);
      CHECK(g.is_connected());
      CHECK(g.is_tree());
      CHECK(g == random_tree(n, s));
      if (n > 2) CHECK(diameter(g) == brute_diameter(g));
    }
  }

  TEST_CASE("graph construction rejects bad input") {
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), PreconditionError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), PreconditionError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), InvalidArgument);
    const Graph g = Graph::from_edges(4, {{2, 1}, {0, 3}, {1, 0}});
    CHECK(edge_vec(g) == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}});
    CHECK(g.edge_id(3, 0) == 1u);
    CHECK_FALSE(g.edge_id(2, 3).has_value());
    // Adjacency agrees with the edge list.
    std::size_t incidences = 0;
    for (Vertex v = 0; v < g.n_vertices(); ++v) {
      for (const auto& inc : g.neighbors(v)) {
        const Edge e = g.edges()[inc.edge];
        CHECK(((e.u == v && e.v == inc.to) || (e.v == v && e.u == inc.to)));
        ++incidences;
      }
    }
    CHECK(incidences == 2 * g.n_edges());
  }

  TEST_CASE("edge list parsing") {
    CHECK(load_edge_list("0 1\n1 2") == make_line(3));
    CHECK(load_edge_list("# a comment\n\n0 1\n  \n1 2\n") == make_line(3));
    try {
      load_edge_list("0 1\n0 1");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    try {
      load_edge_list("0 1\n1 0");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    try {
      load_edge_list("0 1\n\n2 2\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    try {
      load_edge_list("0 x\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
    CHECK_THROWS_AS(load_edge_list("0 1 2\n"), ParseError);
    CHECK_THROWS_AS(load_edge_list("-1 2\n"), ParseError);
  }

  TEST_CASE("edge list round trip") {
    SequentialRng rng(77);
    for (Seed s = 0; s < 100; ++s) {
      const Graph g = random_tree(2 + s % 30, s);
      // Write the edges shuffled and with random orientation, then canonicalize.
      std::vector<Edge> edges = edge_vec(g);
      for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[rng.below(i)]);
      std::string text = "# shuffled\n";
      for (const Edge& e : edges) {
        if (rng.below(2)) {
          text += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
        } else {
          text += std::to_string(e.v) + "\t" + std::to_string(e.u) + "\n";
        }
      }
      const Graph parsed = load_edge_list(text);
      CHECK(parsed == g);
      CHECK(save_edge_list(parsed) == save_edge_list(g));
      CHECK(load_edge_list(save_edge_list(g)) == g);
    }
    const Graph isolated = Graph::from_edges(5, {{0, 1}});
    CHECK(load_edge_list(save_edge_list(isolated)) == isolated);
  }

  TEST_CASE("spanning tree") {
    const Graph tree = random_tree(12, 4);
    CHECK(spanning_tree(tree) == tree);
    const Graph triangle = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    const Graph span = spanning_tree(triangle);
    CHECK(span.n_edges() == 2);
    CHECK(is_line(span));
    CHECK(edge_vec(span) == std::vector<Edge>{{0, 1}, {0, 2}});

    SequentialRng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + rng.below(15);
      std::vector<Edge> edges = edge_vec(random_tree(n, static_cast<Seed>(trial)));
      std::set<Edge> have(edges.begin(), edges.end());
      for (int extra = 0; extra < 10; ++extra) {
        Vertex a = static_cast<Vertex>(rng.below(n)), b = static_cast<Vertex>(rng.below(n));
        if (a == b) continue;
        Edge e{std::min(a, b), std::max(a, b)};
        if (have.insert(e).second) edges.push_back(e);
      }
      const Graph g = Graph::from_edges(n, edges);
      const Graph t = spanning_tree(g);
      CHECK(t.is_tree());
      CHECK(t.n_vertices() == n);
      for (const Edge& e : t.edges()) CHECK(g.edge_id(e.u, e.v).has_value());
    }
    try {
      spanning_tree(Graph::from_edges(4, {{0, 1}, {2, 3}}));
      FAIL("expected an error");
    } catch (const PreconditionError& e) {
      const std::string what = e.what();
      CHECK(what.find("vertex 0") != std::string::npos);
      CHECK(what.find("vertex 2") != std::string::npos);
    }
  }

  TEST_CASE("paths and components") {
    const Graph g = make_line(6);
    CHECK(shortest_path(g, 1, 4) == std::vector<Vertex>{1, 2, 3, 4});
    CHECK(shortest_path(g, 4, 4) == std::vector<Vertex>{4});
    const auto comps = connected_components(Graph::from_edges(5, {{0, 3}, {1, 2}}));
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == VertexSet{0, 3});
    CHECK(comps[1] == VertexSet{1, 2});
    CHECK(comps[2] == VertexSet{4});
    const Vertex sub[] = {1, 2, 3};
    const InducedSubgraph s = induced_subgraph(make_star(5), sub);
    CHECK(s.graph.n_edges() == 0);
    CHECK(s.vertices == VertexSet{1, 2, 3});
  }
}
