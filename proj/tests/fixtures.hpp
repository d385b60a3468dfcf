#pragma once

#include <string>
#include <vector>

#include "contact/graph.hpp"

namespace contact::testing {

struct NamedGraph {
  std::string name;
  Graph graph;
};

// Twenty trees with at most 8 vertices: lines, stars and seeded random trees.
inline std::vector<NamedGraph> small_tree_corpus() {
  std::vector<NamedGraph> out;
  for (std::size_t n = 2; n <= 8; ++n) out.push_back({"line:" + std::to_string(n), make_line(n)});
  for (std::size_t n = 3; n <= 8; ++n) out.push_back({"star:" + std::to_string(n), make_star(n)});
  const std::pair<std::size_t, Seed> trees[] = {{5, 1}, {6, 2}, {6, 3}, {7, 4}, {7, 5}, {8, 6}, {8, 7}};
  for (auto [n, s] : trees) out.push_back({"tree:" + std::to_string(n) + ":" + std::to_string(s), random_tree(n, s)});
  return out;
}

// Decodes index i in [0, n^(n-2)) as a Pruefer code.
inline std::vector<Vertex> pruefer_from_index(std::size_t n, std::size_t index) {
  std::vector<Vertex> code(n >= 2 ? n - 2 : 0);
  for (auto& c : code) {
    c = static_cast<Vertex>(index % n);
    index /= n;
  }
  return code;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace contact::testing
