#include "contact/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "contact/error.hpp"

namespace contact {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::string edge_str(Vertex a, Vertex b) {
  return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

}  // namespace

Graph Graph::from_edges(std::size_t n_vertices, std::vector<Edge> edges) {
  if (n_vertices > std::numeric_limits<Vertex>::max()) throw InvalidArgument("too many vertices");
  for (auto& e : edges) {
    if (e.u >= n_vertices || e.v >= n_vertices) {
      throw InvalidArgument("edge " + edge_str(e.u, e.v) + " has an endpoint outside 0.." +
                            std::to_string(n_vertices) + "-1");
    }
    if (e.u == e.v) throw PreconditionError("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end()) {
    throw PreconditionError("parallel edge " + edge_str(it->u, it->v));
  }
  Graph g;
  g.adjacency_.resize(n_vertices);
  for (std::uint32_t id = 0; id < edges.size(); ++id) {
    g.adjacency_[edges[id].u].push_back({edges[id].v, id});
    g.adjacency_[edges[id].v].push_back({edges[id].u, id});
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end(), [](const Incidence& a, const Incidence& b) { return a.to < b.to; });
  }
  g.edges_ = std::move(edges);
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t d = 0;
  for (const auto& adj : adjacency_) d = std::max(d, adj.size());
  return d;
}

std::optional<std::uint32_t> Graph::edge_id(Vertex a, Vertex b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{a, b});
  if (it == edges_.end() || *it != Edge{a, b}) return std::nullopt;
  return static_cast<std::uint32_t>(it - edges_.begin());
}

bool Graph::is_connected() const {
  if (n_vertices() == 0) return true;
  const Vertex root = 0;
  auto dist = bfs_distances(*this, std::span(&root, 1));
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == kUnreached; });
}

bool Graph::is_tree() const {
  return n_vertices() >= 1 && n_edges() + 1 == n_vertices() && is_connected();
}

Graph make_line(std::size_t n) {
  if (n == 0) throw InvalidArgument("line needs at least 1 vertex");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph::from_edges(n, std::move(edges));
}

Graph make_star(std::size_t n) {
  if (n < 2) throw InvalidArgument("star needs at least 2 vertices");
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) edges.push_back({0, i});
  return Graph::from_edges(n, std::move(edges));
}

Graph tree_from_pruefer(std::span<const Vertex> code) {
  const std::size_t n = code.size() + 2;
  std::vector<std::size_t> degree(n, 1);
  for (Vertex c : code) {
    if (c >= n) throw InvalidArgument("Prüfer entry out of range");
    ++degree[c];
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (Vertex c : code) {
    const Vertex leaf = leaves.top();
    leaves.pop();
    edges.push_back({leaf, c});
    if (--degree[c] == 1) leaves.push(c);
  }
  const Vertex a = leaves.top();
  leaves.pop();
  edges.push_back({a, leaves.top()});
  return Graph::from_edges(n, std::move(edges));
}

Graph random_tree(std::size_t n, Seed seed) {
  if (n == 0) throw InvalidArgument("tree needs at least 1 vertex");
  if (n == 1) return Graph::from_edges(1, {});
  if (n == 2) return Graph::from_edges(2, {{0, 1}});
  SequentialRng rng(seed, 0x7EEEu);
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = static_cast<Vertex>(rng.below(n));
  return tree_from_pruefer(code);
}

Graph load_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::optional<std::size_t> declared;
  std::size_t max_id_plus_one = 0;
  std::size_t line_no = 0;
  std::set<Edge> seen;

  auto parse_id = [&](std::string_view tok) -> Vertex {
    Vertex v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError(line_no, "expected a vertex id, got '" + std::string(tok) + "'");
    }
    return v;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (tokens.empty()) continue;
    if (tokens[0].front() == '#') {
      // "# vertices: N" is the only comment that carries meaning.
      if (tokens.size() == 3 && tokens[0] == "#" && tokens[1] == "vertices:") {
        declared = parse_id(tokens[2]);
      }
      continue;
    }
    if (tokens.size() != 2) throw ParseError(line_no, "expected two vertex ids");
    Vertex u = parse_id(tokens[0]);
    Vertex v = parse_id(tokens[1]);
    if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
    Edge e{std::min(u, v), std::max(u, v)};
    if (!seen.insert(e).second) throw ParseError(line_no, "duplicate edge " + edge_str(e.u, e.v));
    edges.push_back(e);
    max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::size_t{e.v} + 1);
  }
  std::size_t n = max_id_plus_one;
  if (declared) {
    if (*declared < max_id_plus_one) {
      throw ParseError(0, "declared vertex count " + std::to_string(*declared) + " is smaller than max id + 1");
    }
    n = *declared;
  }
  if (n == 0) throw ParseError(0, "empty graph");
  return Graph::from_edges(n, std::move(edges));
}

std::string save_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# vertices: " << g.n_vertices() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open edge list '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_edge_list(buf.str());
}

VertexSet make_vertex_set(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  VertexSet vs = make_vertex_set({vertices.begin(), vertices.end()});
  std::vector<Vertex> local(g.n_vertices(), std::numeric_limits<Vertex>::max());
  for (Vertex i = 0; i < vs.size(); ++i) {
    if (vs[i] >= g.n_vertices()) throw InvalidArgument("vertex outside graph");
    local[vs[i]] = i;
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (local[e.u] != std::numeric_limits<Vertex>::max() && local[e.v] != std::numeric_limits<Vertex>::max()) {
      edges.push_back({local[e.u], local[e.v]});
    }
  }
  return {Graph::from_edges(vs.size(), std::move(edges)), std::move(vs)};
}

std::vector<std::size_t> bfs_distances(const Graph& g, std::span<const Vertex> sources) {
  std::vector<std::size_t> dist(g.n_vertices(), kUnreached);
  std::queue<Vertex> q;
  for (Vertex s : sources) {
    if (dist.at(s) == kUnreached) {
      dist[s] = 0;
      q.push(s);
    }
  }
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    for (const auto& inc : g.neighbors(x)) {
      if (dist[inc.to] == kUnreached) {
        dist[inc.to] = dist[x] + 1;
        q.push(inc.to);
      }
    }
  }
  return dist;
}

std::vector<Vertex> shortest_path(const Graph& g, Vertex a, Vertex b) {
  std::vector<Vertex> parent(g.n_vertices(), std::numeric_limits<Vertex>::max());
  std::queue<Vertex> q;
  parent.at(a) = a;
  q.push(a);
  while (!q.empty() && parent.at(b) == std::numeric_limits<Vertex>::max()) {
    Vertex x = q.front();
    q.pop();
    for (const auto& inc : g.neighbors(x)) {
      if (parent[inc.to] == std::numeric_limits<Vertex>::max()) {
        parent[inc.to] = x;
        q.push(inc.to);
      }
    }
  }
  if (parent[b] == std::numeric_limits<Vertex>::max()) throw PreconditionError("vertices are disconnected");
  std::vector<Vertex> path{b};
  while (path.back() != a) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> comps;
  std::vector<bool> seen(g.n_vertices(), false);
  for (Vertex s = 0; s < g.n_vertices(); ++s) {
    if (seen[s]) continue;
    auto dist = bfs_distances(g, std::span(&s, 1));
    VertexSet comp;
    for (Vertex v = 0; v < g.n_vertices(); ++v) {
      if (dist[v] != kUnreached) {
        comp.push_back(v);
        seen[v] = true;
      }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::size_t diameter(const Graph& g) {
  if (!g.is_connected()) throw PreconditionError("diameter of a disconnected graph");
  auto eccentricity = [&](Vertex s, Vertex* far) {
    auto dist = bfs_distances(g, std::span(&s, 1));
    auto it = std::max_element(dist.begin(), dist.end());
    if (far) *far = static_cast<Vertex>(it - dist.begin());
    return *it;
  };
  if (g.is_tree()) {
    // Double sweep is exact on trees.
    Vertex far = 0;
    eccentricity(0, &far);
    return eccentricity(far, nullptr);
  }
  std::size_t best = 0;
  for (Vertex s = 0; s < g.n_vertices(); ++s) best = std::max(best, eccentricity(s, nullptr));
  return best;
}

bool is_line(const Graph& g) {
  if (!g.is_tree()) return false;
  return g.max_degree() <= 2;
}

bool is_star(const Graph& g) {
  if (!g.is_tree() || g.n_vertices() < 2) return false;
  return g.max_degree() == g.n_vertices() - 1;
}

Graph spanning_tree(const Graph& g) {
  if (g.n_vertices() == 0) throw PreconditionError("empty graph");
  auto comps = connected_components(g);
  if (comps.size() > 1) {
    throw PreconditionError("graph is disconnected: vertex " + std::to_string(comps[0].front()) +
                            " and vertex " + std::to_string(comps[1].front()) + " lie in different components");
  }
  std::vector<bool> seen(g.n_vertices(), false);
  std::vector<Edge> edges;
  std::queue<Vertex> q;
  seen[0] = true;
  q.push(0);
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    for (const auto& inc : g.neighbors(x)) {
      if (!seen[inc.to]) {
        seen[inc.to] = true;
        edges.push_back({x, inc.to});
        q.push(inc.to);
      }
    }
  }
  return Graph::from_edges(g.n_vertices(), std::move(edges));
}

}  // namespace contact
