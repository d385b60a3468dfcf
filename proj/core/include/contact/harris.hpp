#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contact/graph.hpp"
#include "contact/random.hpp"

namespace contact {

/// Set of infected vertices; the state of the process at one instant.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::size_t n_vertices) : bits_(n_vertices, 0) {}

  static Configuration full(std::size_t n_vertices);
  static Configuration of(std::size_t n_vertices, std::span<const Vertex> infected);

  std::size_t n_vertices() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  bool contains(Vertex v) const noexcept { return bits_[v] != 0; }

  void insert(Vertex v) noexcept {
    count_ += bits_[v] == 0;
    bits_[v] = 1;
  }
  void erase(Vertex v) noexcept {
    count_ -= bits_[v] != 0;
    bits_[v] = 0;
  }

  VertexSet vertices() const;
  bool is_subset_of(const Configuration& other) const;
  bool intersects(const Configuration& other) const;
  /// Largest infected id, if any.
  std::optional<Vertex> max_vertex() const;
  /// Lower-case hex bitmask, bit v = vertex v; requires n <= 64.
  std::string hex_mask() const;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.count_ == b.count_ && a.bits_ == b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

struct SpaceTimePoint {
  Vertex vertex = 0;
  double time = 0;
};

enum class EventKind : std::uint8_t { Recovery = 0, Transmission = 1 };

/// One Harris arrival. Recoveries have from == to. Events are ordered by
/// time, then recoveries before transmissions, then by clock id.
struct HarrisEvent {
  double time = 0;
  EventKind kind = EventKind::Recovery;
  std::uint32_t clock = 0;  // vertex id, or directed edge id
  Vertex from = 0;
  Vertex to = 0;
};

bool event_before(const HarrisEvent& a, const HarrisEvent& b) noexcept;

/// Directed edge ids: edge e = {u, v} (u < v) yields 2e for u -> v and 2e + 1 for v -> u.
std::uint32_t directed_edge_id(const Graph& g, Vertex from, Vertex to);

/// Continuation state of one Poisson clock: the next arrival and how many
/// exponential gaps have been consumed to reach it.
struct ClockCursor {
  double next_arrival = 0;
  std::uint64_t draws = 0;
};

/// The Poisson clocks of a graph keyed on (seed, clock kind, clock id).
/// Arrival k of a clock is the sum of its first k + 1 gaps, so any prefix is
/// reproducible bit-for-bit no matter how the time axis is chunked.
class ClockFamily {
 public:
  ClockFamily(const Graph& g, double lambda, Seed seed);

  std::size_t n_recovery() const noexcept { return n_vertices_; }
  std::size_t n_transmission() const noexcept { return 2 * edges_.size(); }
  ClockCursor start(EventKind kind, std::uint32_t clock) const noexcept;
  /// Appends every arrival <= horizon to `out` and advances the cursor.
  template <typename Sink>
  void advance(EventKind kind, std::uint32_t clock, ClockCursor& cur, double horizon, Sink&& out) const {
    while (cur.next_arrival <= horizon) {
      out(cur.next_arrival);
      cur.next_arrival += gap(kind, clock, cur.draws++);
    }
  }
  double total_rate() const noexcept { return static_cast<double>(n_vertices_) + lambda_ * static_cast<double>(2 * edges_.size()); }
  HarrisEvent event_at(EventKind kind, std::uint32_t clock, double time) const noexcept;

 private:
  double gap(EventKind kind, std::uint32_t clock, std::uint64_t k) const noexcept;

  std::size_t n_vertices_;
  std::vector<Edge> edges_;
  double lambda_;
  Seed seed_;
};

/// Materialized graphical construction on [0, horizon]: rate-1 recovery marks
/// per vertex and rate-lambda transmission arrivals per directed edge.
class HarrisSystem {
 public:
  static HarrisSystem sample(const Graph& g, double lambda, double horizon, Seed seed);

  /// Hand-built system for fixtures; `transmissions` is indexed by directed edge id.
  /// Such systems cannot be extended.
  static HarrisSystem from_arrivals(const Graph& g, double lambda, double horizon,
                                    std::vector<std::vector<double>> recoveries,
                                    std::vector<std::vector<double>> transmissions);

  /// Same system on [0, new_horizon]; arrivals up to the old horizon are untouched.
  HarrisSystem extend(double new_horizon) const;

  const Graph& graph() const noexcept { return graph_; }
  double lambda() const noexcept { return lambda_; }
  double horizon() const noexcept { return horizon_; }
  Seed seed() const noexcept { return seed_; }

  std::span<const double> recoveries(Vertex v) const { return recoveries_.at(v); }
  std::span<const double> transmissions(Vertex from, Vertex to) const;

  /// Events with time in (t0, t1], in canonical order.
  std::vector<HarrisEvent> events(double t0, double t1) const;
  std::size_t event_count() const noexcept;

  /// Debug dump: header "time,kind,vertex,target", one sorted row per event.
  std::string to_csv() const;

 private:
  HarrisSystem() = default;

  Graph graph_;
  double lambda_ = 1;
  double horizon_ = 0;
  Seed seed_ = 0;
  bool extendable_ = false;
  std::vector<std::vector<double>> recoveries_;
  std::vector<std::vector<double>> transmissions_;
  std::vector<ClockCursor> recovery_cursors_;
  std::vector<ClockCursor> transmission_cursors_;
};

struct StreamOptions {
  /// First materialized horizon; 0 selects max(1, n).
  double initial_horizon = 0;
  /// Caps the expected event count of one window; the horizon grows
  /// geometrically until a window would exceed it, then linearly.
  std::size_t max_window_events = std::size_t{1} << 18;
};

/// The same Harris system as HarrisSystem::sample, generated window by window
/// without retaining the past. Used by long-running simulations.
class EventStream {
 public:
  EventStream(const Graph& g, double lambda, Seed seed, StreamOptions options = {});

  /// Next event in canonical order; the stream is unbounded.
  const HarrisEvent& next();
  const HarrisEvent& peek();
  /// Current materialized horizon.
  double horizon() const noexcept { return horizon_; }

 private:
  void refill();

  ClockFamily clocks_;
  StreamOptions options_;
  double horizon_ = 0;
  double window_ = 0;
  std::vector<ClockCursor> recovery_cursors_;
  std::vector<ClockCursor> transmission_cursors_;
  std::vector<HarrisEvent> buffer_;
  std::size_t pos_ = 0;
};

/// Applies one event to a configuration.
inline void apply_event(Configuration& xi, const HarrisEvent& e) noexcept {
  if (e.kind == EventKind::Recovery) {
    xi.erase(e.from);
  } else if (xi.contains(e.from)) {
    xi.insert(e.to);
  }
}

/// Whether an infection path joins `from` to `to`, optionally confined to `restrict_to`.
bool reaches(const HarrisSystem& h, SpaceTimePoint from, SpaceTimePoint to,
             const std::optional<VertexSet>& restrict_to = std::nullopt);

/// Forward sweep of all events in (t0, t1].
Configuration evolve(const HarrisSystem& h, const Configuration& initial, double t0, double t1);

/// Set of y with (y, t - s) connected to the anchor (x, t), by a backward sweep.
Configuration dual_evolve(const HarrisSystem& h, SpaceTimePoint anchor, double s);

}  // namespace contact
