#include "contact/harris.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "contact/error.hpp"

namespace contact {

namespace {

constexpr std::uint32_t kRecoveryFamily = 0x52454355u;      // "RECU"
constexpr std::uint32_t kTransmissionFamily = 0x5452414Eu;  // "TRAN"

void check_rate(double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw InvalidArgument("infection rate must be positive and finite");
}

}  // namespace

// ---------------------------------------------------------------- Configuration

Configuration Configuration::full(std::size_t n) {
  Configuration c(n);
  std::fill(c.bits_.begin(), c.bits_.end(), 1);
  c.count_ = n;
  return c;
}

Configuration Configuration::of(std::size_t n, std::span<const Vertex> infected) {
  Configuration c(n);
  for (Vertex v : infected) {
    if (v >= n) throw InvalidArgument("configuration vertex " + std::to_string(v) + " outside graph");
    c.insert(v);
  }
  return c;
}

VertexSet Configuration::vertices() const {
  VertexSet out;
  out.reserve(count_);
  for (Vertex v = 0; v < bits_.size(); ++v)
    if (bits_[v]) out.push_back(v);
  return out;
}

bool Configuration::is_subset_of(const Configuration& other) const {
  for (std::size_t v = 0; v < bits_.size(); ++v)
    if (bits_[v] && !other.bits_[v]) return false;
  return true;
}

bool Configuration::intersects(const Configuration& other) const {
  for (std::size_t v = 0; v < bits_.size(); ++v)
    if (bits_[v] && other.bits_[v]) return true;
  return false;
}

std::optional<Vertex> Configuration::max_vertex() const {
  for (std::size_t v = bits_.size(); v-- > 0;)
    if (bits_[v]) return static_cast<Vertex>(v);
  return std::nullopt;
}

std::string Configuration::hex_mask() const {
  if (bits_.size() > 64) throw InvalidArgument("hex mask needs n <= 64");
  std::uint64_t mask = 0;
  for (std::size_t v = 0; v < bits_.size(); ++v)
    if (bits_[v]) mask |= std::uint64_t{1} << v;
  std::ostringstream out;
  out << std::hex << mask;
  return out.str();
}

// ---------------------------------------------------------------- events and clocks

bool event_before(const HarrisEvent& a, const HarrisEvent& b) noexcept {
  if (a.time != b.time) return a.time < b.time;
  if (a.kind != b.kind) return a.kind < b.kind;
  return a.clock < b.clock;
}

std::uint32_t directed_edge_id(const Graph& g, Vertex from, Vertex to) {
  auto id = g.edge_id(from, to);
  if (!id) throw InvalidArgument("no edge {" + std::to_string(from) + "," + std::to_string(to) + "}");
  return 2 * *id + (from < to ? 0u : 1u);
}

ClockFamily::ClockFamily(const Graph& g, double lambda, Seed seed)
    : n_vertices_(g.n_vertices()), edges_(g.edges().begin(), g.edges().end()), lambda_(lambda), seed_(seed) {
  check_rate(lambda);
}

double ClockFamily::gap(EventKind kind, std::uint32_t clock, std::uint64_t k) const noexcept {
  if (kind == EventKind::Recovery) return CounterStream(seed_, kRecoveryFamily, clock).exponential(k, 1.0);
  return CounterStream(seed_, kTransmissionFamily, clock).exponential(k, lambda_);
}

ClockCursor ClockFamily::start(EventKind kind, std::uint32_t clock) const noexcept {
  return {gap(kind, clock, 0), 1};
}

HarrisEvent ClockFamily::event_at(EventKind kind, std::uint32_t clock, double time) const noexcept {
  if (kind == EventKind::Recovery) return {time, kind, clock, clock, clock};
  const Edge& e = edges_[clock / 2];
  return (clock & 1u) == 0 ? HarrisEvent{time, kind, clock, e.u, e.v} : HarrisEvent{time, kind, clock, e.v, e.u};
}

// ---------------------------------------------------------------- HarrisSystem

HarrisSystem HarrisSystem::sample(const Graph& g, double lambda, double horizon, Seed seed) {
  check_rate(lambda);
  if (!(horizon >= 0) || !std::isfinite(horizon)) throw InvalidArgument("horizon must be finite and >= 0");
  ClockFamily clocks(g, lambda, seed);
  HarrisSystem h;
  h.graph_ = g;
  h.lambda_ = lambda;
  h.horizon_ = 0;
  h.seed_ = seed;
  h.extendable_ = true;
  h.recoveries_.resize(clocks.n_recovery());
  h.transmissions_.resize(clocks.n_transmission());
  for (std::uint32_t c = 0; c < clocks.n_recovery(); ++c) h.recovery_cursors_.push_back(clocks.start(EventKind::Recovery, c));
  for (std::uint32_t c = 0; c < clocks.n_transmission(); ++c)
    h.transmission_cursors_.push_back(clocks.start(EventKind::Transmission, c));
  return h.extend(horizon);
}

HarrisSystem HarrisSystem::from_arrivals(const Graph& g, double lambda, double horizon,
                                         std::vector<std::vector<double>> recoveries,
                                         std::vector<std::vector<double>> transmissions) {
  check_rate(lambda);
  if (recoveries.size() != g.n_vertices() || transmissions.size() != 2 * g.n_edges()) {
    throw InvalidArgument("fixture stream counts do not match the graph");
  }
  auto check = [&](const std::vector<double>& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!(s[i] >= 0) || s[i] > horizon || (i > 0 && !(s[i] > s[i - 1]))) {
        throw InvalidArgument("fixture arrivals must be strictly increasing within [0, horizon]");
      }
    }
  };
  for (const auto& s : recoveries) check(s);
  for (const auto& s : transmissions) check(s);
  HarrisSystem h;
  h.graph_ = g;
  h.lambda_ = lambda;
  h.horizon_ = horizon;
  h.recoveries_ = std::move(recoveries);
  h.transmissions_ = std::move(transmissions);
  return h;
}

HarrisSystem HarrisSystem::extend(double new_horizon) const {
  if (!(new_horizon >= horizon_) || !std::isfinite(new_horizon)) {
    throw InvalidArgument("extend: new horizon must be finite and >= current horizon");
  }
  if (new_horizon == horizon_) return *this;
  if (!extendable_) throw InvalidArgument("extend: hand-built Harris systems cannot be extended");
  HarrisSystem h = *this;
  const ClockFamily clocks(graph_, lambda_, seed_);
  for (std::uint32_t c = 0; c < h.recoveries_.size(); ++c) {
    clocks.advance(EventKind::Recovery, c, h.recovery_cursors_[c], new_horizon,
                   [&](double t) { h.recoveries_[c].push_back(t); });
  }
  for (std::uint32_t c = 0; c < h.transmissions_.size(); ++c) {
    clocks.advance(EventKind::Transmission, c, h.transmission_cursors_[c], new_horizon,
                   [&](double t) { h.transmissions_[c].push_back(t); });
  }
  h.horizon_ = new_horizon;
  return h;
}

std::span<const double> HarrisSystem::transmissions(Vertex from, Vertex to) const {
  return transmissions_.at(directed_edge_id(graph_, from, to));
}

std::vector<HarrisEvent> HarrisSystem::events(double t0, double t1) const {
  std::vector<HarrisEvent> out;
  auto collect = [&](EventKind kind, std::uint32_t clock, const std::vector<double>& arrivals, Vertex from, Vertex to) {
    auto lo = std::upper_bound(arrivals.begin(), arrivals.end(), t0);
    auto hi = std::upper_bound(arrivals.begin(), arrivals.end(), t1);
    for (auto it = lo; it < hi; ++it) out.push_back({*it, kind, clock, from, to});
  };
  for (std::uint32_t v = 0; v < recoveries_.size(); ++v) collect(EventKind::Recovery, v, recoveries_[v], v, v);
  const auto edges = graph_.edges();
  for (std::uint32_t c = 0; c < transmissions_.size(); ++c) {
    const Edge& e = edges[c / 2];
    if ((c & 1u) == 0) {
      collect(EventKind::Transmission, c, transmissions_[c], e.u, e.v);
    } else {
      collect(EventKind::Transmission, c, transmissions_[c], e.v, e.u);
    }
  }
  std::sort(out.begin(), out.end(), event_before);
  return out;
}

std::size_t HarrisSystem::event_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : recoveries_) n += s.size();
  for (const auto& s : transmissions_) n += s.size();
  return n;
}

std::string HarrisSystem::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "time,kind,vertex,target\n";
  for (const auto& e : events(-1.0, horizon_)) {
    if (e.kind == EventKind::Recovery) {
      out << e.time << ",R," << e.from << ",\n";
    } else {
      out << e.time << ",T," << e.from << ',' << e.to << '\n';
    }
  }
  return out.str();
}

// ---------------------------------------------------------------- EventStream

EventStream::EventStream(const Graph& g, double lambda, Seed seed, StreamOptions options)
    : clocks_(g, lambda, seed), options_(options) {
  if (g.n_vertices() == 0) throw InvalidArgument("event stream on an empty graph");
  if (options_.max_window_events == 0) throw InvalidArgument("max_window_events must be positive");
  for (std::uint32_t c = 0; c < clocks_.n_recovery(); ++c) recovery_cursors_.push_back(clocks_.start(EventKind::Recovery, c));
  for (std::uint32_t c = 0; c < clocks_.n_transmission(); ++c)
    transmission_cursors_.push_back(clocks_.start(EventKind::Transmission, c));
  window_ = options_.initial_horizon > 0 ? options_.initial_horizon
                                         : std::max(1.0, static_cast<double>(g.n_vertices()));
}

void EventStream::refill() {
  buffer_.clear();
  pos_ = 0;
  while (buffer_.empty()) {
    const double target = horizon_ + window_;
    for (std::uint32_t c = 0; c < recovery_cursors_.size(); ++c) {
      clocks_.advance(EventKind::Recovery, c, recovery_cursors_[c], target,
                      [&](double t) { buffer_.push_back(clocks_.event_at(EventKind::Recovery, c, t)); });
    }
    for (std::uint32_t c = 0; c < transmission_cursors_.size(); ++c) {
      clocks_.advance(EventKind::Transmission, c, transmission_cursors_[c], target,
                      [&](double t) { buffer_.push_back(clocks_.event_at(EventKind::Transmission, c, t)); });
    }
    horizon_ = target;
    // Double the horizon, but keep the expected size of the next window bounded.
    const double cap = static_cast<double>(options_.max_window_events) / clocks_.total_rate();
    window_ = std::min(horizon_, cap);
  }
  std::sort(buffer_.begin(), buffer_.end(), event_before);
}

const HarrisEvent& EventStream::peek() {
  if (pos_ >= buffer_.size()) refill();
  return buffer_[pos_];
}

const HarrisEvent& EventStream::next() {
  if (pos_ >= buffer_.size()) refill();
  return buffer_[pos_++];
}

// ---------------------------------------------------------------- path queries

Configuration evolve(const HarrisSystem& h, const Configuration& initial, double t0, double t1) {
  if (!(t0 <= t1)) throw PreconditionError("evolve: t0 must not exceed t1");
  if (t1 > h.horizon()) throw HorizonError("evolve: t1 beyond the materialized horizon; extend first");
  if (initial.n_vertices() != h.graph().n_vertices()) throw InvalidArgument("evolve: configuration size mismatch");
  Configuration xi = initial;
  for (const auto& e : h.events(t0, t1)) apply_event(xi, e);
  return xi;
}

Configuration dual_evolve(const HarrisSystem& h, SpaceTimePoint anchor, double s) {
  if (!(s >= 0) || s > anchor.time) throw PreconditionError("dual_evolve: need 0 <= s <= anchor time");
  if (anchor.time > h.horizon()) throw HorizonError("dual_evolve: anchor beyond the materialized horizon");
  if (anchor.vertex >= h.graph().n_vertices()) throw InvalidArgument("dual_evolve: anchor vertex outside graph");
  Configuration dual(h.graph().n_vertices());
  dual.insert(anchor.vertex);
  const auto events = h.events(anchor.time - s, anchor.time);
  // Reverse canonical order: a transmission x -> y pulls x into the dual set
  // when y is in it; a recovery at x removes x.
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    if (it->kind == EventKind::Recovery) {
      dual.erase(it->from);
    } else if (dual.contains(it->to)) {
      dual.insert(it->from);
    }
  }
  return dual;
}

bool reaches(const HarrisSystem& h, SpaceTimePoint from, SpaceTimePoint to, const std::optional<VertexSet>& restrict_to) {
  const Graph& g = h.graph();
  if (from.vertex >= g.n_vertices() || to.vertex >= g.n_vertices()) throw InvalidArgument("reaches: vertex outside graph");
  if (!(from.time <= to.time)) throw PreconditionError("reaches: from.time must not exceed to.time");
  if (to.time > h.horizon()) throw HorizonError("reaches: query beyond the materialized horizon");
  std::vector<bool> allowed(g.n_vertices(), !restrict_to.has_value());
  if (restrict_to) {
    for (Vertex v : *restrict_to) allowed.at(v) = true;
    if (!allowed[from.vertex] || !allowed[to.vertex]) {
      throw PreconditionError("reaches: restriction set must contain both endpoints");
    }
  }
  if (from.vertex == to.vertex && from.time == to.time) return true;

  // Each vertex's timeline splits at its recovery marks into alive segments
  // [mark_{k-1}, mark_k). Search over (vertex, segment) keeping the earliest
  // entry time; a segment entered at e can transmit at any arrival in
  // (e, mark_k) that is <= to.time.
  auto segment_of = [&](Vertex v, double t) {
    auto marks = h.recoveries(v);
    return static_cast<std::size_t>(std::upper_bound(marks.begin(), marks.end(), t) - marks.begin());
  };
  auto segment_end = [&](Vertex v, std::size_t k) {
    auto marks = h.recoveries(v);
    return k < marks.size() ? marks[k] : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> best(g.n_vertices());
  for (Vertex v = 0; v < g.n_vertices(); ++v)
    best[v].assign(h.recoveries(v).size() + 1, std::numeric_limits<double>::infinity());

  struct Node {
    double entry;
    Vertex v;
    std::size_t seg;
    bool operator>(const Node& o) const { return entry > o.entry; }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<>> pq;
  const std::size_t s0 = segment_of(from.vertex, from.time);
  best[from.vertex][s0] = from.time;
  pq.push({from.time, from.vertex, s0});
  const std::size_t target_seg = segment_of(to.vertex, to.time);

  while (!pq.empty()) {
    const Node cur = pq.top();
    pq.pop();
    if (cur.entry > best[cur.v][cur.seg]) continue;
    if (cur.v == to.vertex && cur.seg == target_seg && cur.entry <= to.time) return true;
    const double end = std::min(segment_end(cur.v, cur.seg), std::nextafter(to.time, std::numeric_limits<double>::infinity()));
    for (const auto& inc : g.neighbors(cur.v)) {
      if (!allowed[inc.to]) continue;
      auto arrivals = h.transmissions(cur.v, inc.to);
      for (auto it = std::upper_bound(arrivals.begin(), arrivals.end(), cur.entry); it != arrivals.end() && *it < end; ++it) {
        const std::size_t seg = segment_of(inc.to, *it);
        if (*it < best[inc.to][seg]) {
          best[inc.to][seg] = *it;
          pq.push({*it, inc.to, seg});
        }
      }
    }
  }
  return false;
}

}  // namespace contact
