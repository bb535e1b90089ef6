#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "omapf/core.hpp"

namespace omapf {

// A single CBS constraint on one agent. Vertex: the agent may not occupy
// `vertex` at `time`. Edge: the agent may not traverse from->to arriving
// at `time`.
struct Constraint
{
  enum class Kind : uint8_t { Vertex = 0, Edge = 1 };

  Kind kind = Kind::Vertex;
  Time time = 0;
  VertexId vertex = -1;  // Vertex kind
  VertexId from = -1;    // Edge kind
  VertexId to = -1;      // Edge kind

  static Constraint vertex_at(VertexId v, Time t)
  {
    Constraint c;
    c.kind = Kind::Vertex;
    c.time = t;
    c.vertex = v;
    return c;
  }

  static Constraint edge_arriving(VertexId from, VertexId to, Time t)
  {
    Constraint c;
    c.kind = Kind::Edge;
    c.time = t;
    c.from = from;
    c.to = to;
    return c;
  }

  auto key() const { return std::make_tuple(static_cast<int>(kind), time, kind == Kind::Vertex ? vertex : from, kind == Kind::Vertex ? -1 : to); }

  bool operator==(const Constraint& o) const { return key() == o.key(); }
  bool operator<(const Constraint& o) const { return key() < o.key(); }
};

// Ordered, deduplicated constraints for one agent. The canonical key is a
// length-prefixed binary encoding of the sorted constraints, so any
// insertion order of the same set yields the same key.
class ConstraintSet
{
public:
  ConstraintSet() = default;

  void insert(const Constraint& c)
  {
    auto it = std::lower_bound(items_.begin(), items_.end(), c);
    if (it != items_.end() && *it == c) return;
    items_.insert(it, c);
  }

  bool empty() const { return items_.empty(); }
  size_t size() const { return items_.size(); }
  const std::vector<Constraint>& items() const { return items_; }

  bool vertex_constrained(VertexId v, Time t) const
  {
    for (const auto& c : items_)
      if (c.kind == Constraint::Kind::Vertex && c.vertex == v && c.time == t) return true;
    return false;
  }

  bool edge_constrained(VertexId from, VertexId to, Time arrival) const
  {
    for (const auto& c : items_)
      if (c.kind == Constraint::Kind::Edge && c.from == from && c.to == to && c.time == arrival) return true;
    return false;
  }

  // Sorted vertex-constraint times at v.
  std::vector<Time> vertex_times(VertexId v) const
  {
    std::vector<Time> out;
    for (const auto& c : items_)
      if (c.kind == Constraint::Kind::Vertex && c.vertex == v) out.push_back(c.time);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Sorted arrival times for edge constraints on from->to.
  std::vector<Time> edge_arrival_times(VertexId from, VertexId to) const
  {
    std::vector<Time> out;
    for (const auto& c : items_)
      if (c.kind == Constraint::Kind::Edge && c.from == from && c.to == to) out.push_back(c.time);
    std::sort(out.begin(), out.end());
    return out;
  }

  Time max_time() const
  {
    Time t = 0;
    for (const auto& c : items_) t = std::max(t, c.time);
    return t;
  }

  std::string canonical_key() const
  {
    std::string key;
    key.reserve(4 + items_.size() * 17);
    append_u32(key, static_cast<uint32_t>(items_.size()));
    for (const auto& c : items_) {
      key.push_back(static_cast<char>(c.kind));
      append_u32(key, static_cast<uint32_t>(c.time));
      if (c.kind == Constraint::Kind::Vertex) {
        append_u32(key, static_cast<uint32_t>(c.vertex));
        append_u32(key, 0xffffffffu);
      } else {
        append_u32(key, static_cast<uint32_t>(c.from));
        append_u32(key, static_cast<uint32_t>(c.to));
      }
    }
    return key;
  }

  bool operator==(const ConstraintSet& o) const { return items_ == o.items_; }

private:
  static void append_u32(std::string& s, uint32_t v)
  {
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }

  std::vector<Constraint> items_;
};

}  // namespace omapf
