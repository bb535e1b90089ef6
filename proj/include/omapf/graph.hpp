#pragma once

#include <cassert>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "omapf/core.hpp"

namespace omapf {

// Directed graph with forward and reverse adjacency. Immutable after
// construction; safe to share read-only across concurrent solver runs.
// Grid-backed graphs also carry per-vertex (x, y) coordinates.
class Graph
{
public:
  Graph() = default;
  explicit Graph(int num_vertices) : adj_(num_vertices), radj_(num_vertices) {}

  int size() const { return static_cast<int>(adj_.size()); }

  bool valid(VertexId v) const { return v >= 0 && v < size(); }

  void add_edge(VertexId u, VertexId v)
  {
    assert(valid(u) && valid(v));
    adj_[u].push_back(v);
    radj_[v].push_back(u);
  }

  // Sorts adjacency lists so neighbor iteration order is deterministic.
  void finalize()
  {
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    for (auto& a : radj_) std::sort(a.begin(), a.end());
  }

  const std::vector<VertexId>& successors(VertexId v) const { return adj_[v]; }
  const std::vector<VertexId>& predecessors(VertexId v) const { return radj_[v]; }

  // N(v) for forward expansion: successors plus the implicit wait self-loop.
  std::vector<VertexId> forward_neighbors(VertexId v) const
  {
    if (!valid(v)) throw std::invalid_argument("forward_neighbors: invalid vertex id");
    return with_self(adj_[v], v);
  }

  // N(v) for backward expansion: predecessors plus the wait self-loop.
  std::vector<VertexId> backward_neighbors(VertexId v) const
  {
    if (!valid(v)) throw std::invalid_argument("backward_neighbors: invalid vertex id");
    return with_self(radj_[v], v);
  }

  bool has_edge(VertexId u, VertexId v) const
  {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  bool has_coords() const { return !coords_.empty(); }
  int x_of(VertexId v) const { return coords_[v].first; }
  int y_of(VertexId v) const { return coords_[v].second; }

  void set_coords(std::vector<std::pair<int, int>> coords) { coords_ = std::move(coords); }

private:
  static std::vector<VertexId> with_self(const std::vector<VertexId>& base, VertexId v)
  {
    std::vector<VertexId> out;
    out.reserve(base.size() + 1);
    bool inserted = false;
    for (VertexId u : base) {
      if (!inserted && v < u) {
        out.push_back(v);
        inserted = true;
      }
      if (u == v) inserted = true;  // self-loop stored explicitly, keep once
      out.push_back(u);
    }
    if (!inserted) out.push_back(v);
    return out;
  }

  std::vector<std::vector<VertexId>> adj_;
  std::vector<std::vector<VertexId>> radj_;
  std::vector<std::pair<int, int>> coords_;
};

// 4-neighbor grid; '.' free, '@' blocked. Every cell is a vertex (id = y*W+x),
// blocked cells are isolated.
struct GridMap
{
  int width = 0;
  int height = 0;
  std::vector<char> blocked;  // row-major

  GridMap() = default;
  GridMap(int w, int h) : width(w), height(h), blocked(static_cast<size_t>(w) * h, 0) {}

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  bool is_blocked(int x, int y) const { return blocked[static_cast<size_t>(y) * width + x] != 0; }
  void set_blocked(int x, int y, bool b) { blocked[static_cast<size_t>(y) * width + x] = b ? 1 : 0; }
  VertexId vertex(int x, int y) const { return y * width + x; }

  Graph to_graph() const
  {
    Graph g(width * height);
    std::vector<std::pair<int, int>> coords(static_cast<size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        coords[vertex(x, y)] = {x, y};
        if (is_blocked(x, y)) continue;
        if (in_bounds(x + 1, y) && !is_blocked(x + 1, y)) {
          g.add_edge(vertex(x, y), vertex(x + 1, y));
          g.add_edge(vertex(x + 1, y), vertex(x, y));
        }
        if (in_bounds(x, y + 1) && !is_blocked(x, y + 1)) {
          g.add_edge(vertex(x, y), vertex(x, y + 1));
          g.add_edge(vertex(x, y + 1), vertex(x, y));
        }
      }
    }
    g.finalize();
    g.set_coords(std::move(coords));
    return g;
  }
};

// Map file format:
//   height <H>
//   width <W>
//   <H rows of W chars, '.' free, '@' blocked>
inline GridMap parse_map(std::istream& in)
{
  std::string line;
  int h = 0, w = 0;
  if (!std::getline(in, line) || std::sscanf(line.c_str(), "height %d", &h) != 1 || h <= 0)
    throw std::runtime_error("map parse error at line 1: expected 'height <H>'");
  if (!std::getline(in, line) || std::sscanf(line.c_str(), "width %d", &w) != 1 || w <= 0)
    throw std::runtime_error("map parse error at line 2: expected 'width <W>'");
  GridMap m(w, h);
  for (int y = 0; y < h; ++y) {
    const int lineno = y + 3;
    if (!std::getline(in, line))
      throw std::runtime_error("map parse error at line " + std::to_string(lineno) + ": missing row");
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (static_cast<int>(line.size()) != w)
      throw std::runtime_error("map parse error at line " + std::to_string(lineno) + ": ragged row (expected width " + std::to_string(w) + ", got " + std::to_string(line.size()) + ")");
    for (int x = 0; x < w; ++x) {
      if (line[x] == '.') continue;
      if (line[x] == '@') {
        m.set_blocked(x, y, true);
        continue;
      }
      throw std::runtime_error("map parse error at line " + std::to_string(lineno) + ": invalid character '" + std::string(1, line[x]) + "'");
    }
  }
  return m;
}

inline GridMap load_map(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  return parse_map(in);
}

inline void write_map(std::ostream& out, const GridMap& m)
{
  out << "height " << m.height << "\n";
  out << "width " << m.width << "\n";
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) out << (m.is_blocked(x, y) ? '@' : '.');
    out << "\n";
  }
}

inline Cost manhattan_h(const Graph& g, VertexId v, VertexId target)
{
  assert(g.has_coords());
  return std::abs(g.x_of(v) - g.x_of(target)) + std::abs(g.y_of(v) - g.y_of(target));
}

// Unconstrained shortest-path distance from every vertex to `target`
// (BFS over reverse edges). Unreachable vertices get kInfCost.
inline std::vector<Cost> exact_h(const Graph& g, VertexId target)
{
  std::vector<Cost> dist(g.size(), kInfCost);
  std::deque<VertexId> q;
  dist[target] = 0;
  q.push_back(target);
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    for (VertexId u : g.predecessors(v)) {
      if (dist[u] == kInfCost) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
    }
  }
  return dist;
}

// Unconstrained shortest-path distance from `source` to every vertex
// (BFS over forward edges).
inline std::vector<Cost> distances_from(const Graph& g, VertexId source)
{
  std::vector<Cost> dist(g.size(), kInfCost);
  std::deque<VertexId> q;
  dist[source] = 0;
  q.push_back(source);
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    for (VertexId u : g.successors(v)) {
      if (dist[u] == kInfCost) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
    }
  }
  return dist;
}

}  // namespace omapf
