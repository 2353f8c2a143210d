#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cost_set.hpp"
#include "cost_table.hpp"
#include "instance.hpp"

namespace seqbin {

inline constexpr Value kDummyValue = -1;

struct GraphVertex {
  int layer;    // 0 and n+1 are the dummy layers
  Value value;  // kDummyValue for the source and sink
};

struct GraphEdge {
  int from;
  int to;
  int weight;  // 0 or 1
};

// Layers 0..n+1; layer i+1 holds the values of X_i.
class LayeredGraph {
 public:
  int n = 0;
  Value d = 0;
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  std::vector<std::vector<int>> layers;    // vertex ids per layer
  std::vector<std::vector<int>> out_edges;  // edge ids per vertex
  std::vector<std::vector<int>> in_edges;

  int source() const { return layers.front().front(); }
  int sink() const { return layers.back().front(); }
  int layer_count() const { return static_cast<int>(layers.size()); }

  // Vertex of x_{layer, value}, or -1.
  int vertex(int layer, Value value) const {
    if (layer == 0 || layer == n + 1) return layers[layer].front();
    const auto& ids = layers[layer];
    auto it = std::lower_bound(ids.begin(), ids.end(), value,
                               [&](int id, Value v) { return vertices[id].value < v; });
    return (it != ids.end() && vertices[*it].value == value) ? *it : -1;
  }

  int add_vertex(int layer, Value value) {
    vertices.push_back({layer, value});
    layers[layer].push_back(static_cast<int>(vertices.size()) - 1);
    out_edges.emplace_back();
    in_edges.emplace_back();
    return static_cast<int>(vertices.size()) - 1;
  }
  void add_edge(int from, int to, int weight) {
    edges.push_back({from, to, weight});
    const int id = static_cast<int>(edges.size()) - 1;
    out_edges[from].push_back(id);
    in_edges[to].push_back(id);
  }
};

inline LayeredGraph build_graph(const Instance& inst) {
  LayeredGraph g;
  g.n = inst.n;
  g.d = inst.d;
  g.layers.resize(static_cast<std::size_t>(inst.n) + 2);
  const int src = g.add_vertex(0, kDummyValue);
  for (int i = 0; i < inst.n; ++i) {
    if (inst.domains[i].empty()) throw std::invalid_argument("domain of X" + std::to_string(i) + " is empty");
    for (Value j : inst.domains[i]) g.add_vertex(i + 1, j);
  }
  const int snk = g.add_vertex(inst.n + 1, kDummyValue);

  for (int id : g.layers[1]) g.add_edge(src, id, kDummyEdgeWeight);
  for (int i = 0; i + 1 < inst.n; ++i) {
    const BinaryRelation& b = inst.b(i);
    const BinaryRelation& c = inst.c(i);
    for (int from : g.layers[i + 1]) {
      const Value j = g.vertices[from].value;
      for (int to : g.layers[i + 2]) {
        const Value v = g.vertices[to].value;
        if (b.contains(j, v)) g.add_edge(from, to, c.cost(j, v));
      }
    }
  }
  for (int id : g.layers[inst.n]) g.add_edge(id, snk, kDummyEdgeWeight);
  return g;
}

namespace detail {

// acc := acc u (s + shift), both sorted
inline void merge_shifted(ExplicitSet& acc, const ExplicitSet& s, int shift, ExplicitSet& scratch) {
  scratch.clear();
  scratch.reserve(acc.size() + s.size());
  std::size_t x = 0, y = 0;
  while (x < acc.size() || y < s.size()) {
    if (y == s.size() || (x < acc.size() && acc[x] < s[y] + shift)) {
      scratch.push_back(acc[x++]);
    } else if (x == acc.size() || s[y] + shift < acc[x]) {
      scratch.push_back(s[y++] + shift);
    } else {
      scratch.push_back(acc[x++]);
      ++y;
    }
  }
  acc.swap(scratch);
}

}  // namespace detail

// Forward and backward sets by plain explicit unions, totals by bitset sums.
inline ExplicitCostTable pathdp(const LayeredGraph& g) {
  const int nv = static_cast<int>(g.vertices.size());
  std::vector<ExplicitSet> fwd(nv), bwd(nv);
  ExplicitSet scratch;

  fwd[g.sink()] = {0};
  for (int layer = g.n; layer >= 0; --layer) {
    for (int id : g.layers[layer]) {
      for (int e : g.out_edges[id]) detail::merge_shifted(fwd[id], fwd[g.edges[e].to], g.edges[e].weight, scratch);
    }
  }
  bwd[g.source()] = {0};
  for (int layer = 1; layer <= g.n + 1; ++layer) {
    for (int id : g.layers[layer]) {
      for (int e : g.in_edges[id]) detail::merge_shifted(bwd[id], bwd[g.edges[e].from], g.edges[e].weight, scratch);
    }
  }

  ExplicitCostTable t(g.n, g.d);
  for (int layer = 1; layer <= g.n; ++layer) {
    for (int id : g.layers[layer]) {
      const int i = layer - 1;
      const Value j = g.vertices[id].value;
      t.present[t.index(i, j)] = 1;
      t.f(i, j) = fwd[id];
      t.b(i, j) = bwd[id];
      ExplicitSet tot = minkowski_explicit(fwd[id], bwd[id]);
      for (int& x : tot) x -= kDummyEdgeWeight;
      t.c(i, j) = std::move(tot);
    }
  }
  t.achievable = fwd[g.source()];
  for (int& x : t.achievable) x -= kDummyEdgeWeight;
  return t;
}

inline std::string export_dot(const LayeredGraph& g, const ExplicitCostTable* ct = nullptr) {
  if (ct && (ct->n != g.n || ct->present.empty())) ct = nullptr;
  std::ostringstream os;
  auto name = [&](int id) {
    const GraphVertex& v = g.vertices[id];
    if (v.layer == 0) return std::string("src");
    if (v.layer == g.n + 1) return std::string("snk");
    return "x" + std::to_string(v.layer) + "_" + std::to_string(v.value);
  };
  os << "digraph seqbin {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int layer = 0; layer < g.layer_count(); ++layer) {
    os << "  { rank=same;";
    for (int id : g.layers[layer]) os << " " << name(id) << ";";
    os << " }\n";
  }
  for (int id = 0; id < static_cast<int>(g.vertices.size()); ++id) {
    const GraphVertex& v = g.vertices[id];
    std::string label = v.value == kDummyValue ? "0*" : std::to_string(v.value);
    if (ct && v.value != kDummyValue && ct->has(v.layer - 1, v.value)) {
      label += "\\n" + to_string(classify(ct->f(v.layer - 1, v.value)));
    }
    os << "  " << name(id) << " [label=\"" << label << "\"];\n";
  }
  for (const GraphEdge& e : g.edges) {
    os << "  " << name(e.from) << " -> " << name(e.to) << " [style=" << (e.weight ? "dashed" : "solid") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace seqbin
