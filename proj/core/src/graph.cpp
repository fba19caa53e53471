#include "chowzero/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace chowzero {

std::string to_string(const HalfEdge& h) {
  return (h.is_leg() ? "leg " : "edge ") + std::to_string(h.id);
}

PrestableGraph::PrestableGraph() : PrestableGraph(0, {{}}, {}) {}

PrestableGraph::PrestableGraph(int n, std::vector<std::vector<int>> legs,
                               std::vector<std::pair<int, int>> edges)
    : n_(n), legs_(std::move(legs)), edges_(std::move(edges)) {
  validate_and_index();
}

PrestableGraph PrestableGraph::trivial(int n) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 1);
  return PrestableGraph(n, {all}, {});
}

void PrestableGraph::validate_and_index() {
  if (n_ < 0) throw std::invalid_argument("negative marking count");
  const int nv = num_vertices();
  if (nv == 0) throw std::invalid_argument("graph has no vertices");
  if (num_edges() != nv - 1) {
    throw std::invalid_argument("not a tree: |E| != |V| - 1");
  }
  std::vector<int> seen(n_ + 1, 0);
  for (auto& list : legs_) {
    std::sort(list.begin(), list.end());
    for (int l : list) {
      if (l < 1 || l > n_) throw std::invalid_argument("leg label out of range");
      if (seen[l]++) throw std::invalid_argument("repeated leg label");
    }
  }
  for (int l = 1; l <= n_; ++l) {
    if (!seen[l]) throw std::invalid_argument("leg labels do not cover 1..n");
  }
  incident_.assign(nv, {});
  std::vector<std::pair<int, int>> normalized;
  normalized.reserve(edges_.size());
  for (int e = 0; e < num_edges(); ++e) {
    auto [a, b] = edges_[e];
    if (a < 0 || b < 0 || a >= nv || b >= nv) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (a == b) throw std::invalid_argument("self-edge");
    incident_[a].push_back(e);
    incident_[b].push_back(e);
    normalized.emplace_back(std::min(a, b), std::max(a, b));
  }
  auto sorted = normalized;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("parallel edges");
  }
  // Connectivity (with |E| = |V| - 1 this rules out cycles as well).
  std::vector<char> reached(nv, 0);
  std::vector<int> stack{0};
  reached[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : incident_[v]) {
      int w = other_end(e, v);
      if (!reached[w]) {
        reached[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  if (count != nv) throw std::invalid_argument("not a tree: disconnected");
}

std::vector<HalfEdge> PrestableGraph::half_edges(int v) const {
  std::vector<HalfEdge> out;
  out.reserve(valence(v));
  for (int l : legs_.at(v)) out.push_back(HalfEdge::leg(l));
  for (int e : incident_.at(v)) out.push_back(HalfEdge::edge(e));
  return out;
}

int PrestableGraph::other_end(int e, int v) const {
  auto [a, b] = edges_.at(e);
  if (a == v) return b;
  if (b == v) return a;
  throw std::invalid_argument("edge not incident to vertex");
}

int PrestableGraph::vertex_of_leg(int label) const {
  for (int v = 0; v < num_vertices(); ++v) {
    if (std::binary_search(legs_[v].begin(), legs_[v].end(), label)) return v;
  }
  throw std::out_of_range("no such leg");
}

int PrestableGraph::edge_between(int u, int w) const {
  for (int e : incident_.at(u)) {
    if (other_end(e, u) == w) return e;
  }
  return -1;
}

bool PrestableGraph::has_half_edge(int v, const HalfEdge& h) const {
  if (h.is_leg()) return std::binary_search(legs_.at(v).begin(), legs_.at(v).end(), h.id);
  const auto& inc = incident_.at(v);
  return std::binary_search(inc.begin(), inc.end(), h.id);
}

PrestableGraph contract_edge(const PrestableGraph& g, int e) {
  if (e < 0 || e >= g.num_edges()) throw std::out_of_range("invalid edge id");
  auto [a, b] = g.edge(e);
  const int keep = std::min(a, b);
  const int drop = std::max(a, b);
  auto relabel = [&](int v) {
    if (v == drop) return keep;
    return v > drop ? v - 1 : v;
  };
  std::vector<std::vector<int>> legs;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == drop) continue;
    legs.push_back(g.legs(v));
  }
  auto& merged = legs[keep];
  merged.insert(merged.end(), g.legs(drop).begin(), g.legs(drop).end());
  std::vector<std::pair<int, int>> edges;
  for (int f = 0; f < g.num_edges(); ++f) {
    if (f == e) continue;
    auto [x, y] = g.edge(f);
    edges.emplace_back(relabel(x), relabel(y));
  }
  return PrestableGraph(g.n(), std::move(legs), std::move(edges));
}

VertexSplit split_vertex(const PrestableGraph& g, int v, const std::vector<HalfEdge>& side) {
  for (const auto& h : side) {
    if (!g.has_half_edge(v, h)) {
      throw std::invalid_argument("split side names a half-edge not at the vertex");
    }
  }
  auto in_side = [&](const HalfEdge& h) {
    return std::find(side.begin(), side.end(), h) != side.end();
  };
  auto legs = g.all_legs();
  auto edges = g.edges();
  const int fresh = g.num_vertices();
  legs.emplace_back();
  std::vector<int> stay;
  for (int l : g.legs(v)) {
    (in_side(HalfEdge::leg(l)) ? stay : legs[fresh]).push_back(l);
  }
  legs[v] = std::move(stay);
  for (int e : g.incident_edges(v)) {
    if (in_side(HalfEdge::edge(e))) continue;
    auto& [x, y] = edges[e];
    if (x == v) x = fresh; else y = fresh;
  }
  const int new_edge = g.num_edges();
  edges.emplace_back(v, fresh);
  return {PrestableGraph(g.n(), std::move(legs), std::move(edges)), v, fresh, new_edge};
}

}  // namespace chowzero
