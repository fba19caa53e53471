#include "chowzero/locus.hpp"

#include <charconv>
#include <stdexcept>

#include "chowzero/enumerate.hpp"

namespace chowzero {

LocusPredicate LocusPredicate::all() {
  return {"all", [](const PrestableGraph&) { return true; }, true};
}

LocusPredicate LocusPredicate::max_nodes(int edges) {
  if (edges < 0) throw std::invalid_argument("max-nodes needs a nonnegative bound");
  return {"max-nodes=" + std::to_string(edges),
          [edges](const PrestableGraph& g) { return g.num_edges() <= edges; }};
}

LocusPredicate LocusPredicate::stable() {
  return {"stable", [](const PrestableGraph& g) {
            for (int v = 0; v < g.num_vertices(); ++v) {
              if (g.valence(v) < 3) return false;
            }
            return true;
          }};
}

LocusPredicate LocusPredicate::semistable() {
  return {"semistable", [](const PrestableGraph& g) {
            for (int v = 0; v < g.num_vertices(); ++v) {
              if (g.valence(v) < 2) return false;
            }
            return true;
          }};
}

LocusPredicate LocusPredicate::chain_t() {
  return {"chain-T", [](const PrestableGraph& g) {
            if (g.n() != 3) return false;
            const int nv = g.num_vertices();
            if (nv == 1) return true;
            int pair_end = -1;
            int single_end = -1;
            for (int v = 0; v < nv; ++v) {
              const auto degree = g.incident_edges(v).size();
              if (degree > 2) return false;
              const auto& legs = g.legs(v);
              if (degree == 2) {
                if (!legs.empty()) return false;
              } else if (legs == std::vector<int>{2, 3}) {
                pair_end = v;
              } else if (legs == std::vector<int>{1}) {
                single_end = v;
              } else {
                return false;
              }
            }
            return pair_end >= 0 && single_end >= 0;
          }};
}

LocusPredicate LocusPredicate::custom(std::string name, Test test) {
  return {std::move(name), std::move(test)};
}

LocusPredicate LocusPredicate::parse(std::string_view name) {
  if (name == "all") return all();
  if (name == "stable") return stable();
  if (name == "semistable") return semistable();
  if (name == "chain-T") return chain_t();
  constexpr std::string_view prefix = "max-nodes=";
  if (name.substr(0, prefix.size()) == prefix) {
    auto digits = name.substr(prefix.size());
    int edges = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), edges);
    if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty() &&
        edges >= 0) {
      return max_nodes(edges);
    }
  }
  throw std::invalid_argument("unknown locus '" + std::string(name) + "'");
}

bool verify_locus(const LocusPredicate& locus, int n, int max_edges) {
  for (int edges = 1; edges <= max_edges; ++edges) {
    for (const auto& cls : graph_classes(n, edges)) {
      if (!locus(cls.graph)) continue;
      for (int e = 0; e < edges; ++e) {
        if (!locus(contract_edge(cls.graph, e))) return false;
      }
    }
  }
  return true;
}

}  // namespace chowzero
