#include "brute_force.hpp"

#include "chowzero/engine.hpp"
#include "chowzero/enumerate.hpp"
#include "chowzero/normalize.hpp"
#include "chowzero/rank.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <numeric>
#include <set>

namespace chowzero::testing {

std::vector<std::vector<std::pair<int, int>>> labeled_trees(int k) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (k == 1) return {{}};
  if (k == 2) return {{{0, 1}}};
  std::vector<int> seq(k - 2, 0);
  while (true) {
    std::vector<int> degree(k, 1);
    for (int x : seq) ++degree[x];
    std::vector<std::pair<int, int>> edges;
    for (int x : seq) {
      int leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      edges.emplace_back(leaf, x);
      --degree[leaf];
      --degree[x];
    }
    std::vector<int> last;
    for (int v = 0; v < k; ++v) {
      if (degree[v] == 1) last.push_back(v);
    }
    edges.emplace_back(last[0], last[1]);
    out.push_back(std::move(edges));
    int pos = 0;
    while (pos < k - 2 && ++seq[pos] == k) seq[pos++] = 0;
    if (pos == k - 2) break;
  }
  return out;
}

namespace {

std::set<std::pair<int, int>> edge_set(const PrestableGraph& g, const std::vector<int>& image) {
  std::set<std::pair<int, int>> out;
  for (auto [a, b] : g.edges()) {
    out.emplace(std::min(image[a], image[b]), std::max(image[a], image[b]));
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> brute_automorphisms(const PrestableGraph& g) {
  const int nv = g.num_vertices();
  std::vector<int> identity(nv);
  std::iota(identity.begin(), identity.end(), 0);
  const auto edges = edge_set(g, identity);
  std::vector<std::vector<int>> out;
  std::vector<int> perm = identity;
  do {
    bool ok = true;
    for (int v = 0; v < nv && ok; ++v) ok = g.legs(v) == g.legs(perm[v]);
    if (ok && edge_set(g, perm) == edges) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::string brute_key(const PrestableGraph& g) {
  const int nv = g.num_vertices();
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::vector<std::vector<int>> legs(nv);
    for (int v = 0; v < nv; ++v) legs[perm[v]] = g.legs(v);
    std::string text = std::to_string(g.n()) + "|";
    for (const auto& l : legs) {
      text += "[";
      for (int x : l) text += std::to_string(x) + ",";
      text += "]";
    }
    for (auto [a, b] : edge_set(g, perm)) text += std::to_string(a) + "-" + std::to_string(b) + ";";
    if (best.empty() || text < best) best = std::move(text);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

PrestableGraph shuffled(const PrestableGraph& g, std::mt19937_64& rng) {
  const int nv = g.num_vertices();
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int>> legs(nv);
  for (int v = 0; v < nv; ++v) legs[perm[v]] = g.legs(v);
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : g.edges()) {
    if (rng() & 1) std::swap(a, b);
    edges.emplace_back(perm[a], perm[b]);
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return PrestableGraph(g.n(), std::move(legs), std::move(edges));
}

PrestableGraph random_graph(int n, int vertices, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < vertices; ++v) {
    edges.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  }
  std::vector<std::vector<int>> legs(vertices);
  for (int l = 1; l <= n; ++l) {
    legs[std::uniform_int_distribution<int>(0, vertices - 1)(rng)].push_back(l);
  }
  return PrestableGraph(n, std::move(legs), std::move(edges));
}

namespace {

void add_term(MonomialSum& sum, const Monomial& m, long long coeff) {
  auto& slot = sum[m];
  slot += coeff;
  if (slot == 0) sum.erase(m);
}

SlotKey slot_of(const PrestableGraph& g, int v, const HalfEdge& h) {
  return {v, h.is_leg() ? 0 : 1, h.id};
}

}  // namespace

MonomialSum expand_decorated(const PrestableGraph& g, const std::vector<int>& exps) {
  MonomialSum sum{{Monomial{}, 1}};
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int e = exps.at(v);
    const auto hs = g.half_edges(v);
    std::vector<std::pair<Monomial, long long>> local;
    switch (hs.size()) {
      case 0:
        local.push_back({e > 0 ? Monomial{{{v, 2, 0}, e}} : Monomial{}, 1});
        break;
      case 1:
        local.push_back({e > 0 ? Monomial{{slot_of(g, v, hs[0]), e}} : Monomial{}, 1});
        break;
      case 2:
        if (e == 0) {
          local.push_back({Monomial{}, 2});
        } else {
          local.push_back({Monomial{{slot_of(g, v, hs[0]), e}}, 1});
          local.push_back({Monomial{{slot_of(g, v, hs[1]), e}}, e % 2 == 0 ? 1 : -1});
        }
        break;
      default:
        local.push_back({Monomial{}, 1});
    }
    MonomialSum next;
    for (const auto& [m, c] : sum) {
      for (const auto& [lm, lc] : local) {
        Monomial product = m;
        product.insert(lm.begin(), lm.end());
        add_term(next, product, c * lc);
      }
    }
    sum = std::move(next);
  }
  return sum;
}

MonomialSum relabel(const MonomialSum& sum, const std::vector<int>& vertex_image,
                    const std::vector<int>& edge_image) {
  MonomialSum out;
  for (const auto& [m, c] : sum) {
    Monomial moved;
    for (const auto& [key, e] : m) {
      auto [v, slot, id] = key;
      moved[{vertex_image[v], slot, slot == 1 ? edge_image[id] : id}] = e;
    }
    add_term(out, moved, c);
  }
  return out;
}

MonomialSum orbit_sum(const PrestableGraph& g, const std::vector<int>& exps) {
  const auto base = expand_decorated(g, exps);
  MonomialSum total;
  for (const auto& image : brute_automorphisms(g)) {
    std::vector<int> edge_image(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
      auto [a, b] = g.edge(e);
      edge_image[e] = g.edge_between(image[a], image[b]);
    }
    for (const auto& [m, c] : relabel(base, image, edge_image)) add_term(total, m, c);
  }
  return total;
}

std::map<int, std::vector<int>> keel_dimensions() {
  std::ifstream in(std::string(CHOWZERO_ORACLE_DIR) + "/keel_dims.txt");
  if (!in) throw std::runtime_error("missing keel_dims.txt");
  std::map<int, std::vector<int>> out;
  std::string line;
  while (std::getline(in, line)) {
    int n = 0;
    char colon = 0;
    std::istringstream fields(line.substr(line.find('=') + 1));
    if (!(fields >> n >> colon)) continue;
    for (int dim; fields >> dim;) out[n].push_back(dim);
  }
  return out;
}

ReferenceChoiceReport reference_choice_report(int n, int d) {
  ReferenceChoiceReport report;
  auto system = relation_system({n, d, LocusPredicate::all()});
  std::map<NormalFormStratum, int> index;
  for (const auto& s : system.basis) index.emplace(s, static_cast<int>(index.size()));
  auto augmented = system.matrix;
  for (int edges = 0; edges < d; ++edges) {
    for (const auto& cls : graph_classes(n, edges)) {
      const auto& g = cls.graph;
      for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.valence(v) < 3) continue;
        const auto hs = g.half_edges(v);
        for (std::size_t slot = 0; slot < hs.size(); ++slot) {
          auto m = MonomialStratum::bare(g);
          m.psi[v][slot] = d - edges;
          std::vector<HalfEdge> others;
          for (const auto& x : hs) {
            if (x != hs[slot]) others.push_back(x);
          }
          const auto reference =
              normalize(remove_psi(m, v, hs[slot], {others[0], others[1]}), n, d);
          for (std::size_t i = 0; i < others.size(); ++i) {
            for (std::size_t j = i + 1; j < others.size(); ++j) {
              if (i == 0 && j == 1) continue;
              auto diff = normalize(remove_psi(m, v, hs[slot], {others[i], others[j]}), n, d);
              diff.add(reference, -1);
              ++report.differences;
              report.nonzero += !diff.empty();
              SparseRatMatrix::Row row;
              for (const auto& [s, c] : diff.terms()) row.emplace_back(index.at(s), c);
              augmented.append_row(std::move(row));
            }
          }
        }
      }
    }
  }
  // Every difference lies in the span iff appending them all keeps the rank.
  report.in_span = rank(augmented) == rank(system.matrix);
  return report;
}

}  // namespace chowzero::testing
