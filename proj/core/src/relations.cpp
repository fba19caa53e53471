#include "chowzero/relations.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "chowzero/normalize.hpp"

namespace chowzero {

const char* to_string(WdvvPairing pairing) {
  return pairing == WdvvPairing::kSecond ? "(ij|kl)-(ik|jl)" : "(ij|kl)-(il|jk)";
}

LocalRelation wdvv_local(std::span<const int> markings, const QuadSplit& plus,
                         const QuadSplit& minus) {
  std::vector<int> sorted(markings.begin(), markings.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() < 4) throw std::invalid_argument("WDVV needs at least four markings");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("repeated marking label");
  }
  auto is_marking = [&](int x) { return std::binary_search(sorted.begin(), sorted.end(), x); };
  for (const auto* q : {&plus, &minus}) {
    std::set<int> four{q->left[0], q->left[1], q->right[0], q->right[1]};
    if (four.size() != 4 || !std::all_of(four.begin(), four.end(), is_marking)) {
      throw std::invalid_argument("quad must name four distinct markings");
    }
  }
  // Keyed by the side holding the smallest marking, so that D(A|B) and
  // D(B|A) merge.
  std::map<std::vector<int>, Rational> sums;
  auto accumulate = [&](const QuadSplit& q, int sign) {
    std::vector<int> rest;
    for (int x : sorted) {
      if (x != q.left[0] && x != q.left[1] && x != q.right[0] && x != q.right[1]) rest.push_back(x);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << rest.size()); ++mask) {
      std::vector<int> first{q.left[0], q.left[1]};
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (mask >> i & 1) first.push_back(rest[i]);
      }
      std::sort(first.begin(), first.end());
      if (first.front() != sorted.front()) {
        std::vector<int> other;
        std::set_difference(sorted.begin(), sorted.end(), first.begin(), first.end(),
                            std::back_inserter(other));
        first = std::move(other);
      }
      sums[first] += sign;
    }
  };
  accumulate(plus, 1);
  accumulate(minus, -1);
  LocalRelation rel;
  rel.markings = sorted;
  for (auto& [first, coeff] : sums) {
    if (coeff == 0) continue;
    std::vector<int> second;
    std::set_difference(sorted.begin(), sorted.end(), first.begin(), first.end(),
                        std::back_inserter(second));
    rel.splits.push_back({first, std::move(second), {}, coeff});
  }
  return rel;
}

LocalRelation wdvv_local(std::span<const int> markings, std::array<int, 4> quad,
                         WdvvPairing pairing) {
  const auto [i, j, k, l] = quad;
  const QuadSplit plus{{i, j}, {k, l}};
  const QuadSplit minus =
      pairing == WdvvPairing::kSecond ? QuadSplit{{i, k}, {j, l}} : QuadSplit{{i, l}, {j, k}};
  return wdvv_local(markings, plus, minus);
}

namespace {

HalfEdge identify(const LocalRelation& rel, std::span<const HalfEdge> identification, int label) {
  auto it = std::lower_bound(rel.markings.begin(), rel.markings.end(), label);
  if (it == rel.markings.end() || *it != label) {
    throw std::invalid_argument("relation term names an unknown marking");
  }
  return identification[it - rel.markings.begin()];
}

}  // namespace

StrataVector glue_relation_at_vertex(const NormalFormStratum& s, int v, const LocalRelation& rel,
                                     std::span<const HalfEdge> identification) {
  const auto& g = s.graph;
  if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("no such vertex");
  // A two-term decoration with c = 0 is twice the trivial class, not trivial.
  if (s.exps[v] != 0 || decoration_kind(g.valence(v)) == DecorationKind::kTwoTerm) {
    throw std::invalid_argument("gluing needs a trivially decorated vertex");
  }
  if (rel.markings.size() != static_cast<std::size_t>(g.valence(v)) ||
      identification.size() != rel.markings.size()) {
    throw std::invalid_argument("relation arity does not match the vertex valence");
  }
  {
    auto local = g.half_edges(v);
    std::vector<HalfEdge> named(identification.begin(), identification.end());
    std::sort(named.begin(), named.end());
    if (named != local) throw std::invalid_argument("identification must list the half-edges at v");
  }
  const int target_degree = degree(s) + 1;
  StrataVector out(g.n(), target_degree);
  if (rel.empty()) return out;
  const bool plain = std::all_of(rel.splits.begin(), rel.splits.end(),
                                 [](const SplitTerm& t) {
                                   return std::all_of(t.psi.begin(), t.psi.end(),
                                                      [](const auto& kv) { return kv.second == 0; });
                                 }) &&
                     rel.vertex_terms.empty();
  if (plain) {
    for (const auto& term : rel.splits) {
      std::vector<HalfEdge> side;
      for (int label : term.first) side.push_back(identify(rel, identification, label));
      auto split = split_vertex(g, v, side);
      auto exps = s.exps;
      exps.push_back(0);
      bool normal = true;
      for (int w : {split.kept_vertex, split.new_vertex}) {
        if (split.graph.valence(w) <= 2) normal = false;
      }
      if (normal) {
        auto t = canonicalize_decorated(split.graph, exps, term.coeff);
        out.add(t.stratum, t.coeff);
        continue;
      }
      // Low-valence new vertices carry trivial classes, which are not
      // normal-form shaped; route through the general path.
      std::vector<MonomialStratum> pieces;
      for (auto m : expand_to_monomials(s)) {
        auto parts = split_vertex(m.graph, v, side);
        MonomialStratum glued{std::move(parts.graph), m.psi, m.kappa, m.coeff * term.coeff};
        glued.psi.emplace_back();
        glued.kappa.emplace_back();
        for (int w : {parts.kept_vertex, parts.new_vertex}) {
          glued.psi[w].assign(glued.graph.valence(w), 0);
        }
        pieces.push_back(std::move(glued));
      }
      out.add(normalize(pieces, g.n(), target_degree));
    }
    return out;
  }
  std::vector<MonomialStratum> pieces;
  for (const auto& m : expand_to_monomials(s)) {
    for (const auto& term : rel.splits) {
      std::vector<HalfEdge> side;
      std::map<HalfEdge, int> exps;
      for (int label : term.first) side.push_back(identify(rel, identification, label));
      for (const auto& [label, e] : term.psi) exps[identify(rel, identification, label)] = e;
      auto parts = split_vertex(m.graph, v, side);
      MonomialStratum glued{std::move(parts.graph), m.psi, m.kappa, m.coeff * term.coeff};
      glued.psi.emplace_back();
      glued.kappa.emplace_back();
      for (int w : {parts.kept_vertex, parts.new_vertex}) {
        glued.psi[w].clear();
        for (const auto& h : glued.graph.half_edges(w)) {
          auto it = exps.find(h);
          glued.psi[w].push_back(it == exps.end() ? 0 : it->second);
        }
      }
      pieces.push_back(std::move(glued));
    }
    for (const auto& term : rel.vertex_terms) {
      auto glued = m;
      glued.coeff *= term.coeff;
      const auto hs = g.half_edges(v);
      for (std::size_t i = 0; i < hs.size(); ++i) glued.psi[v][i] = 0;
      for (const auto& [label, e] : term.psi) {
        auto h = identify(rel, identification, label);
        glued.psi[v][std::find(hs.begin(), hs.end(), h) - hs.begin()] = e;
      }
      pieces.push_back(std::move(glued));
    }
  }
  int piece_degree = -1;
  for (const auto& p : pieces) {
    if (piece_degree < 0) piece_degree = p.degree();
    if (p.degree() != piece_degree) throw std::invalid_argument("relation is not homogeneous");
  }
  StrataVector result(g.n(), piece_degree < 0 ? target_degree : piece_degree);
  result.add(normalize(pieces, g.n(), result.degree()));
  return result;
}

void for_each_wdvv_row(int n, int d, const LocusPredicate& base_locus,
                       const std::function<void(const WdvvRow&)>& sink) {
  if (d < 1) return;
  const auto bases = enumerate_basis(n, d - 1, base_locus, {.include_vanishing = true});
  for (const auto& base : bases) {
    const auto& g = base.graph;
    for (int v = 0; v < g.num_vertices(); ++v) {
      const int m = g.valence(v);
      if (m < 4) continue;
      const auto hs = g.half_edges(v);
      // Canonical image of each splitting of v, keyed by the bitmask of
      // half-edges kept on v; filled lazily.
      std::map<unsigned, SignedStratum> images;
      auto image = [&](unsigned mask) -> const SignedStratum& {
        auto it = images.find(mask);
        if (it != images.end()) return it->second;
        std::vector<HalfEdge> side;
        for (int i = 0; i < m; ++i) {
          if (mask >> i & 1u) side.push_back(hs[i]);
        }
        auto split = split_vertex(g, v, side);
        auto exps = base.exps;
        exps.push_back(0);
        return images.emplace(mask, canonicalize_signed(split.graph, exps)).first->second;
      };
      // Terms of sum over D(I1|I2) with pair p in I1 and pair q in I2.
      auto side_terms = [&](int p0, int p1, int q0, int q1, int sign,
                            std::vector<SignedStratum>& terms) {
        const unsigned fixed = 1u << p0 | 1u << p1 | 1u << q0 | 1u << q1;
        std::vector<int> rest;
        for (int i = 0; i < m; ++i) {
          if (!(fixed >> i & 1u)) rest.push_back(i);
        }
        for (unsigned sub = 0; sub < (1u << rest.size()); ++sub) {
          unsigned mask = 1u << p0 | 1u << p1;
          for (std::size_t i = 0; i < rest.size(); ++i) {
            if (sub >> i & 1u) mask |= 1u << rest[i];
          }
          const auto& img = image(mask);
          if (img.sign == 0) continue;
          terms.push_back({img.stratum, img.sign * sign});
        }
      };
      for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
          for (int c = b + 1; c < m; ++c) {
            for (int e = c + 1; e < m; ++e) {
              for (auto pairing : {WdvvPairing::kSecond, WdvvPairing::kThird}) {
                WdvvRow row{&base, v, {hs[a], hs[b], hs[c], hs[e]}, pairing, {}};
                side_terms(a, b, c, e, 1, row.terms);
                if (pairing == WdvvPairing::kSecond) {
                  side_terms(a, c, b, e, -1, row.terms);
                } else {
                  side_terms(a, e, b, c, -1, row.terms);
                }
                sink(row);
              }
            }
          }
        }
      }
    }
  }
}

std::vector<RelationVector> wdvv_relations(int n, int d, const LocusPredicate& locus) {
  std::vector<RelationVector> out;
  for_each_wdvv_row(n, d, LocusPredicate::all(), [&](const WdvvRow& row) {
    RelationVector rel{StrataVector(n, d), {}};
    for (const auto& t : row.terms) {
      if (locus(t.stratum.graph)) rel.vector.add(t.stratum, t.sign);
    }
    rel.provenance.kind = "wdvv";
    rel.provenance.base_key = row.base->key;
    rel.provenance.base_exps = row.base->exps;
    rel.provenance.vertex = row.vertex;
    rel.provenance.quad.assign(row.quad.begin(), row.quad.end());
    rel.provenance.pairing = row.pairing;
    out.push_back(std::move(rel));
  });
  return out;
}

}  // namespace chowzero
