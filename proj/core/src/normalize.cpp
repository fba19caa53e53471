#include "chowzero/normalize.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace chowzero {
namespace {

std::map<HalfEdge, int> psi_at(const MonomialStratum& m, int v) {
  std::map<HalfEdge, int> out;
  const auto hs = m.graph.half_edges(v);
  for (std::size_t i = 0; i < hs.size(); ++i) out[hs[i]] = m.psi[v][i];
  return out;
}

// Splits v so that `side` stays on v, carrying exponents from `exps`
// (half-edges not listed get 0).
MonomialStratum split_monomial(const MonomialStratum& m, int v, const std::vector<HalfEdge>& side,
                               const std::map<HalfEdge, int>& exps, const Rational& coeff) {
  auto split = split_vertex(m.graph, v, side);
  MonomialStratum out{std::move(split.graph), m.psi, m.kappa, coeff};
  out.psi.emplace_back();
  out.kappa.emplace_back();
  for (int w : {split.kept_vertex, split.new_vertex}) {
    out.psi[w].clear();
    for (const auto& h : out.graph.half_edges(w)) {
      auto it = exps.find(h);
      out.psi[w].push_back(it == exps.end() ? 0 : it->second);
    }
  }
  return out;
}

bool offending(const MonomialStratum& m, int v) {
  const int val = m.graph.valence(v);
  if (val == 2) return m.psi[v][1] > 0;
  if (val >= 3) {
    return std::any_of(m.psi[v].begin(), m.psi[v].end(), [](int e) { return e > 0; });
  }
  return false;
}

std::vector<MonomialStratum> rewrite_two_valent(const MonomialStratum& m, int v) {
  const auto hs = m.graph.half_edges(v);
  const int a = m.psi[v][0];
  const int b = m.psi[v][1];
  auto shifted = m;
  shifted.psi[v] = {a + 1, b - 1};
  shifted.coeff = -m.coeff;
  auto split = split_monomial(m, v, {hs[0]}, {{hs[0], a}, {hs[1], b - 1}}, m.coeff);
  return {std::move(shifted), std::move(split)};
}

// Converts pure first-slot psi powers at two-valent vertices into two-term
// decorations and accumulates the canonical results.
struct TwoTermState {
  PrestableGraph graph;
  std::vector<int> exps;
  std::vector<int> pending;  // -1 once settled
  Rational coeff;
};

void settle_two_terms(TwoTermState state, StrataVector& out) {
  int v = 0;
  const int nv = state.graph.num_vertices();
  while (v < nv && state.pending[v] < 0) ++v;
  if (v == nv) {
    auto term = canonicalize_decorated(state.graph, state.exps, state.coeff);
    out.add(term.stratum, term.coeff);
    return;
  }
  const int c = state.pending[v];
  const Rational half = state.coeff / 2;
  // psi_x^c = 1/2 (psi_x^c + (-psi_y)^c) + 1/2 (psi_x + psi_y) sum_i psi_x^(c-1-i) (-psi_y)^i
  {
    auto whole = state;
    whole.exps[v] = c;
    whole.pending[v] = -1;
    whole.coeff = half;
    settle_two_terms(std::move(whole), out);
  }
  const auto hs = state.graph.half_edges(v);
  for (int i = 0; i < c; ++i) {
    auto split = split_vertex(state.graph, v, {hs[0]});
    TwoTermState next{std::move(split.graph), state.exps, state.pending,
                      i % 2 == 0 ? half : Rational(-half)};
    next.exps.push_back(0);
    next.pending.push_back(i);
    next.pending[v] = c - 1 - i;
    settle_two_terms(std::move(next), out);
  }
}

void emit_normal_shape(const MonomialStratum& m, StrataVector& out) {
  const auto& g = m.graph;
  TwoTermState state{g, std::vector<int>(g.num_vertices(), 0),
                     std::vector<int>(g.num_vertices(), -1), m.coeff};
  for (int v = 0; v < g.num_vertices(); ++v) {
    switch (decoration_kind(g.valence(v))) {
      case DecorationKind::kKappa2:
        state.exps[v] = m.kappa2_power(v);
        break;
      case DecorationKind::kPsi:
        state.exps[v] = m.psi[v][0];
        break;
      case DecorationKind::kTwoTerm:
        state.pending[v] = m.psi[v][0];
        break;
      case DecorationKind::kTrivial:
        break;
    }
  }
  settle_two_terms(std::move(state), out);
}

}  // namespace

std::pair<int, int> rewrite_measure(const MonomialStratum& m) {
  int total = 0;
  int second = 0;
  for (int v = 0; v < m.graph.num_vertices(); ++v) {
    for (int e : m.psi[v]) total += e;
    if (m.graph.valence(v) == 2) second += m.psi[v][1];
  }
  return {total, second};
}

int first_offending_vertex(const MonomialStratum& m) {
  for (int v = 0; v < m.graph.num_vertices(); ++v) {
    if (offending(m, v)) return v;
  }
  return -1;
}

std::vector<MonomialStratum> remove_psi(const MonomialStratum& m, int v, const HalfEdge& h,
                                        const PsiReferences& refs) {
  const auto hs = m.graph.half_edges(v);
  if (hs.size() < 3) throw std::invalid_argument("psi removal needs valence >= 3");
  auto exps = psi_at(m, v);
  auto found = [&](const HalfEdge& x) { return exps.count(x) != 0; };
  if (!found(h) || !found(refs.first) || !found(refs.second) || refs.first == refs.second ||
      refs.first == h || refs.second == h) {
    throw std::invalid_argument("psi removal needs h and two distinct references at v");
  }
  if (exps[h] < 1) throw std::invalid_argument("no psi factor to remove");
  exps[h] -= 1;
  std::vector<HalfEdge> rest;
  for (const auto& x : hs) {
    if (x != h && x != refs.first && x != refs.second) rest.push_back(x);
  }
  std::vector<MonomialStratum> out;
  const std::size_t subsets = std::size_t{1} << rest.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<HalfEdge> side{h};
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (mask >> i & 1) side.push_back(rest[i]);
    }
    out.push_back(split_monomial(m, v, side, exps, m.coeff));
  }
  return out;
}

std::vector<MonomialStratum> psi_rewrite_step(const MonomialStratum& m,
                                              std::optional<PsiReferences> refs) {
  m.validate();
  const int v = first_offending_vertex(m);
  if (v < 0) throw std::invalid_argument("monomial is already in normal-form shape");
  std::vector<MonomialStratum> out;
  if (m.graph.valence(v) == 2) {
    out = rewrite_two_valent(m, v);
  } else {
    const auto hs = m.graph.half_edges(v);
    std::size_t slot = 0;
    while (m.psi[v][slot] == 0) ++slot;
    if (!refs) {
      std::vector<HalfEdge> others;
      for (std::size_t i = 0; i < hs.size() && others.size() < 2; ++i) {
        if (i != slot) others.push_back(hs[i]);
      }
      refs = PsiReferences{others[0], others[1]};
    }
    out = remove_psi(m, v, hs[slot], *refs);
  }
  const auto before = rewrite_measure(m);
  for (const auto& term : out) {
    if (!(rewrite_measure(term) < before)) {
      throw std::logic_error("psi rewriting failed to decrease its measure");
    }
  }
  return out;
}

StrataVector normalize(const MonomialStratum& m) {
  m.validate();
  return normalize(std::span<const MonomialStratum>(&m, 1), m.graph.n(), m.degree());
}

StrataVector normalize(std::span<const MonomialStratum> terms, int n, int degree) {
  StrataVector out(n, degree);
  std::vector<MonomialStratum> work(terms.begin(), terms.end());
  while (!work.empty()) {
    auto m = std::move(work.back());
    work.pop_back();
    m.validate();
    if (m.graph.n() != n || m.degree() != degree) {
      throw std::invalid_argument("monomial does not match target n/degree");
    }
    if (first_offending_vertex(m) < 0) {
      emit_normal_shape(m, out);
      continue;
    }
    for (auto& next : psi_rewrite_step(m)) work.push_back(std::move(next));
  }
  return out;
}

}  // namespace chowzero
