#include "chowzero/strata.hpp"

#include <functional>
#include <stdexcept>
#include <string_view>

#include "chowzero/enumerate.hpp"

namespace chowzero {

DecorationKind decoration_kind(int valence) {
  switch (valence) {
    case 0:
      return DecorationKind::kKappa2;
    case 1:
      return DecorationKind::kPsi;
    case 2:
      return DecorationKind::kTwoTerm;
    default:
      return DecorationKind::kTrivial;
  }
}

const char* to_string(DecorationKind kind) {
  switch (kind) {
    case DecorationKind::kKappa2:
      return "kappa2";
    case DecorationKind::kPsi:
      return "psi";
    case DecorationKind::kTwoTerm:
      return "twoterm";
    case DecorationKind::kTrivial:
      break;
  }
  return "trivial";
}

void validate_exponents(const PrestableGraph& g, std::span<const int> exps) {
  if (static_cast<int>(exps.size()) != g.num_vertices()) {
    throw std::invalid_argument("exponent record does not match vertex count");
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (exps[v] < 0) throw std::invalid_argument("negative exponent");
    if (exps[v] != 0 && decoration_kind(g.valence(v)) == DecorationKind::kTrivial) {
      throw std::invalid_argument("decoration on a vertex of valence >= 3");
    }
  }
}

int decorated_degree(const PrestableGraph& g, std::span<const int> exps) {
  int total = g.num_edges();
  for (int v = 0; v < g.num_vertices(); ++v) {
    total += g.valence(v) == 0 ? 2 * exps[v] : exps[v];
  }
  return total;
}

std::size_t StratumHash::operator()(const NormalFormStratum& s) const {
  std::size_t h = std::hash<std::string_view>{}(s.key.text);
  for (int e : s.exps) h = h * 1000003u ^ static_cast<std::size_t>(e + 1);
  return h;
}

int degree(const NormalFormStratum& s) { return decorated_degree(s.graph, s.exps); }

int automorphism_sign(const PrestableGraph& g, std::span<const int> exps,
                      const Automorphism& sigma) {
  int sign = 1;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.valence(v) != 2 || exps[v] % 2 == 0) continue;
    const HalfEdge image = sigma.apply(g.half_edges(v).front());
    if (image != g.half_edges(sigma.vertex[v]).front()) sign = -sign;
  }
  return sign;
}

namespace {

bool has_odd_two_term(const PrestableGraph& g, std::span<const int> exps) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.valence(v) == 2 && exps[v] % 2 != 0) return true;
  }
  return false;
}

}  // namespace

bool is_zero_by_symmetry(const PrestableGraph& g, std::span<const int> exps) {
  validate_exponents(g, exps);
  if (!has_odd_two_term(g, exps)) return false;
  // The sign is a character of the stabilizer, so generators suffice.
  for (const auto& sigma : automorphisms(g, exps).generators) {
    if (automorphism_sign(g, exps, sigma) < 0) return true;
  }
  return false;
}

bool is_zero_by_symmetry(const NormalFormStratum& s) {
  return is_zero_by_symmetry(s.graph, s.exps);
}

SignedStratum canonicalize_signed(const PrestableGraph& g, std::span<const int> exps) {
  validate_exponents(g, exps);
  auto cf = canonical_form(g, exps);
  std::vector<int> moved(exps.size());
  int sign = 1;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int target = cf.relabeling.vertex[v];
    moved[target] = exps[v];
    if (g.valence(v) == 2 && exps[v] % 2 != 0) {
      const HalfEdge image = cf.relabeling.apply(g.half_edges(v).front());
      if (image != cf.graph.half_edges(target).front()) sign = -sign;
    }
  }
  if (has_odd_two_term(cf.graph, moved) && is_zero_by_symmetry(cf.graph, moved)) sign = 0;
  return {NormalFormStratum{std::move(cf.key), std::move(cf.graph), std::move(moved)}, sign};
}

CanonicalTerm canonicalize_decorated(const PrestableGraph& g, std::span<const int> exps,
                                     const Rational& coeff) {
  auto signed_stratum = canonicalize_signed(g, exps);
  return {std::move(signed_stratum.stratum), coeff * signed_stratum.sign};
}

std::vector<NormalFormStratum> enumerate_basis(int n, int d, const LocusPredicate& locus,
                                               BasisOptions options) {
  std::vector<NormalFormStratum> out;
  if (n < 0 || d < 0) return out;
  for (int edges = 0; edges <= d; ++edges) {
    for (const auto& cls : graph_classes(n, edges)) {
      const auto& g = cls.graph;
      if (!locus(g)) continue;
      std::vector<int> decorated;
      for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.valence(v) <= 2) decorated.push_back(v);
      }
      std::vector<int> exps(g.num_vertices(), 0);
      // Assign the remaining degree to decorated vertices in index order;
      // this visits assignments in lexicographic order.
      std::function<void(std::size_t, int)> assign = [&](std::size_t i, int left) {
        if (i == decorated.size()) {
          if (left != 0) return;
          auto cf = canonical_form(g, exps);
          std::vector<int> moved(exps.size());
          for (int v = 0; v < g.num_vertices(); ++v) moved[cf.relabeling.vertex[v]] = exps[v];
          if (moved != exps) return;
          if (!options.include_vanishing && is_zero_by_symmetry(g, exps)) return;
          out.push_back({cls.key, g, exps});
          return;
        }
        const int v = decorated[i];
        const int step = g.valence(v) == 0 ? 2 : 1;
        for (int e = 0; e * step <= left; ++e) {
          exps[v] = e;
          assign(i + 1, left - e * step);
        }
        exps[v] = 0;
      };
      assign(0, d - edges);
    }
  }
  return out;
}

Rational StrataVector::coefficient(const NormalFormStratum& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

void StrataVector::add(const NormalFormStratum& s, const Rational& coeff) {
  if (s.n() != n_ || chowzero::degree(s) != degree_) {
    throw std::invalid_argument("stratum does not match vector n/degree");
  }
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(s, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

void StrataVector::add(const StrataVector& other, const Rational& scale) {
  if (other.n_ != n_ || other.degree_ != degree_) {
    throw std::invalid_argument("strata vectors differ in markings or degree");
  }
  for (const auto& [s, c] : other.terms_) add(s, c * scale);
}

StrataVector& StrataVector::operator*=(const Rational& scale) {
  if (scale == 0) {
    terms_.clear();
  } else {
    for (auto& [s, c] : terms_) c *= scale;
  }
  return *this;
}

MonomialStratum MonomialStratum::bare(const PrestableGraph& g, Rational coeff) {
  MonomialStratum m{g, {}, {}, std::move(coeff)};
  m.kappa.assign(g.num_vertices(), {});
  for (int v = 0; v < g.num_vertices(); ++v) m.psi.emplace_back(g.valence(v), 0);
  return m;
}

int MonomialStratum::kappa2_power(int v) const {
  const auto& ks = kappa.at(v);
  if (ks.empty()) return 0;
  if (graph.valence(v) != 0) {
    throw std::invalid_argument("kappa classes are only supported at vertices without half-edges");
  }
  for (int k : ks) {
    if (k != 2) throw std::invalid_argument("only kappa_2 is supported");
  }
  return static_cast<int>(ks.size());
}

void MonomialStratum::validate() const {
  const int nv = graph.num_vertices();
  if (static_cast<int>(psi.size()) != nv || static_cast<int>(kappa.size()) != nv) {
    throw std::invalid_argument("decoration record does not match vertex count");
  }
  for (int v = 0; v < nv; ++v) {
    if (static_cast<int>(psi[v].size()) != graph.valence(v)) {
      throw std::invalid_argument("psi record does not match valence");
    }
    for (int e : psi[v]) {
      if (e < 0) throw std::invalid_argument("negative psi exponent");
    }
    kappa2_power(v);
  }
}

int MonomialStratum::degree() const {
  int total = graph.num_edges();
  for (int v = 0; v < graph.num_vertices(); ++v) {
    for (int e : psi[v]) total += e;
    for (int k : kappa[v]) total += k;
  }
  return total;
}

std::vector<MonomialStratum> expand_to_monomials(const NormalFormStratum& s) {
  const auto& g = s.graph;
  std::vector<MonomialStratum> out{MonomialStratum::bare(g)};
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int e = s.exps[v];
    switch (decoration_kind(g.valence(v))) {
      case DecorationKind::kKappa2:
        for (auto& m : out) m.kappa[v].assign(e, 2);
        break;
      case DecorationKind::kPsi:
        for (auto& m : out) m.psi[v][0] = e;
        break;
      case DecorationKind::kTwoTerm: {
        std::vector<MonomialStratum> doubled;
        for (const auto& m : out) {
          auto first = m;
          first.psi[v][0] = e;
          auto second = m;
          second.psi[v][1] = e;
          if (e % 2 != 0) second.coeff = -second.coeff;
          doubled.push_back(std::move(first));
          doubled.push_back(std::move(second));
        }
        out = std::move(doubled);
        break;
      }
      case DecorationKind::kTrivial:
        break;
    }
  }
  return out;
}

}  // namespace chowzero
