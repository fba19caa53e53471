#ifndef CHOWZERO_RELATIONS_HPP_
#define CHOWZERO_RELATIONS_HPP_

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chowzero/graph.hpp"
#include "chowzero/locus.hpp"
#include "chowzero/rational.hpp"
#include "chowzero/strata.hpp"

namespace chowzero {

// Term of a local relation that splits the vertex into two joined vertices.
// `psi` assigns exponents to markings (on whichever side they land).
struct SplitTerm {
  std::vector<int> first;   // markings kept on the original vertex
  std::vector<int> second;  // markings moved to the new vertex
  std::map<int, int> psi;
  Rational coeff;
};

// Term of a local relation that keeps the vertex whole.
struct VertexTerm {
  std::map<int, int> psi;
  Rational coeff;
};

// Relation among classes on the moduli space of one vertex, written in
// terms of abstract marking labels.
struct LocalRelation {
  std::vector<int> markings;
  std::vector<SplitTerm> splits;
  std::vector<VertexTerm> vertex_terms;

  bool empty() const { return splits.empty() && vertex_terms.empty(); }
};

// Two disjoint pairs of markings, read as the divisor (left | right).
struct QuadSplit {
  std::array<int, 2> left;
  std::array<int, 2> right;
};

// For a quad (i, j, k, l): kSecond is (ij|kl) - (ik|jl), kThird is
// (ij|kl) - (il|jk).
enum class WdvvPairing { kSecond, kThird };

const char* to_string(WdvvPairing pairing);

// Sum of D(I1|I2) over all distributions of the other markings with
// plus.left in I1 and plus.right in I2, minus the same sum for `minus`.
// Throws std::invalid_argument for fewer than four markings, repeated
// labels, or pairs that are not markings.
LocalRelation wdvv_local(std::span<const int> markings, const QuadSplit& plus,
                         const QuadSplit& minus);
LocalRelation wdvv_local(std::span<const int> markings, std::array<int, 4> quad,
                         WdvvPairing pairing);

struct RelationProvenance {
  std::string kind;  // "wdvv" or "psi-rewrite"
  GraphKey base_key;
  std::vector<int> base_exps;
  int vertex = -1;
  std::vector<HalfEdge> quad;
  WdvvPairing pairing = WdvvPairing::kSecond;
};

struct RelationVector {
  StrataVector vector;
  RelationProvenance provenance;
};

// Glues `rel` into vertex v of s. identification[i] is the half-edge at v
// that plays the role of rel.markings[i]. Every resulting term is brought
// into normal form (terms with psi decorations go through normalize), then
// canonicalized with its sign. Throws std::invalid_argument when v is
// decorated or the arity does not match.
StrataVector glue_relation_at_vertex(const NormalFormStratum& s, int v,
                                     const LocalRelation& rel,
                                     std::span<const HalfEdge> identification);

// One glued WDVV relation per (base stratum of degree d-1, vertex of valence
// >= 4, 4-subset of its half-edges, pairing). Terms outside the locus are
// dropped. Base strata include those that vanish by symmetry.
std::vector<RelationVector> wdvv_relations(int n, int d, const LocusPredicate& locus);

// Same relations in streaming form, with terms as signed canonical strata
// (sign 0 terms already removed, repeated strata not yet merged).
struct WdvvRow {
  const NormalFormStratum* base;
  int vertex;
  std::array<HalfEdge, 4> quad;
  WdvvPairing pairing;
  std::vector<SignedStratum> terms;
};
void for_each_wdvv_row(int n, int d, const LocusPredicate& base_locus,
                       const std::function<void(const WdvvRow&)>& sink);

}  // namespace chowzero

#endif  // CHOWZERO_RELATIONS_HPP_
