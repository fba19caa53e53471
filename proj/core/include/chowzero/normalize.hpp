#ifndef CHOWZERO_NORMALIZE_HPP_
#define CHOWZERO_NORMALIZE_HPP_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "chowzero/graph.hpp"
#include "chowzero/strata.hpp"

namespace chowzero {

// The two half-edges j, l that must land on the far side when psi_h is
// traded for boundary divisors at a vertex of valence >= 3.
struct PsiReferences {
  HalfEdge first;
  HalfEdge second;
};

// (total psi degree, sum of second-slot exponents at two-valent vertices).
// Every rewriting step decreases it lexicographically.
std::pair<int, int> rewrite_measure(const MonomialStratum& m);

// First vertex whose psi decoration is not of normal-form shape, or -1.
int first_offending_vertex(const MonomialStratum& m);

// One rewriting step at the first offending vertex. At a vertex of valence
// >= 3 the references default to the two smallest other half-edges.
// Throws std::invalid_argument when nothing is left to rewrite, and
// std::logic_error if a produced term fails to decrease the measure.
std::vector<MonomialStratum> psi_rewrite_step(const MonomialStratum& m,
                                              std::optional<PsiReferences> refs = std::nullopt);

// Rewrites one factor psi_h at vertex v (valence >= 3, exponent >= 1) as
// the sum of splittings with h on the kept side and both references on
// the new side.
std::vector<MonomialStratum> remove_psi(const MonomialStratum& m, int v, const HalfEdge& h,
                                        const PsiReferences& refs);

// Expresses a monomial decorated stratum in the normal-form basis.
StrataVector normalize(const MonomialStratum& m);
StrataVector normalize(std::span<const MonomialStratum> terms, int n, int degree);

}  // namespace chowzero

#endif  // CHOWZERO_NORMALIZE_HPP_
