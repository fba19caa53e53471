#ifndef CHOWZERO_STRATA_HPP_
#define CHOWZERO_STRATA_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "chowzero/canonical.hpp"
#include "chowzero/graph.hpp"
#include "chowzero/locus.hpp"
#include "chowzero/rational.hpp"

namespace chowzero {

// Normal-form decoration shape, determined by the valence of the vertex.
enum class DecorationKind {
  kKappa2,   // valence 0: kappa_2^e
  kPsi,      // valence 1: psi^e at the only half-edge
  kTwoTerm,  // valence 2: psi_h^e + (-psi_h')^e, (h, h') in local order
  kTrivial,  // valence >= 3
};

DecorationKind decoration_kind(int valence);
const char* to_string(DecorationKind kind);

// Throws std::invalid_argument unless `exps` has one nonnegative entry per
// vertex and is zero wherever the decoration must be trivial.
void validate_exponents(const PrestableGraph& g, std::span<const int> exps);

// Degree of a decorated graph: edges plus decoration degrees.
int decorated_degree(const PrestableGraph& g, std::span<const int> exps);

// A decorated graph [graph, exps] in canonical position: `graph` is the
// canonical representative of its class and `exps` is the least exponent
// assignment in its automorphism orbit. Ordered by (key, exps).
struct NormalFormStratum {
  GraphKey key;
  PrestableGraph graph;
  std::vector<int> exps;

  int n() const { return graph.n(); }

  friend bool operator==(const NormalFormStratum& a, const NormalFormStratum& b) {
    return a.key == b.key && a.exps == b.exps;
  }
  friend std::strong_ordering operator<=>(const NormalFormStratum& a,
                                          const NormalFormStratum& b) {
    if (auto c = a.key <=> b.key; c != 0) return c;
    return a.exps <=> b.exps;
  }
};

struct StratumHash {
  std::size_t operator()(const NormalFormStratum& s) const;
};

int degree(const NormalFormStratum& s);

// Factor (+1 or -1) by which `sigma` acts on the decorated class: a two-term
// vertex with odd exponent contributes -1 when sigma does not send its first
// half-edge to the first half-edge of the image vertex.
int automorphism_sign(const PrestableGraph& g, std::span<const int> exps,
                      const Automorphism& sigma);

// True iff some exponent-preserving automorphism acts by -1.
bool is_zero_by_symmetry(const PrestableGraph& g, std::span<const int> exps);
bool is_zero_by_symmetry(const NormalFormStratum& s);

// Canonical position of an arbitrary decorated graph together with the
// orientation sign picked up on the way; sign is 0 for vanishing classes.
struct SignedStratum {
  NormalFormStratum stratum;
  int sign = 1;
};

SignedStratum canonicalize_signed(const PrestableGraph& g, std::span<const int> exps);

struct CanonicalTerm {
  NormalFormStratum stratum;
  Rational coeff;
};

CanonicalTerm canonicalize_decorated(const PrestableGraph& g, std::span<const int> exps,
                                     const Rational& coeff);

struct BasisOptions {
  // Keep decorated graphs that vanish by symmetry (used as gluing bases).
  bool include_vanishing = false;
};

// Canonical normal-form strata of degree d whose graph lies in `locus`,
// ordered by edge count, then graph key, then exponents.
std::vector<NormalFormStratum> enumerate_basis(int n, int d, const LocusPredicate& locus,
                                               BasisOptions options = {});

// Homogeneous rational combination of normal-form strata.
class StrataVector {
 public:
  using Terms = std::map<NormalFormStratum, Rational>;

  StrataVector(int n, int degree) : n_(n), degree_(degree) {}

  int n() const { return n_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const NormalFormStratum& s) const;

  // Throws std::invalid_argument when n or degree disagree.
  void add(const NormalFormStratum& s, const Rational& coeff);
  void add(const StrataVector& other, const Rational& scale = 1);
  StrataVector& operator*=(const Rational& scale);

  friend bool operator==(const StrataVector& a, const StrataVector& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  int n_;
  int degree_;
  Terms terms_;
};

// Decorated graph with psi exponents on half-edges and kappa classes on
// vertices. psi[v][i] refers to graph.half_edges(v)[i]; kappa[v] is the
// multiset of kappa indices at v.
struct MonomialStratum {
  PrestableGraph graph;
  std::vector<std::vector<int>> psi;
  std::vector<std::vector<int>> kappa;
  Rational coeff = 1;

  // Undecorated monomial on g.
  static MonomialStratum bare(const PrestableGraph& g, Rational coeff = 1);

  int degree() const;
  // kappa_2 power at v; throws for kappa classes outside kappa_2 at
  // vertices without half-edges.
  int kappa2_power(int v) const;
  // Throws std::invalid_argument on shape errors or unsupported kappa.
  void validate() const;
};

// Monomial terms whose sum is the normal-form class s.
std::vector<MonomialStratum> expand_to_monomials(const NormalFormStratum& s);

}  // namespace chowzero

#endif  // CHOWZERO_STRATA_HPP_
