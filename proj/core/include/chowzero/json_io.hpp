#ifndef CHOWZERO_JSON_IO_HPP_
#define CHOWZERO_JSON_IO_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "chowzero/engine.hpp"
#include "chowzero/graph.hpp"
#include "chowzero/relations.hpp"
#include "chowzero/strata.hpp"

namespace chowzero {

// All parsers throw std::invalid_argument on malformed input. Writers emit
// compact single-line JSON with a fixed key order.

std::string graph_to_json(const PrestableGraph& g);
PrestableGraph graph_from_json(std::string_view text);

// {"graph": ..., "exps": [{"v": i, "kind": "kappa2|psi|twoterm", "e": k}, ...]}
// Trivially decorated vertices are omitted.
std::string stratum_to_json(const PrestableGraph& g, const std::vector<int>& exps);
std::string stratum_to_json(const NormalFormStratum& s);

struct DecoratedGraph {
  PrestableGraph graph;
  std::vector<int> exps;
};
DecoratedGraph stratum_from_json(std::string_view text);

// {"graph": ..., "psi": [{"v": i, "leg": l | "edge": e, "e": k}, ...],
//  "kappa": [{"v": i, "index": 2, "e": k}, ...], "coeff": "p/q"}
std::string monomial_to_json(const MonomialStratum& m);
MonomialStratum monomial_from_json(std::string_view text);

// Accepts monomial or stratum JSON (the latter expanded into monomials).
std::vector<MonomialStratum> monomials_from_json(std::string_view text);

std::string strata_vector_to_json(const StrataVector& v);
std::string relation_to_json(const RelationVector& r);

std::string result_to_json(const ChowResult& r);
ChowResult result_from_json(std::string_view text);

}  // namespace chowzero

#endif  // CHOWZERO_JSON_IO_HPP_
