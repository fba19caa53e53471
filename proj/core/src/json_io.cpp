#include "chowzero/json_io.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace chowzero {
namespace {

using Json = nlohmann::ordered_json;

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed document: ") + e.what());
  }
}

Json graph_json(const PrestableGraph& g) {
  Json vertices = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) vertices.push_back({{"legs", g.legs(v)}});
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  return {{"n", g.n()}, {"vertices", vertices}, {"edges", edges}};
}

PrestableGraph graph_of(const Json& j) {
  std::vector<std::vector<int>> legs;
  for (const auto& v : j.at("vertices")) legs.push_back(v.at("legs").get<std::vector<int>>());
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (e.size() != 2) throw std::invalid_argument("edge must have two endpoints");
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  return PrestableGraph(j.at("n").get<int>(), std::move(legs), std::move(edges));
}

Json stratum_json(const PrestableGraph& g, const std::vector<int>& exps) {
  Json list = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto kind = decoration_kind(g.valence(v));
    if (kind == DecorationKind::kTrivial) continue;
    list.push_back({{"v", v}, {"kind", to_string(kind)}, {"e", exps.at(v)}});
  }
  return {{"graph", graph_json(g)}, {"exps", list}};
}

DecoratedGraph stratum_of(const Json& j) {
  auto g = graph_of(j.at("graph"));
  std::vector<int> exps(g.num_vertices(), 0);
  std::vector<char> seen(g.num_vertices(), 0);
  for (const auto& item : j.at("exps")) {
    const int v = item.at("v").get<int>();
    if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("exponent names no vertex");
    if (seen[v]++) throw std::invalid_argument("vertex decorated twice");
    const auto kind = item.at("kind").get<std::string>();
    if (kind != to_string(decoration_kind(g.valence(v)))) {
      throw std::invalid_argument("decoration kind '" + kind + "' does not fit vertex " +
                                  std::to_string(v));
    }
    exps[v] = item.at("e").get<int>();
  }
  validate_exponents(g, exps);
  return {std::move(g), std::move(exps)};
}

Json vector_json(const StrataVector& v) {
  Json terms = Json::array();
  for (const auto& [s, c] : v.terms()) {
    terms.push_back({{"stratum", stratum_json(s.graph, s.exps)}, {"coeff", to_fraction_string(c)}});
  }
  return {{"n", v.n()}, {"degree", v.degree()}, {"terms", terms}};
}

Json half_edge_json(const HalfEdge& h) {
  return h.is_leg() ? Json{{"leg", h.id}} : Json{{"edge", h.id}};
}

}  // namespace

std::string graph_to_json(const PrestableGraph& g) { return graph_json(g).dump(); }

PrestableGraph graph_from_json(std::string_view text) {
  return guarded([&] { return graph_of(parse(text)); });
}

std::string stratum_to_json(const PrestableGraph& g, const std::vector<int>& exps) {
  return stratum_json(g, exps).dump();
}

std::string stratum_to_json(const NormalFormStratum& s) { return stratum_to_json(s.graph, s.exps); }

DecoratedGraph stratum_from_json(std::string_view text) {
  return guarded([&] { return stratum_of(parse(text)); });
}

std::string monomial_to_json(const MonomialStratum& m) {
  Json psi = Json::array();
  Json kappa = Json::array();
  for (int v = 0; v < m.graph.num_vertices(); ++v) {
    const auto hs = m.graph.half_edges(v);
    for (std::size_t i = 0; i < hs.size(); ++i) {
      if (m.psi[v][i] == 0) continue;
      Json item{{"v", v}};
      item.update(half_edge_json(hs[i]));
      item["e"] = m.psi[v][i];
      psi.push_back(item);
    }
    std::map<int, int> powers;
    for (int k : m.kappa[v]) ++powers[k];
    for (const auto& [index, e] : powers) kappa.push_back({{"v", v}, {"index", index}, {"e", e}});
  }
  return Json{{"graph", graph_json(m.graph)},
              {"psi", psi},
              {"kappa", kappa},
              {"coeff", to_fraction_string(m.coeff)}}
      .dump();
}

MonomialStratum monomial_from_json(std::string_view text) {
  return guarded([&] {
    auto j = parse(text);
    auto m = MonomialStratum::bare(graph_of(j.at("graph")));
    if (j.contains("psi")) {
      for (const auto& item : j.at("psi")) {
        const int v = item.at("v").get<int>();
        if (v < 0 || v >= m.graph.num_vertices()) throw std::invalid_argument("psi names no vertex");
        HalfEdge h = item.contains("leg") ? HalfEdge::leg(item.at("leg").get<int>())
                                          : HalfEdge::edge(item.at("edge").get<int>());
        const auto hs = m.graph.half_edges(v);
        auto it = std::find(hs.begin(), hs.end(), h);
        if (it == hs.end()) throw std::invalid_argument("psi names a half-edge not at its vertex");
        m.psi[v][it - hs.begin()] += item.at("e").get<int>();
      }
    }
    if (j.contains("kappa")) {
      for (const auto& item : j.at("kappa")) {
        const int v = item.at("v").get<int>();
        if (v < 0 || v >= m.graph.num_vertices()) {
          throw std::invalid_argument("kappa names no vertex");
        }
        const int e = item.at("e").get<int>();
        if (e < 0) throw std::invalid_argument("negative kappa exponent");
        for (int i = 0; i < e; ++i) m.kappa[v].push_back(item.at("index").get<int>());
      }
    }
    if (j.contains("coeff")) m.coeff = parse_rational(j.at("coeff").get<std::string>());
    m.validate();
    return m;
  });
}

std::vector<MonomialStratum> monomials_from_json(std::string_view text) {
  auto j = guarded([&] { return parse(text); });
  if (j.is_object() && j.contains("exps")) {
    auto d = stratum_from_json(text);
    // Expanded on the input labeling, so its own orientations apply.
    return expand_to_monomials(NormalFormStratum{GraphKey{}, d.graph, d.exps});
  }
  return {monomial_from_json(text)};
}

std::string strata_vector_to_json(const StrataVector& v) { return vector_json(v).dump(); }

std::string relation_to_json(const RelationVector& r) {
  auto j = vector_json(r.vector);
  Json quad = Json::array();
  for (const auto& h : r.provenance.quad) quad.push_back(half_edge_json(h));
  j["provenance"] = {{"kind", r.provenance.kind},
                     {"base_graph", r.provenance.base_key.text},
                     {"base_exps", r.provenance.base_exps},
                     {"vertex", r.provenance.vertex},
                     {"quad", quad},
                     {"pairing", to_string(r.provenance.pairing)}};
  return j.dump();
}

std::string result_to_json(const ChowResult& r) {
  return Json{{"n", r.n},
              {"d", r.degree},
              {"locus", r.locus},
              {"generators", r.generators},
              {"relation_rank", r.relation_rank},
              {"dim", r.dimension},
              {"provenance", to_string(r.provenance)}}
      .dump();
}

ChowResult result_from_json(std::string_view text) {
  return guarded([&] {
    auto j = parse(text);
    ChowResult r;
    r.n = j.at("n").get<int>();
    r.degree = j.at("d").get<int>();
    r.locus = j.at("locus").get<std::string>();
    r.generators = j.at("generators").get<std::size_t>();
    r.relation_rank = j.at("relation_rank").get<std::size_t>();
    r.dimension = j.at("dim").get<std::size_t>();
    r.provenance = parse_provenance(j.at("provenance").get<std::string>());
    if (r.dimension + r.relation_rank != r.generators) {
      throw std::invalid_argument("inconsistent result record");
    }
    return r;
  });
}

}  // namespace chowzero
