#pragma once

#include "braid.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace isomono {

enum class OrbitStatus { Closed, Cutoff };

struct OrbitEdge {
  std::size_t from;
  std::string generator;
  std::size_t to;
};

struct OrbitResult {
  std::string seed;
  std::vector<std::string> generators;
  OrbitStatus status = OrbitStatus::Closed;
  std::size_t cutoff = 0;
  std::vector<TraceTuple> elements;  // discovery order, seed first
  std::vector<OrbitEdge> edges;

  std::size_t size() const { return elements.size(); }
  bool closed() const { return status == OrbitStatus::Closed; }
  std::set<std::string> keys() const {
    std::set<std::string> k;
    for (const auto& e : elements) k.insert(trace_key(e));
    return k;
  }
};

namespace detail {

// BFS over matrix tuples, deduplicated by the trace tuple of the first four entries
inline OrbitResult orbit_bfs(const std::vector<PMat>& seed, const std::vector<NamedBraid>& gens, std::size_t cutoff) {
  if (cutoff < 1) throw algebra_error("cutoff must be at least 1");
  OrbitResult res;
  for (const auto& g : gens) res.generators.push_back(g.name);
  res.cutoff = cutoff;
  std::unordered_map<std::string, std::size_t> index;
  std::deque<std::pair<std::size_t, std::vector<PMat>>> queue;
  TraceTuple t0 = trace_coordinates(seed);
  index.emplace(trace_key(t0), 0);
  res.elements.push_back(t0);
  queue.emplace_back(0, seed);
  std::vector<NamedBraid> moves;
  for (const auto& g : gens) {
    moves.push_back(g);
    moves.push_back({g.name + "^-1", g.word.inverse()});
  }
  while (!queue.empty()) {
    auto [at, tuple] = std::move(queue.front());
    queue.pop_front();
    for (const auto& mv : moves) {
      std::vector<PMat> next = braid_act(mv.word, tuple);
      TraceTuple t = trace_coordinates(next);
      auto [it, fresh] = index.emplace(trace_key(t), res.elements.size());
      if (fresh) {
        if (res.elements.size() >= cutoff) {
          index.erase(it);
          res.status = OrbitStatus::Cutoff;
          return res;
        }
        res.elements.push_back(t);
        queue.emplace_back(it->second, std::move(next));
      }
      res.edges.push_back({at, mv.name, it->second});
    }
  }
  return res;
}

}  // namespace detail

// spherical generators act on the closed five-tuple
inline OrbitResult orbit(const RepTuple& seed, const std::vector<NamedBraid>& gens, std::size_t cutoff) {
  bool spherical = !gens.empty() && gens.front().word.flavor == BraidFlavor::Spherical5;
  return detail::orbit_bfs(spherical ? seed.five() : std::vector<PMat>(seed.m.begin(), seed.m.end()), gens, cutoff);
}

inline OrbitResult pure_orbit(const RepTuple& seed, std::size_t cutoff = 100) { return orbit(seed, pure_generators(), cutoff); }

inline constexpr std::size_t kDefaultExtendedCutoff = 10000;

inline OrbitResult extended_orbit(const RepTuple& seed, std::size_t cutoff = kDefaultExtendedCutoff) {
  return orbit(seed, spherical_generators(), cutoff);
}

enum class OrbitRelation { Equal, Member, Overlap, Disjoint };

inline const char* to_string(OrbitRelation r) {
  switch (r) {
    case OrbitRelation::Equal: return "Equal";
    case OrbitRelation::Member: return "Member";
    case OrbitRelation::Overlap: return "Overlap";
    case OrbitRelation::Disjoint: return "Disjoint";
  }
  return "?";
}

struct CompareResult {
  OrbitRelation relation = OrbitRelation::Disjoint;
  std::vector<std::size_t> witnesses;  // indices into B of elements also found in sigma(A)
};

using Substitution = std::map<std::string, LaurentPoly>;

// "u=-s,v=s"; every image must be a signed monomial
inline Substitution parse_substitution(const Ctx& ctx, const std::string& text) {
  Substitution out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw parse_error("substitution item '" + item + "' lacks '='");
    std::string var = item.substr(0, eq);
    var.erase(std::remove_if(var.begin(), var.end(), ::isspace), var.end());
    if (ctx->index(var) < 0) throw parse_error("unknown variable '" + var + "' in substitution");
    LaurentPoly img = LaurentPoly::parse(ctx, item.substr(eq + 1));
    if (!img.is_monomial()) throw parse_error("image of '" + var + "' is not a signed monomial");
    out[var] = img;
  }
  return out;
}

inline TraceTuple apply_substitution(const TraceTuple& t, const Substitution& s) {
  if (s.empty()) return t;
  const Ctx& ctx = t[0].ctx();
  std::vector<std::optional<LaurentPoly>> im(ctx->size());
  for (const auto& [k, v] : s) {
    if (!v.is_monomial()) throw algebra_error("image of '" + k + "' is not a signed monomial");
    im[ctx->require(k)] = v;
  }
  return substitute(t, im, ctx);
}

inline CompareResult orbit_compare(const std::vector<TraceTuple>& a, const std::vector<TraceTuple>& b,
                                   const Substitution& sigma = {}) {
  std::set<std::string> ka;
  for (const auto& t : a) ka.insert(trace_key(apply_substitution(t, sigma)));
  std::set<std::string> kb;
  CompareResult r;
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::string k = trace_key(b[i]);
    kb.insert(k);
    if (ka.count(k)) r.witnesses.push_back(i);
  }
  std::set<std::string> uniq_hits;
  for (auto i : r.witnesses) uniq_hits.insert(trace_key(b[i]));
  if (ka == kb) r.relation = OrbitRelation::Equal;
  else if (uniq_hits.size() == kb.size() || uniq_hits.size() == ka.size()) r.relation = OrbitRelation::Member;
  else if (!uniq_hits.empty()) r.relation = OrbitRelation::Overlap;
  else r.relation = OrbitRelation::Disjoint;
  return r;
}

inline CompareResult orbit_compare(const OrbitResult& a, const OrbitResult& b, const Substitution& sigma = {}) {
  return orbit_compare(a.elements, b.elements, sigma);
}

// serialized elements in lexicographic order, edges renumbered accordingly
inline nlohmann::json orbit_to_json(const OrbitResult& o) {
  std::vector<std::size_t> order(o.elements.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<std::string>> ser;
  for (const auto& e : o.elements) ser.push_back(trace_strings(e));
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ser[x] < ser[y]; });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  nlohmann::json j;
  j["seed"] = o.seed;
  j["generators"] = o.generators;
  j["status"] = o.closed() ? "Closed" : "Cutoff";
  j["cutoff"] = o.cutoff;
  j["elements"] = nlohmann::json::array();
  for (auto i : order) j["elements"].push_back(ser[i]);
  std::vector<std::tuple<std::size_t, std::string, std::size_t>> edges;
  for (const auto& e : o.edges) edges.emplace_back(rank[e.from], e.generator, rank[e.to]);
  std::sort(edges.begin(), edges.end());
  j["edges"] = nlohmann::json::array();
  for (const auto& [f, g, t] : edges) j["edges"].push_back({f, g, t});
  return j;
}

inline OrbitResult orbit_from_json(const nlohmann::json& j, const Ctx& ctx) {
  OrbitResult o;
  try {
    o.seed = j.at("seed").get<std::string>();
    o.generators = j.at("generators").get<std::vector<std::string>>();
    o.status = j.at("status").get<std::string>() == "Closed" ? OrbitStatus::Closed : OrbitStatus::Cutoff;
    o.cutoff = j.value("cutoff", std::size_t{0});
    for (const auto& e : j.at("elements")) o.elements.push_back(parse_trace_tuple(ctx, e.get<std::vector<std::string>>()));
    for (const auto& e : j.value("edges", nlohmann::json::array()))
      o.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::string>(), e.at(2).get<std::size_t>()});
  } catch (const nlohmann::json::exception& ex) {
    throw parse_error(std::string("malformed orbit file: ") + ex.what());
  }
  return o;
}

}  // namespace isomono
