#pragma once

#include "wph/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wph {

using VertexId = std::string;
using VertexIndex = std::uint32_t;

class InvalidDigraph : public Error {
 public:
  explicit InvalidDigraph(std::vector<std::string> violations)
      : Error("invalid weighted digraph: " + join_messages(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

  static std::string join_messages(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& m : v) s += (s.empty() ? "" : "; ") + m;
    return s;
  }

 private:
  std::vector<std::string> violations_;
};

class NonDisjointVertexSets : public Error {
 public:
  explicit NonDisjointVertexSets(std::vector<VertexId> collisions)
      : Error("vertex sets are not disjoint: " + InvalidDigraph::join_messages(collisions)),
        collisions_(std::move(collisions)) {}
  const std::vector<VertexId>& collisions() const { return collisions_; }

 private:
  std::vector<VertexId> collisions_;
};

class InvalidMorphism : public Error {
 public:
  explicit InvalidMorphism(std::vector<std::string> violations)
      : Error("invalid morphism: " + InvalidDigraph::join_messages(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// A finite vertex-weighted digraph. Vertex order is the order of construction
// and fixes the canonical degree-0 basis. The raw input is kept as given so
// that validate_digraph can report every violation; algorithms only touch
// the indexed view (edges whose endpoints are declared).
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  WeightedDigraph(std::vector<VertexId> ids, std::vector<Rational> weights,
                  std::vector<std::pair<VertexId, VertexId>> edges)
      : ids_(std::move(ids)), weights_(std::move(weights)), raw_edges_(std::move(edges)) {
    weights_.resize(ids_.size(), Rational(1));
    for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], static_cast<VertexIndex>(i));
    adjacency_.assign(ids_.size() * ids_.size(), 0);
    std::set<std::pair<VertexIndex, VertexIndex>> seen;
    for (const auto& [s, t] : raw_edges_) {
      auto a = index_of(s), b = index_of(t);
      if (!a || !b || *a == *b) continue;
      if (seen.emplace(*a, *b).second) adjacency_[*a * ids_.size() + *b] = 1;
    }
    edges_.assign(seen.begin(), seen.end());
    out_.resize(ids_.size());
    for (const auto& [a, b] : edges_) out_[a].push_back(b);
  }

  std::size_t size() const { return ids_.size(); }
  const VertexId& id(VertexIndex i) const { return ids_[i]; }
  const std::vector<VertexId>& ids() const { return ids_; }
  const Rational& weight(VertexIndex i) const { return weights_[i]; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::optional<VertexIndex> index_of(const VertexId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool has_edge(VertexIndex a, VertexIndex b) const { return adjacency_[a * ids_.size() + b] != 0; }
  // Edges between declared, distinct vertices, sorted by (source, target) index.
  const std::vector<std::pair<VertexIndex, VertexIndex>>& edges() const { return edges_; }
  const std::vector<VertexIndex>& out_neighbors(VertexIndex a) const { return out_[a]; }
  const std::vector<std::pair<VertexId, VertexId>>& raw_edges() const { return raw_edges_; }

  WeightedDigraph with_weights(std::vector<Rational> weights) const {
    return WeightedDigraph(ids_, std::move(weights), raw_edges_);
  }

  std::vector<std::pair<VertexId, VertexId>> edge_ids() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto& [a, b] : edges_) out.emplace_back(ids_[a], ids_[b]);
    return out;
  }

 private:
  std::vector<VertexId> ids_;
  std::vector<Rational> weights_;
  std::vector<std::pair<VertexId, VertexId>> raw_edges_;
  std::unordered_map<VertexId, VertexIndex> index_;
  std::vector<char> adjacency_;
  std::vector<std::pair<VertexIndex, VertexIndex>> edges_;
  std::vector<std::vector<VertexIndex>> out_;
};

inline bool valid_vertex_id(const VertexId& id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

// Empty result means the digraph is valid under the ring.
inline std::vector<std::string> validate_digraph(const WeightedDigraph& g, Ring ring) {
  std::vector<std::string> out;
  std::set<VertexId> seen;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& id = g.id(static_cast<VertexIndex>(i));
    if (!valid_vertex_id(id)) out.push_back("malformed vertex id '" + id + "'");
    if (!seen.insert(id).second) out.push_back("duplicate vertex " + id);
    const auto& w = g.weight(static_cast<VertexIndex>(i));
    if (w == 0) out.push_back("zero weight at " + id);
    else if (ring == Ring::Integers && !is_integral(w))
      out.push_back("non-integral weight " + to_string(w) + " at " + id + " under Z");
  }
  for (const auto& [s, t] : g.raw_edges()) {
    if (s == t) out.push_back("loop at " + s);
    if (!g.index_of(s)) out.push_back("edge (" + s + "," + t + ") has undeclared endpoint " + s);
    if (!g.index_of(t) && t != s) out.push_back("edge (" + s + "," + t + ") has undeclared endpoint " + t);
  }
  return out;
}

inline void require_valid(const WeightedDigraph& g, Ring ring) {
  auto v = validate_digraph(g, ring);
  if (!v.empty()) throw InvalidDigraph(std::move(v));
}

struct DigraphMorphism {
  WeightedDigraph source;
  WeightedDigraph target;
  std::map<VertexId, VertexId> vertex_map;

  // Target index of each source vertex; requires a total map onto declared vertices.
  std::vector<VertexIndex> index_map() const {
    std::vector<VertexIndex> out(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
      auto it = vertex_map.find(source.id(static_cast<VertexIndex>(i)));
      if (it == vertex_map.end()) throw InvalidMorphism({"unmapped vertex " + source.id(static_cast<VertexIndex>(i))});
      auto t = target.index_of(it->second);
      if (!t) throw InvalidMorphism({"image " + it->second + " is not a target vertex"});
      out[i] = *t;
    }
    return out;
  }

  static DigraphMorphism identity(const WeightedDigraph& g) {
    DigraphMorphism f{g, g, {}};
    for (const auto& id : g.ids()) f.vertex_map[id] = id;
    return f;
  }
};

inline std::vector<std::string> validate_morphism(const DigraphMorphism& f) {
  std::vector<std::string> out;
  const auto& src = f.source;
  const auto& tgt = f.target;
  for (const auto& [from, to] : f.vertex_map)
    if (!src.index_of(from)) out.push_back("mapped vertex " + from + " is not a source vertex");
  bool total = true;
  for (VertexIndex i = 0; i < src.size(); ++i) {
    auto it = f.vertex_map.find(src.id(i));
    if (it == f.vertex_map.end()) {
      out.push_back("unmapped vertex " + src.id(i));
      total = false;
      continue;
    }
    auto t = tgt.index_of(it->second);
    if (!t) {
      out.push_back("image " + it->second + " of " + src.id(i) + " is not a target vertex");
      total = false;
      continue;
    }
    if (src.weight(i) != tgt.weight(*t)) out.push_back("weight mismatch at " + src.id(i));
  }
  if (!total) return out;
  auto m = f.index_map();
  for (const auto& [a, b] : src.edges()) {
    if (m[a] == m[b] || tgt.has_edge(m[a], m[b])) continue;
    out.push_back("edge (" + src.id(a) + "," + src.id(b) + ") maps to non-edge (" + tgt.id(m[a]) + "," +
                  tgt.id(m[b]) + ")");
  }
  return out;
}

inline DigraphMorphism compose(const DigraphMorphism& f, const DigraphMorphism& k) {
  DigraphMorphism out{f.source, k.target, {}};
  for (const auto& [a, b] : f.vertex_map) {
    auto it = k.vertex_map.find(b);
    if (it != k.vertex_map.end()) out.vertex_map[a] = it->second;
  }
  return out;
}

inline std::vector<VertexId> shared_ids(const WeightedDigraph& g, const WeightedDigraph& h) {
  std::vector<VertexId> out;
  for (const auto& id : g.ids())
    if (h.index_of(id)) out.push_back(id);
  return out;
}

// Vertices V then V'; edges E, E' and every (i, j) with i in V, j in V'.
inline WeightedDigraph join(const WeightedDigraph& g, const WeightedDigraph& h) {
  auto collisions = shared_ids(g, h);
  if (!collisions.empty()) throw NonDisjointVertexSets(std::move(collisions));
  std::vector<VertexId> ids = g.ids();
  ids.insert(ids.end(), h.ids().begin(), h.ids().end());
  std::vector<Rational> weights = g.weights();
  weights.insert(weights.end(), h.weights().begin(), h.weights().end());
  auto edges = g.edge_ids();
  auto right = h.edge_ids();
  edges.insert(edges.end(), right.begin(), right.end());
  for (const auto& a : g.ids())
    for (const auto& b : h.ids()) edges.emplace_back(a, b);
  return WeightedDigraph(std::move(ids), std::move(weights), std::move(edges));
}

inline WeightedDigraph relabel(const WeightedDigraph& g, const std::string& prefix) {
  if (prefix.empty()) throw Error("relabel prefix must be nonempty");
  std::vector<VertexId> ids;
  for (const auto& id : g.ids()) ids.push_back(prefix + id);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (const auto& [a, b] : g.raw_edges()) edges.emplace_back(prefix + a, prefix + b);
  return WeightedDigraph(std::move(ids), g.weights(), std::move(edges));
}

// Join of two morphisms, vertexwise f on V and f' on V'.
inline DigraphMorphism join(const DigraphMorphism& f, const DigraphMorphism& k) {
  DigraphMorphism out{join(f.source, k.source), join(f.target, k.target), f.vertex_map};
  out.vertex_map.insert(k.vertex_map.begin(), k.vertex_map.end());
  return out;
}

inline DigraphMorphism relabel(const DigraphMorphism& f, const std::string& source_prefix,
                               const std::string& target_prefix) {
  DigraphMorphism out{relabel(f.source, source_prefix), relabel(f.target, target_prefix), {}};
  for (const auto& [a, b] : f.vertex_map) out.vertex_map[source_prefix + a] = target_prefix + b;
  return out;
}

}  // namespace wph
