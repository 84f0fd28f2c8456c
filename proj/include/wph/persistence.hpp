#pragma once

#include "wph/homology.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace wph {

class InvalidSequence : public Error {
 public:
  explicit InvalidSequence(std::vector<std::string> violations)
      : Error("invalid sequence: " + InvalidDigraph::join_messages(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Nested digraphs G_1 <= G_2 <= ... with w_n the restriction of global_weights.
struct Filtration {
  std::vector<WeightedDigraph> steps;
  std::map<VertexId, Rational> global_weights;
};

// G_1 -> G_2 -> ... with maps[n] : steps[n] -> steps[n+1].
struct MorphismSequence {
  std::vector<WeightedDigraph> steps;
  std::vector<DigraphMorphism> maps;
};

using Sequence = std::variant<Filtration, MorphismSequence>;

inline std::string step_label(std::size_t index) { return "step " + std::to_string(index + 1); }

inline std::vector<std::string> validate_filtration(const Filtration& f, Ring ring) {
  std::vector<std::string> out;
  if (f.steps.empty()) out.push_back("filtration has no steps");
  for (std::size_t n = 0; n < f.steps.size(); ++n) {
    const auto& g = f.steps[n];
    for (const auto& v : validate_digraph(g, ring)) out.push_back(step_label(n) + ": " + v);
    for (VertexIndex i = 0; i < g.size(); ++i) {
      auto it = f.global_weights.find(g.id(i));
      if (it == f.global_weights.end()) out.push_back(step_label(n) + ": vertex " + g.id(i) + " has no global weight");
      else if (it->second != g.weight(i))
        out.push_back(step_label(n) + ": weight of " + g.id(i) + " differs from the global weight");
    }
    if (n == 0) continue;
    const auto& prev = f.steps[n - 1];
    for (const auto& id : prev.ids())
      if (!g.index_of(id)) out.push_back(step_label(n) + ": vertex " + id + " of the previous step is missing");
    for (const auto& [a, b] : prev.edge_ids()) {
      auto ia = g.index_of(a), ib = g.index_of(b);
      if (!ia || !ib || !g.has_edge(*ia, *ib))
        out.push_back(step_label(n) + ": edge " + a + "->" + b + " of the previous step is missing");
    }
  }
  return out;
}

// Builds a filtration from nested steps; the global weights are collected
// from the steps and checked for consistency.
inline Filtration make_filtration(std::vector<WeightedDigraph> steps, Ring ring = Ring::Rationals) {
  Filtration f;
  std::vector<std::string> conflicts;
  for (std::size_t n = 0; n < steps.size(); ++n)
    for (VertexIndex i = 0; i < steps[n].size(); ++i) {
      auto [it, inserted] = f.global_weights.emplace(steps[n].id(i), steps[n].weight(i));
      if (!inserted && it->second != steps[n].weight(i))
        conflicts.push_back(step_label(n) + ": weight of " + steps[n].id(i) + " differs from the global weight");
    }
  f.steps = std::move(steps);
  if (!conflicts.empty()) throw InvalidSequence(std::move(conflicts));
  auto v = validate_filtration(f, ring);
  if (!v.empty()) throw InvalidSequence(std::move(v));
  return f;
}

inline std::vector<std::string> validate_sequence(const MorphismSequence& s, Ring ring) {
  std::vector<std::string> out;
  if (s.steps.empty()) out.push_back("sequence has no steps");
  if (s.maps.size() + 1 != s.steps.size() && !s.steps.empty())
    out.push_back("sequence with " + std::to_string(s.steps.size()) + " steps needs " +
                  std::to_string(s.steps.size() - 1) + " maps, got " + std::to_string(s.maps.size()));
  for (std::size_t n = 0; n < s.steps.size(); ++n)
    for (const auto& v : validate_digraph(s.steps[n], ring)) out.push_back(step_label(n) + ": " + v);
  if (!out.empty()) return out;
  for (std::size_t n = 0; n < s.maps.size(); ++n)
    for (const auto& v : validate_morphism(s.maps[n])) out.push_back("map " + std::to_string(n + 1) + ": " + v);
  return out;
}

// The canonical inclusions of a filtration as a morphism sequence.
inline MorphismSequence as_sequence(const Filtration& f) {
  MorphismSequence s;
  s.steps = f.steps;
  for (std::size_t n = 0; n + 1 < f.steps.size(); ++n) {
    DigraphMorphism m{f.steps[n], f.steps[n + 1], {}};
    for (const auto& id : f.steps[n].ids()) m.vertex_map[id] = id;
    s.maps.push_back(std::move(m));
  }
  return s;
}

inline MorphismSequence require_sequence(const Sequence& seq, Ring ring) {
  if (const auto* f = std::get_if<Filtration>(&seq)) {
    auto v = validate_filtration(*f, ring);
    if (!v.empty()) throw InvalidSequence(std::move(v));
    return as_sequence(*f);
  }
  const auto& s = std::get<MorphismSequence>(seq);
  auto v = validate_sequence(s, ring);
  if (!v.empty()) throw InvalidSequence(std::move(v));
  return s;
}

struct PersistenceModuleReport {
  struct Degree {
    int degree = 0;
    std::vector<FgAbelianGroup> groups;              // one per step
    std::vector<RatMatrix> maps;                     // maps[n] : step n -> step n+1 on generators
    std::vector<std::vector<Integer>> target_orders;  // generator orders of each map's target, 0 = free
  };
  Ring ring = Ring::Integers;
  std::size_t steps = 0;
  std::vector<Degree> degrees;
};

template <Scalar T>
struct PersistenceData {
  std::vector<HomologyResult<T>> homology;
  std::vector<InducedMapResult<T>> maps;
};

template <Scalar T>
PersistenceData<T> compute_persistence(const MorphismSequence& s, int p_max) {
  PersistenceData<T> out;
  for (const auto& g : s.steps) out.homology.push_back(compute_homology<T>(g, p_max));
  for (std::size_t n = 0; n < s.maps.size(); ++n)
    out.maps.push_back(induced_map_between(s.maps[n], out.homology[n], out.homology[n + 1]));
  return out;
}

inline PersistenceModuleReport persistence_module(const Sequence& seq, Ring ring, int p_max) {
  auto s = require_sequence(seq, ring);
  PersistenceModuleReport out;
  out.ring = ring;
  out.steps = s.steps.size();
  auto fill = [&]<Scalar T>() {
    auto data = compute_persistence<T>(s, p_max);
    for (int d = 0; d <= p_max; ++d) {
      PersistenceModuleReport::Degree row;
      row.degree = d;
      for (const auto& h : data.homology) row.groups.push_back(h.at(d).group);
      for (const auto& m : data.maps) {
        row.maps.push_back(convert<Rational>(m.at(d)));
        row.target_orders.push_back(m.target_orders[static_cast<std::size_t>(d)]);
      }
      out.degrees.push_back(std::move(row));
    }
  };
  if (ring == Ring::Integers) fill.template operator()<Integer>();
  else fill.template operator()<Rational>();
  return out;
}

// ---------------------------------------------------------------------------
// Barcodes over Q

struct Bar {
  std::size_t birth = 1;
  std::optional<std::size_t> death;  // nullopt is infinity
  std::size_t multiplicity = 1;

  bool contains(std::size_t step) const { return birth <= step && (!death || step < *death); }
  friend bool operator==(const Bar&, const Bar&) = default;
};

struct Barcode {
  std::size_t steps = 0;
  std::vector<std::vector<Bar>> degrees;  // bars per degree 0..p_max
  std::vector<std::vector<std::size_t>> betti;  // betti[p][n-1]

  const std::vector<Bar>& at(int p) const { return degrees[static_cast<std::size_t>(p)]; }

  // Sum of multiplicities of bars alive at each step equals the Betti number.
  bool consistent() const {
    for (std::size_t p = 0; p < degrees.size(); ++p)
      for (std::size_t n = 1; n <= steps; ++n) {
        std::size_t alive = 0;
        for (const auto& b : degrees[p])
          if (b.contains(n)) alive += b.multiplicity;
        if (alive != betti[p][n - 1]) return false;
      }
    return true;
  }
};

// rank[i][j] (0-based, i <= j) is the rank of the composite H_p(G_i) -> H_p(G_j).
using RankTable = std::vector<std::vector<std::size_t>>;

inline RankTable rank_table(const std::vector<std::size_t>& betti, const std::vector<RatMatrix>& maps) {
  const std::size_t n = betti.size();
  RankTable r(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    r[i][i] = betti[i];
    RatMatrix composite = RatMatrix::identity(betti[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      composite = maps[j - 1] * composite;
      r[i][j] = rank(composite);
    }
  }
  return r;
}

inline std::vector<Bar> bars_from_ranks(const RankTable& r) {
  const std::size_t n = r.size();
  // 1-based accessor with r(0, .) = 0.
  auto rk = [&](std::size_t i, std::size_t j) -> long long {
    return i == 0 ? 0 : static_cast<long long>(r[i - 1][j - 1]);
  };
  std::vector<Bar> out;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      long long mu = (rk(i, j - 1) - rk(i, j)) - (i > 1 ? rk(i - 1, j - 1) - rk(i - 1, j) : 0);
      if (mu < 0) throw CertificateFailure("negative bar multiplicity");
      if (mu > 0) out.push_back({i, j, static_cast<std::size_t>(mu)});
    }
    long long mu = rk(i, n) - (i > 1 ? rk(i - 1, n) : 0);
    if (mu < 0) throw CertificateFailure("negative bar multiplicity");
    if (mu > 0) out.push_back({i, std::nullopt, static_cast<std::size_t>(mu)});
  }
  return out;
}

inline Barcode barcode(const Sequence& seq, Ring ring, int p_max) {
  if (ring != Ring::Rationals) throw WrongRing("barcodes are computed over Q only");
  auto s = require_sequence(seq, ring);
  auto data = compute_persistence<Rational>(s, p_max);
  Barcode out;
  out.steps = s.steps.size();
  for (int d = 0; d <= p_max; ++d) {
    std::vector<std::size_t> betti;
    for (const auto& h : data.homology) betti.push_back(h.at(d).group.free_rank);
    std::vector<RatMatrix> maps;
    for (const auto& m : data.maps) maps.push_back(m.at(d));
    out.degrees.push_back(bars_from_ranks(rank_table(betti, maps)));
    out.betti.push_back(std::move(betti));
  }
  if (!out.consistent()) throw CertificateFailure("barcode disagrees with the Betti numbers");
  return out;
}

// ---------------------------------------------------------------------------
// Weight sensitivity over Z

struct WeightSensitivityReport {
  struct Entry {
    int degree = 0;
    std::size_t step = 1;
    FgAbelianGroup original;
    FgAbelianGroup alternative;
    bool differs = false;
  };
  std::vector<Entry> entries;

  bool any_difference() const {
    return std::any_of(entries.begin(), entries.end(), [](const Entry& e) { return e.differs; });
  }
};

inline Filtration with_global_weights(const Filtration& f, const std::map<VertexId, Rational>& weights) {
  Filtration out;
  out.global_weights = f.global_weights;
  for (const auto& [id, w] : weights) out.global_weights[id] = w;
  for (const auto& g : f.steps) {
    std::vector<Rational> ws;
    for (const auto& id : g.ids()) ws.push_back(out.global_weights.at(id));
    out.steps.push_back(g.with_weights(std::move(ws)));
  }
  return out;
}

inline WeightSensitivityReport weight_sensitivity_report(const Filtration& f,
                                                         const std::map<VertexId, Rational>& alt_global_weights,
                                                         int p_max) {
  auto alt = with_global_weights(f, alt_global_weights);
  for (const Filtration* seq : std::initializer_list<const Filtration*>{&f, &alt}) {
    auto v = validate_filtration(*seq, Ring::Integers);
    if (!v.empty()) throw InvalidSequence(std::move(v));
  }
  WeightSensitivityReport out;
  for (std::size_t n = 0; n < f.steps.size(); ++n) {
    auto a = homology_groups<Integer>(f.steps[n], p_max);
    auto b = homology_groups<Integer>(alt.steps[n], p_max);
    for (int d = 0; d <= p_max; ++d) {
      const auto k = static_cast<std::size_t>(d);
      out.entries.push_back({d, n + 1, a[k], b[k], a[k] != b[k]});
    }
  }
  return out;
}

}  // namespace wph
