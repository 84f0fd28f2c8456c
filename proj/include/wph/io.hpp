#pragma once

#include "wph/kunneth.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace wph {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line), message_(message) {}
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

namespace detail {

struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

inline std::vector<Record> read_records(std::istream& in) {
  std::vector<Record> out;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream ss(text);
    Record r{line, {}};
    for (std::string tok; ss >> tok;) r.fields.push_back(tok);
    if (!r.fields.empty()) out.push_back(std::move(r));
  }
  return out;
}

inline void expect_fields(const Record& r, std::size_t n, const std::string& shape) {
  if (r.fields.size() != n) throw ParseError(r.line, "expected '" + shape + "'");
}

inline Rational parse_weight(const Record& r, const std::string& text) {
  auto w = parse_rational(text);
  if (!w) throw ParseError(r.line, "invalid weight '" + text + "'");
  return *w;
}

inline std::size_t parse_birth(const Record& r, const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || v == 0 || text.front() == '-' || text.front() == '+')
    throw ParseError(r.line, "invalid birth step '" + text + "' (expected a positive integer)");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

// `v <id> <weight>` and `e <src> <dst>`; vertices precede the edges using them.
inline WeightedDigraph parse_digraph(std::istream& in) {
  std::vector<VertexId> ids;
  std::vector<Rational> weights;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::set<VertexId> declared;
  for (const auto& r : detail::read_records(in)) {
    const auto& f = r.fields;
    if (f[0] == "v") {
      detail::expect_fields(r, 3, "v <id> <weight>");
      if (!declared.insert(f[1]).second) throw ParseError(r.line, "duplicate vertex " + f[1]);
      ids.push_back(f[1]);
      weights.push_back(detail::parse_weight(r, f[2]));
    } else if (f[0] == "e") {
      detail::expect_fields(r, 3, "e <src> <dst>");
      for (const auto* id : {&f[1], &f[2]})
        if (!declared.count(*id)) throw ParseError(r.line, "edge uses undeclared vertex " + *id);
      edges.emplace_back(f[1], f[2]);
    } else {
      throw ParseError(r.line, "unknown record '" + f[0] + "'");
    }
  }
  return WeightedDigraph(std::move(ids), std::move(weights), std::move(edges));
}

// `m <source-id> <target-id>`, one line per source vertex.
inline std::map<VertexId, VertexId> parse_vertex_map(std::istream& in) {
  std::map<VertexId, VertexId> out;
  for (const auto& r : detail::read_records(in)) {
    if (r.fields[0] != "m") throw ParseError(r.line, "unknown record '" + r.fields[0] + "'");
    detail::expect_fields(r, 3, "m <source-id> <target-id>");
    if (!out.emplace(r.fields[1], r.fields[2]).second) throw ParseError(r.line, "vertex " + r.fields[1] + " mapped twice");
  }
  return out;
}

// `v <id> <weight> <birth>` and `e <src> <dst> <birth>`; step n holds every
// vertex and edge born at or before n. Steps are numbered from 1.
inline Filtration parse_filtration(std::istream& in) {
  struct Item {
    VertexId a, b;
    Rational weight;
    std::size_t birth;
  };
  std::vector<Item> vertices, edges;
  std::map<VertexId, std::size_t> birth_of;
  std::size_t steps = 0;
  for (const auto& r : detail::read_records(in)) {
    const auto& f = r.fields;
    if (f[0] == "v") {
      detail::expect_fields(r, 4, "v <id> <weight> <birth>");
      auto birth = detail::parse_birth(r, f[3]);
      if (!birth_of.emplace(f[1], birth).second) throw ParseError(r.line, "duplicate vertex " + f[1]);
      vertices.push_back({f[1], {}, detail::parse_weight(r, f[2]), birth});
      steps = std::max(steps, birth);
    } else if (f[0] == "e") {
      detail::expect_fields(r, 4, "e <src> <dst> <birth>");
      auto birth = detail::parse_birth(r, f[3]);
      for (const auto* id : {&f[1], &f[2]}) {
        auto it = birth_of.find(*id);
        if (it == birth_of.end()) throw ParseError(r.line, "edge uses undeclared vertex " + *id);
        if (it->second > birth)
          throw ParseError(r.line, "edge " + f[1] + "->" + f[2] + " is born before its endpoint " + *id);
      }
      edges.push_back({f[1], f[2], {}, birth});
      steps = std::max(steps, birth);
    } else {
      throw ParseError(r.line, "unknown record '" + f[0] + "'");
    }
  }
  if (steps == 0) throw ParseError(1, "filtration has no vertices");
  Filtration out;
  for (const auto& v : vertices) out.global_weights[v.a] = v.weight;
  for (std::size_t n = 1; n <= steps; ++n) {
    std::vector<VertexId> ids;
    std::vector<Rational> ws;
    std::vector<std::pair<VertexId, VertexId>> es;
    for (const auto& v : vertices)
      if (v.birth <= n) {
        ids.push_back(v.a);
        ws.push_back(v.weight);
      }
    for (const auto& e : edges)
      if (e.birth <= n) es.emplace_back(e.a, e.b);
    out.steps.emplace_back(std::move(ids), std::move(ws), std::move(es));
  }
  return out;
}

inline std::string format_digraph(const WeightedDigraph& g) {
  std::string out;
  for (VertexIndex i = 0; i < g.size(); ++i) out += "v " + g.id(i) + " " + to_string(g.weight(i)) + "\n";
  for (const auto& [a, b] : g.raw_edges()) out += "e " + a + " " + b + "\n";
  return out;
}

template <class Parser>
auto read_file(const std::string& path, Parser parse) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse(in);
}

// ---------------------------------------------------------------------------
// JSON

using Json = nlohmann::ordered_json;

inline Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

inline Json to_json(const WeightedDigraph& g) {
  Json weights = Json::object();
  for (VertexIndex i = 0; i < g.size(); ++i) weights[g.id(i)] = to_string(g.weight(i));
  Json edges = Json::array();
  for (const auto& [a, b] : g.raw_edges()) edges.push_back({a, b});
  return {{"vertices", g.ids()}, {"edges", edges}, {"weights", weights}};
}

inline WeightedDigraph digraph_from_json(const Json& j) {
  try {
    std::vector<VertexId> ids = j.at("vertices").get<std::vector<VertexId>>();
    std::vector<Rational> weights;
    for (const auto& id : ids) {
      const auto& w = j.at("weights").at(id);
      auto parsed = parse_rational(w.is_string() ? w.get<std::string>() : w.dump());
      if (!parsed) throw Error("invalid weight for " + id);
      weights.push_back(*parsed);
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    return WeightedDigraph(std::move(ids), std::move(weights), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed digraph JSON: ") + e.what());
  }
}

inline Json to_json(const DigraphMorphism& f) {
  Json map = Json::object();
  for (const auto& [a, b] : f.vertex_map) map[a] = b;
  return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"map", map}};
}

inline Json to_json(const Chain& c, const WeightedDigraph& g) {
  Json terms = Json::array();
  for (const auto& [p, k] : c.terms()) {
    Json path = Json::array();
    for (VertexIndex v : p) path.push_back(g.id(v));
    terms.push_back({{"path", path}, {"coeff", to_string(k)}});
  }
  return {{"degree", c.degree()}, {"terms", terms}};
}

inline Json to_json(const FgAbelianGroup& a) {
  Json torsion = Json::array();
  for (const auto& t : a.torsion) torsion.push_back(integer_json(t));
  return {{"free_rank", a.free_rank}, {"torsion", torsion}};
}

inline Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (is_integral(m(i, j))) row.push_back(integer_json(numerator_of(m(i, j))));
      else row.push_back(to_string(m(i, j)));
    }
    rows.push_back(row);
  }
  return rows;
}

inline Json to_json(const HomologyReport& r, const WeightedDigraph& g) {
  Json degrees = Json::array();
  for (const auto& d : r.degrees) {
    Json gens = Json::array();
    for (const auto& c : d.generators) gens.push_back(to_json(c, g));
    Json row = to_json(d.group);
    degrees.push_back({{"degree", d.degree}, {"free_rank", row["free_rank"]}, {"torsion", row["torsion"]}, {"generators", gens}});
  }
  return {{"ring", ring_name(r.ring)}, {"complex", complex_name(r.complex_used)}, {"reduced", r.reduced}, {"degrees", degrees}};
}

inline Json bar_death_json(const Bar& b) { return b.death ? Json(*b.death) : Json("inf"); }

inline Json to_json(const Barcode& b) {
  Json out = Json::array();
  for (std::size_t p = 0; p < b.degrees.size(); ++p) {
    Json bars = Json::array();
    for (const auto& bar : b.degrees[p])
      bars.push_back({{"birth", bar.birth}, {"death", bar_death_json(bar)}, {"mult", bar.multiplicity}});
    out.push_back({{"degree", p}, {"bars", bars}});
  }
  return out;
}

inline Json to_json(const PersistenceModuleReport& r) {
  Json degrees = Json::array();
  for (const auto& d : r.degrees) {
    Json groups = Json::array();
    for (const auto& g : d.groups) groups.push_back(to_json(g));
    Json maps = Json::array();
    for (std::size_t n = 0; n < d.maps.size(); ++n) {
      Json orders = Json::array();
      for (const auto& o : d.target_orders[n]) orders.push_back(integer_json(o));
      maps.push_back({{"from", n + 1}, {"to", n + 2}, {"matrix", to_json(d.maps[n])}, {"target_orders", orders}});
    }
    degrees.push_back({{"degree", d.degree}, {"groups", groups}, {"maps", maps}});
  }
  return {{"ring", ring_name(r.ring)}, {"steps", r.steps}, {"degrees", degrees}};
}

inline Json to_json(const InducedMap& m) {
  Json degrees = Json::array();
  const int low = m.source_report.reduced ? -1 : 0;
  for (std::size_t k = 0; k < m.matrices.size(); ++k) {
    Json orders = Json::array();
    for (const auto& o : m.target_orders[k]) orders.push_back(integer_json(o));
    const int d = low + static_cast<int>(k);
    degrees.push_back({{"degree", d},
                       {"source", to_json(m.source_report.at(d).group)},
                       {"target", to_json(m.target_report.at(d).group)},
                       {"matrix", to_json(m.matrices[k])},
                       {"target_orders", orders}});
  }
  return {{"ring", ring_name(m.ring)}, {"degrees", degrees}};
}

inline Json to_json(const GroupExpression& e) {
  Json out = to_json(e.total());
  Json terms = Json::array();
  for (const auto& s : e.summands)
    if (!s.group.trivial()) terms.push_back({{"p", s.p}, {"q", s.q}, {"term", s.label()}, {"group", to_json(s.group)}});
  out["terms"] = terms;
  return out;
}

inline Json to_json(const KunnethReport& r) {
  Json degrees = Json::array();
  for (const auto& d : r.degrees) {
    Json row = {{"r", d.r},
                {"lhs", to_json(d.reduced.lhs)},
                {"tor", to_json(d.reduced.tor)},
                {"mid", to_json(d.reduced.mid)},
                {"verdict", d.pass() ? "PASS" : "FAIL"}};
    if (d.readings_differ)
      row["truncated"] = {{"lhs", to_json(d.truncated.lhs)},
                          {"tor", to_json(d.truncated.tor)},
                          {"mid", to_json(d.truncated.mid)},
                          {"verdict", d.truncated.pass ? "PASS" : "FAIL"}};
    degrees.push_back(row);
  }
  return {{"ring", ring_name(r.ring)}, {"relabeled", r.relabeled}, {"verdict", r.pass() ? "PASS" : "FAIL"}, {"degrees", degrees}};
}

// ---------------------------------------------------------------------------
// Text

inline std::string format_chain(const Chain& c, const WeightedDigraph& g) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [p, k] : c.terms()) {
    std::string path = "e[";
    for (std::size_t i = 0; i < p.size(); ++i) path += (i ? "," : "") + g.id(p[i]);
    path += "]";
    Rational mag = abs_value(k);
    std::string term = mag == 1 ? path : to_string(mag) + " " + path;
    if (out.empty()) out = (k < 0 ? "-" : "") + term;
    else out += (k < 0 ? " - " : " + ") + term;
  }
  return out;
}

inline std::string format_group_line(int degree, const FgAbelianGroup& a, Ring ring) {
  if (ring == Ring::Rationals) return "H_" + std::to_string(degree) + ": dim " + std::to_string(a.free_rank);
  return "H_" + std::to_string(degree) + " = " + a.to_string();
}

inline std::string format_matrix(const RatMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return "(" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")";
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? " [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? " " : "") + to_string(m(i, j));
    out += "]";
  }
  return out;
}

inline std::string format_homology(const HomologyReport& r, const WeightedDigraph& g) {
  std::string out;
  for (const auto& d : r.degrees) {
    out += format_group_line(d.degree, d.group, r.ring) + "\n";
    for (const auto& c : d.generators) out += "  " + format_chain(c, g) + "\n";
  }
  return out;
}

inline std::string format_bar(int degree, const Bar& b) {
  return "p=" + std::to_string(degree) + "  [" + std::to_string(b.birth) + ", " +
         (b.death ? std::to_string(*b.death) : std::string("inf")) + ") x" + std::to_string(b.multiplicity);
}

inline std::string format_barcode(const Barcode& b) {
  std::string out;
  for (std::size_t p = 0; p < b.degrees.size(); ++p)
    for (const auto& bar : b.degrees[p]) out += format_bar(static_cast<int>(p), bar) + "\n";
  return out;
}

inline std::string format_persistence(const PersistenceModuleReport& r) {
  std::string out;
  for (const auto& d : r.degrees) {
    for (std::size_t n = 0; n < d.groups.size(); ++n)
      out += "step " + std::to_string(n + 1) + "  " + format_group_line(d.degree, d.groups[n], r.ring) + "\n";
    for (std::size_t n = 0; n < d.maps.size(); ++n)
      out += "map " + std::to_string(n + 1) + "->" + std::to_string(n + 2) + "  p=" + std::to_string(d.degree) + "  " +
             format_matrix(d.maps[n]) + "\n";
  }
  return out;
}

inline std::string format_induced(const InducedMap& m) {
  std::string out;
  const int low = m.source_report.reduced ? -1 : 0;
  for (std::size_t k = 0; k < m.matrices.size(); ++k) {
    const int d = low + static_cast<int>(k);
    out += "p=" + std::to_string(d) + "  " + m.source_report.at(d).group.to_string() + " -> " +
           m.target_report.at(d).group.to_string() + "  " + format_matrix(m.matrices[k]) + "\n";
  }
  return out;
}

inline std::string format_kunneth(const KunnethReport& r) {
  std::string out;
  if (r.relabeled) out += "vertex ids relabeled with L. and R.\n";
  for (const auto& d : r.degrees) {
    out += "r=" + std::to_string(d.r) + "  lhs: " + d.reduced.lhs.total().to_string() +
           "  tor: " + d.reduced.tor.total().to_string() + "  mid: " + d.reduced.mid.to_string() + "  " +
           (d.pass() ? "PASS" : "FAIL") + "\n";
    if (d.readings_differ)
      out += "  truncated reading  lhs: " + d.truncated.lhs.total().to_string() +
             "  tor: " + d.truncated.tor.total().to_string() + "  mid: " + d.truncated.mid.to_string() + "  " +
             (d.truncated.pass ? "PASS" : "FAIL") + "\n";
  }
  out += std::string("verdict: ") + (r.pass() ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace wph
