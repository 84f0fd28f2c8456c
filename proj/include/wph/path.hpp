#pragma once

#include "wph/digraph.hpp"

#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

namespace wph {

// Elementary path as a sequence of vertex indices; the empty sequence is the
// empty path e of degree -1. Ordering is lexicographic on indices, which puts
// degree-0 paths in declaration order.
using Path = std::vector<VertexIndex>;

inline int degree_of(const Path& p) { return static_cast<int>(p.size()) - 1; }

inline bool is_regular(const Path& p) {
  for (std::size_t k = 0; k + 1 < p.size(); ++k)
    if (p[k] == p[k + 1]) return false;
  return true;
}

inline bool is_allowed(const Path& p, const WeightedDigraph& g) {
  for (std::size_t k = 0; k + 1 < p.size(); ++k)
    if (!g.has_edge(p[k], p[k + 1])) return false;
  return true;
}

struct PathHash {
  std::size_t operator()(const Path& p) const noexcept {
    std::size_t h = p.size();
    for (VertexIndex v : p) h = h * 1000003u ^ std::hash<VertexIndex>{}(v);
    return h;
  }
};

using PathIndex = std::unordered_map<Path, std::size_t, PathHash>;

inline PathIndex index_paths(const std::vector<Path>& paths) {
  PathIndex idx;
  idx.reserve(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) idx.emplace(paths[i], i);
  return idx;
}

class UnknownVertex : public Error {
 public:
  explicit UnknownVertex(VertexIndex v) : Error("chain mentions unknown vertex index " + std::to_string(v)) {}
};

class VertexCollision : public Error {
 public:
  VertexCollision() : Error("concatenated chains share a vertex") {}
};

// Sparse formal combination of elementary paths of one degree. Zero
// coefficients are never stored; iteration is lexicographic.
class Chain {
 public:
  explicit Chain(int degree = 0) : degree_(degree) {}
  Chain(int degree, std::map<Path, Rational> terms) : degree_(degree) {
    for (auto& [p, c] : terms) add(p, c);
  }

  static Chain elementary(const Path& p, const Rational& c = Rational(1)) {
    Chain ch(degree_of(p));
    ch.add(p, c);
    return ch;
  }

  int degree() const { return degree_; }
  const std::map<Path, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Path& p, const Rational& c) {
    assert(degree_of(p) == degree_);
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Chain& operator+=(const Chain& o) {
    assert(o.degree_ == degree_ || o.is_zero());
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  Chain& operator-=(const Chain& o) {
    assert(o.degree_ == degree_ || o.is_zero());
    for (const auto& [p, c] : o.terms_) add(p, -c);
    return *this;
  }
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(const Rational& k, const Chain& a) {
    Chain out(a.degree_);
    if (k == 0) return out;
    for (const auto& [p, c] : a.terms_) out.terms_.emplace(p, k * c);
    return out;
  }
  friend bool operator==(const Chain& a, const Chain& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  // Applies a vertex relabeling to every path (used to embed into a join).
  Chain shifted(VertexIndex offset) const {
    Chain out(degree_);
    for (const auto& [p, c] : terms_) {
      Path q = p;
      for (auto& v : q) v += offset;
      out.terms_.emplace(std::move(q), c);
    }
    return out;
  }

 private:
  int degree_;
  std::map<Path, Rational> terms_;
};

// All allowed elementary p-paths of g in lexicographic order. p = -1 yields
// the empty path, p = 0 every vertex.
inline std::vector<Path> enumerate_allowed_paths(const WeightedDigraph& g, int p) {
  std::vector<Path> out;
  if (p < -1) return out;
  if (p == -1) {
    out.emplace_back();
    return out;
  }
  Path cur;
  cur.reserve(static_cast<std::size_t>(p) + 1);
  std::function<void()> extend = [&]() {
    if (degree_of(cur) == p) {
      out.push_back(cur);
      return;
    }
    for (VertexIndex next : g.out_neighbors(cur.back())) {
      cur.push_back(next);
      extend();
      cur.pop_back();
    }
  };
  for (VertexIndex v = 0; v < g.size(); ++v) {
    cur.assign(1, v);
    extend();
  }
  return out;
}

// Calls visit(face, coefficient) for each regular face of the path under the
// weighted boundary; non-regular faces vanish in the regular-path quotient.
template <class Visit>
void for_each_boundary_face(const Path& path, const std::vector<Rational>& weights, bool weighted, Visit&& visit) {
  const std::size_t n = path.size();
  if (n == 0) return;
  Path face(n - 1);
  for (std::size_t q = 0; q < n; ++q) {
    if (q > 0 && q + 1 < n && path[q - 1] == path[q + 1]) continue;
    for (std::size_t k = 0, t = 0; k < n; ++k)
      if (k != q) face[t++] = path[k];
    Rational c = weighted ? weights[path[q]] : Rational(1);
    if (q % 2 == 1) c = -c;
    visit(face, c);
  }
}

inline Chain weighted_boundary(const Chain& c, const WeightedDigraph& g, bool weighted = true) {
  Chain out(c.degree() - 1);
  for (const auto& [path, coeff] : c.terms()) {
    for (VertexIndex v : path)
      if (v >= g.size()) throw UnknownVertex(v);
    for_each_boundary_face(path, g.weights(), weighted,
                           [&](const Path& face, const Rational& k) { out.add(face, coeff * k); });
  }
  return out;
}

// Bilinear concatenation e_{i0..ip} . e_{j0..jq} = e_{i0..ip j0..jq}. Both
// chains must already live in one vertex index space (e.g. a join).
inline Chain concatenate(const Chain& u, const Chain& v) {
  std::vector<char> used;
  auto mark = [&](const Chain& c, char bit) {
    for (const auto& [p, k] : c.terms())
      for (VertexIndex x : p) {
        if (x >= used.size()) used.resize(x + 1, 0);
        used[x] |= bit;
      }
  };
  mark(u, 1);
  mark(v, 2);
  for (char b : used)
    if (b == 3) throw VertexCollision();
  Chain out(u.degree() + v.degree() + 1);
  for (const auto& [p, a] : u.terms())
    for (const auto& [q, b] : v.terms()) {
      Path r = p;
      r.insert(r.end(), q.begin(), q.end());
      out.add(r, a * b);
    }
  return out;
}

// Rescales each term by the inverse product of its vertex weights.
inline Chain phi_rescale(const Chain& c, const WeightedDigraph& g, Ring ring) {
  if (ring != Ring::Rationals) throw WrongRing("phi_rescale divides by weights and needs Q");
  Chain out(c.degree());
  for (const auto& [p, k] : c.terms()) {
    Rational w = 1;
    for (VertexIndex v : p) {
      if (v >= g.size()) throw UnknownVertex(v);
      w *= g.weight(v);
    }
    out.add(p, k / w);
  }
  return out;
}

}  // namespace wph
