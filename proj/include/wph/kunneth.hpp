#pragma once

#include "wph/persistence.hpp"

#include <string>
#include <vector>

namespace wph {

class MorphismLengthMismatch : public Error {
 public:
  MorphismLengthMismatch(std::size_t a, std::size_t b)
      : Error("sequences have different lengths: " + std::to_string(a) + " and " + std::to_string(b)) {}
};

namespace detail {

inline std::vector<Integer> cyclic_orders(const FgAbelianGroup& g) {
  std::vector<Integer> out(g.free_rank, Integer(0));
  out.insert(out.end(), g.torsion.begin(), g.torsion.end());
  return out;
}

}  // namespace detail

inline FgAbelianGroup fg_tensor(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  std::vector<Integer> orders;
  for (const auto& s : detail::cyclic_orders(a))
    for (const auto& t : detail::cyclic_orders(b)) {
      if (s == 0) orders.push_back(t);
      else if (t == 0) orders.push_back(s);
      else orders.push_back(gcd(s, t));
    }
  return FgAbelianGroup::from_cyclic_orders(orders);
}

inline FgAbelianGroup fg_tor(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  std::vector<Integer> orders;
  for (const auto& s : a.torsion)
    for (const auto& t : b.torsion) orders.push_back(gcd(s, t));
  return FgAbelianGroup::from_cyclic_orders(orders);
}

// Homology groups indexed by degree; degrees below the computed range are
// trivial, degrees above it are an error.
struct GradedGroups {
  int min_degree = 0;
  std::vector<FgAbelianGroup> groups;

  int max_degree() const { return min_degree + static_cast<int>(groups.size()) - 1; }
  FgAbelianGroup at(int d) const {
    if (d < min_degree) return {};
    if (d > max_degree()) throw Error("degree " + std::to_string(d) + " was not computed");
    return groups[static_cast<std::size_t>(d - min_degree)];
  }
};

struct GroupTerm {
  enum class Kind { Tensor, Tor };
  Kind kind = Kind::Tensor;
  int p = 0;  // degree in the first factor
  int q = 0;  // degree q of the second factor (Tor uses q - 1)
  FgAbelianGroup group;

  std::string label() const {
    if (kind == Kind::Tensor) return "H" + std::to_string(p) + "(G) (x) H" + std::to_string(q) + "(H)";
    return "Tor(H" + std::to_string(p) + "(G), H" + std::to_string(q - 1) + "(H))";
  }
};

struct GroupExpression {
  std::vector<GroupTerm> summands;

  FgAbelianGroup total() const {
    std::vector<FgAbelianGroup> parts;
    for (const auto& s : summands) parts.push_back(s.group);
    return direct_sum(parts);
  }
};

struct KunnethReading {
  GroupExpression lhs;
  GroupExpression tor;
  FgAbelianGroup mid;
  bool pass = false;
};

// Sums over p, q >= lowest with p + q = r - 1.
inline KunnethReading kunneth_reading(const GradedGroups& g, const GradedGroups& h, const FgAbelianGroup& mid, int r,
                                      int lowest) {
  KunnethReading out;
  out.mid = mid;
  for (int p = lowest; r - 1 - p >= lowest; ++p) {
    const int q = r - 1 - p;
    out.lhs.summands.push_back({GroupTerm::Kind::Tensor, p, q, fg_tensor(g.at(p), h.at(q))});
    out.tor.summands.push_back({GroupTerm::Kind::Tor, p, q, fg_tor(g.at(p), h.at(q - 1))});
  }
  out.pass = direct_sum({out.lhs.total(), out.tor.total()}) == mid;
  return out;
}

struct KunnethDegree {
  int r = 0;
  KunnethReading reduced;    // augmented complexes, degrees from -1
  KunnethReading truncated;  // truncated complexes, degrees from 0
  bool readings_differ = false;

  bool pass() const { return reduced.pass; }
};

struct KunnethReport {
  Ring ring = Ring::Integers;
  bool relabeled = false;
  std::vector<KunnethDegree> degrees;  // r = -1 .. r_max

  bool pass() const {
    return std::all_of(degrees.begin(), degrees.end(), [](const KunnethDegree& d) { return d.pass(); });
  }
};

inline std::vector<KunnethDegree> kunneth_compare(const GradedGroups& g, const GradedGroups& h, const GradedGroups& join,
                                                  const GradedGroups* g_trunc, const GradedGroups* h_trunc,
                                                  const GradedGroups* join_trunc, int r_max) {
  std::vector<KunnethDegree> out;
  for (int r = -1; r <= r_max; ++r) {
    KunnethDegree d;
    d.r = r;
    d.reduced = kunneth_reading(g, h, join.at(r), r, -1);
    if (g_trunc && h_trunc && join_trunc) {
      d.truncated = kunneth_reading(*g_trunc, *h_trunc, join_trunc->at(r), r, 0);
      d.readings_differ = d.truncated.pass != d.reduced.pass || d.truncated.mid != d.reduced.mid ||
                          d.truncated.lhs.total() != d.reduced.lhs.total() ||
                          d.truncated.tor.total() != d.reduced.tor.total();
    }
    out.push_back(std::move(d));
  }
  return out;
}

template <Scalar T>
GradedGroups graded_groups(const WeightedDigraph& g, int p_max, bool reduced) {
  return {reduced ? -1 : 0, homology_groups<T>(g, p_max, ComplexKind::Omega, reduced)};
}

// Relabels both sides with "L." and "R." when their ids collide and the flag
// is set; otherwise collisions are an error.
inline std::pair<WeightedDigraph, WeightedDigraph> disjoint_pair(const WeightedDigraph& g, const WeightedDigraph& h,
                                                                 bool relabel_on_collision, bool& relabeled) {
  relabeled = false;
  auto collisions = shared_ids(g, h);
  if (collisions.empty()) return {g, h};
  if (!relabel_on_collision) throw NonDisjointVertexSets(std::move(collisions));
  relabeled = true;
  return {relabel(g, "L."), relabel(h, "R.")};
}

inline KunnethReport kunneth_check(const WeightedDigraph& g0, const WeightedDigraph& h0, Ring ring, int r_max,
                                   bool relabel_on_collision = false) {
  require_valid(g0, ring);
  require_valid(h0, ring);
  KunnethReport out;
  out.ring = ring;
  auto [g, h] = disjoint_pair(g0, h0, relabel_on_collision, out.relabeled);
  auto j = join(g, h);
  auto run = [&]<Scalar T>() {
    auto gr = graded_groups<T>(g, r_max, true), hr = graded_groups<T>(h, r_max, true), jr = graded_groups<T>(j, r_max, true);
    auto gt = graded_groups<T>(g, r_max, false), ht = graded_groups<T>(h, r_max, false), jt = graded_groups<T>(j, r_max, false);
    out.degrees = kunneth_compare(gr, hr, jr, &gt, &ht, &jt, r_max);
  };
  if (ring == Ring::Integers) run.template operator()<Integer>();
  else run.template operator()<Rational>();
  return out;
}

// ---------------------------------------------------------------------------
// Chain level: concatenation of Omega bases and the product rule

namespace detail {

// Offsets of the (p, q) blocks, p + q = r - 1, in the tensor basis of degree r.
struct TensorLayout {
  int r = 0;
  std::vector<int> ps;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> right_sizes;
  std::size_t size = 0;

  std::size_t index(int p, std::size_t i, std::size_t j) const {
    auto k = static_cast<std::size_t>(p - ps.front());
    return offsets[k] + i * right_sizes[k] + j;
  }
};

template <class LeftSize, class RightSize>
TensorLayout tensor_layout(int r, LeftSize left, RightSize right) {
  TensorLayout t;
  t.r = r;
  for (int p = -1; r - 1 - p >= -1; ++p) {
    t.ps.push_back(p);
    t.offsets.push_back(t.size);
    t.right_sizes.push_back(right(r - 1 - p));
    t.size += left(p) * right(r - 1 - p);
  }
  return t;
}

}  // namespace detail

struct JoinChainReport {
  struct Degree {
    int r = 0;
    std::size_t tensor_dim = 0;
    std::size_t omega_dim = 0;
    std::size_t rank = 0;
    bool isomorphism = false;
    bool product_rule = false;
  };
  std::vector<Degree> degrees;

  bool pass() const {
    return std::all_of(degrees.begin(), degrees.end(),
                       [](const Degree& d) { return d.isomorphism && d.product_rule; });
  }
};

// Over Q: concatenation maps the tensor product of the augmented Omega
// complexes isomorphically onto the augmented Omega complex of the join, and
// intertwines the differentials with the Leibniz sign.
inline JoinChainReport join_chain_check(const WeightedDigraph& g, const WeightedDigraph& h, int r_max) {
  require_valid(g, Ring::Rationals);
  require_valid(h, Ring::Rationals);
  auto j = join(g, h);
  auto cg = build_complex<Rational>(g, r_max, ComplexKind::Omega, true);
  auto ch = build_complex<Rational>(h, r_max, ComplexKind::Omega, true);
  auto cj = build_complex<Rational>(j, r_max, ComplexKind::Omega, true);
  const auto shift = static_cast<VertexIndex>(g.size());
  auto left = [&](int p) { return p <= r_max ? cg.basis(p).rank() : std::size_t{0}; };
  auto right = [&](int q) { return q <= r_max ? ch.basis(q).rank() : std::size_t{0}; };

  JoinChainReport out;
  std::vector<RatMatrix> mu;
  std::vector<detail::TensorLayout> layouts;
  for (int r = -1; r <= r_max; ++r) {
    auto layout = detail::tensor_layout(r, left, right);
    const auto& jb = cj.basis(r);
    RatMatrix m(jb.rank(), layout.size);
    for (int p : layout.ps) {
      const int q = r - 1 - p;
      for (std::size_t a = 0; a < left(p); ++a) {
        auto u = cg.basis(p).chain(a);
        for (std::size_t b = 0; b < right(q); ++b) {
          auto coords = chain_coordinates(jb, concatenate(u, ch.basis(q).chain(b).shifted(shift)));
          if (!coords) throw CertificateFailure("concatenation leaves Omega of the join in degree " + std::to_string(r));
          const auto col = layout.index(p, a, b);
          for (std::size_t i = 0; i < jb.rank(); ++i) m(i, col) = (*coords)[i];
        }
      }
    }
    JoinChainReport::Degree d;
    d.r = r;
    d.tensor_dim = layout.size;
    d.omega_dim = jb.rank();
    d.rank = wph::rank(m);
    d.isomorphism = d.rank == d.tensor_dim && d.rank == d.omega_dim;
    d.product_rule = true;
    if (r > -1) {
      // Tensor differential: (p, q) -> (p-1, q) by d_p (x) 1 and (p, q-1) by (-1)^{p+1} 1 (x) d_q.
      const auto& below = layouts.back();
      RatMatrix dt(below.size, layout.size);
      for (int p : layout.ps) {
        const int q = r - 1 - p;
        for (std::size_t a = 0; a < left(p); ++a)
          for (std::size_t b = 0; b < right(q); ++b) {
            const auto col = layout.index(p, a, b);
            if (p > -1) {
              const auto& dg = cg.differential(p);
              for (std::size_t k = 0; k < dg.rows(); ++k)
                if (dg(k, a) != 0) dt(below.index(p - 1, k, b), col) += dg(k, a);
            }
            if (q > -1) {
              const auto& dh = ch.differential(q);
              const Rational sign = (p + 1) % 2 == 0 ? 1 : -1;
              for (std::size_t l = 0; l < dh.rows(); ++l)
                if (dh(l, b) != 0) dt(below.index(p, a, l), col) += sign * dh(l, b);
            }
          }
      }
      d.product_rule = cj.differential(r) * m == mu.back() * dt;
    }
    out.degrees.push_back(d);
    mu.push_back(std::move(m));
    layouts.push_back(std::move(layout));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistent version

struct PersistentKunnethReport {
  struct Naturality {
    std::size_t step = 1;  // square between step and step + 1
    int r = 0;
    std::size_t tensor_rank = 0;     // rank of (f (x) f')_* on the tensor part
    std::size_t composite_rank = 0;  // rank of (f * f')_* after the monomorphism
    bool injective = false;          // the monomorphism at both ends
    bool commutes = false;
  };
  Ring ring = Ring::Integers;
  bool relabeled = false;
  std::vector<KunnethReport> steps;
  std::vector<Naturality> naturality;

  bool pass() const {
    for (const auto& s : steps)
      if (!s.pass()) return false;
    for (const auto& n : naturality)
      if (!n.injective || !n.commutes || n.tensor_rank != n.composite_rank) return false;
    return true;
  }
};

namespace detail {

inline MorphismSequence relabel_sequence(const MorphismSequence& s, const std::string& prefix) {
  MorphismSequence out;
  for (const auto& g : s.steps) out.steps.push_back(relabel(g, prefix));
  for (const auto& m : s.maps) out.maps.push_back(relabel(m, prefix, prefix));
  return out;
}

inline Matrix<Rational> kronecker(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.rows(); ++j)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + j, k * b.cols() + l) = a(i, k) * b(j, l);
    }
  return out;
}

// Matrix of the Kunneth monomorphism in degree r: concatenation of generator
// representatives, read in the generators of the join homology.
inline RatMatrix kunneth_monomorphism(const HomologyResult<Rational>& hg, const HomologyResult<Rational>& hh,
                                      const HomologyResult<Rational>& hj, VertexIndex shift, int r,
                                      TensorLayout& layout) {
  auto gens = [](const HomologyResult<Rational>& x, int d) {
    return d >= x.complex.min_degree && d <= x.complex.max_degree ? x.at(d).generator_count() : std::size_t{0};
  };
  layout = tensor_layout(r, [&](int p) { return gens(hg, p); }, [&](int q) { return gens(hh, q); });
  const auto& target = hj.at(r);
  RatMatrix m(target.generator_count(), layout.size);
  for (int p : layout.ps) {
    const int q = r - 1 - p;
    for (std::size_t a = 0; a < gens(hg, p); ++a) {
      auto u = generator_chain(hg, p, a);
      for (std::size_t b = 0; b < gens(hh, q); ++b) {
        auto chain = concatenate(u, generator_chain(hh, q, b).shifted(shift));
        auto coords = chain_coordinates(hj.complex.basis(r), chain);
        if (!coords) throw CertificateFailure("concatenated cycle leaves Omega of the join in degree " + std::to_string(r));
        auto cls = class_coordinates(target, *coords);
        for (std::size_t i = 0; i < cls.size(); ++i) m(i, layout.index(p, a, b)) = cls[i];
      }
    }
  }
  return m;
}

}  // namespace detail

// Group verdicts at every step use `ring`; the naturality squares are checked
// over Q, where the monomorphism and the induced maps are plain matrices.
inline PersistentKunnethReport persistent_kunneth_check(const Sequence& seq_g, const Sequence& seq_h, Ring ring,
                                                        int r_max, bool relabel_on_collision = false) {
  auto sg = require_sequence(seq_g, ring);
  auto sh = require_sequence(seq_h, ring);
  if (sg.steps.size() != sh.steps.size()) throw MorphismLengthMismatch(sg.steps.size(), sh.steps.size());
  PersistentKunnethReport out;
  out.ring = ring;
  std::vector<VertexId> collisions;
  for (std::size_t n = 0; n < sg.steps.size(); ++n)
    for (auto& id : shared_ids(sg.steps[n], sh.steps[n])) collisions.push_back(step_label(n) + ": " + id);
  if (!collisions.empty()) {
    if (!relabel_on_collision) throw NonDisjointVertexSets(std::move(collisions));
    sg = detail::relabel_sequence(sg, "L.");
    sh = detail::relabel_sequence(sh, "R.");
    out.relabeled = true;
  }
  for (std::size_t n = 0; n < sg.steps.size(); ++n) out.steps.push_back(kunneth_check(sg.steps[n], sh.steps[n], ring, r_max));

  MorphismSequence sj;
  for (std::size_t n = 0; n < sg.steps.size(); ++n) sj.steps.push_back(join(sg.steps[n], sh.steps[n]));
  for (std::size_t n = 0; n < sg.maps.size(); ++n) sj.maps.push_back(join(sg.maps[n], sh.maps[n]));

  auto homology_of = [&](const MorphismSequence& s) {
    std::vector<HomologyResult<Rational>> hs;
    for (const auto& g : s.steps) hs.push_back(compute_homology<Rational>(g, r_max, ComplexKind::Omega, true));
    return hs;
  };
  auto hg = homology_of(sg), hh = homology_of(sh), hj = homology_of(sj);
  for (std::size_t n = 0; n < sg.maps.size(); ++n) {
    auto fg = induced_map_between(sg.maps[n], hg[n], hg[n + 1]);
    auto fh = induced_map_between(sh.maps[n], hh[n], hh[n + 1]);
    auto fj = induced_map_between(sj.maps[n], hj[n], hj[n + 1]);
    for (int r = -1; r <= r_max; ++r) {
      detail::TensorLayout lo, hi;
      auto mu_lo = detail::kunneth_monomorphism(hg[n], hh[n], hj[n], static_cast<VertexIndex>(sg.steps[n].size()), r, lo);
      auto mu_hi = detail::kunneth_monomorphism(hg[n + 1], hh[n + 1], hj[n + 1],
                                                static_cast<VertexIndex>(sg.steps[n + 1].size()), r, hi);
      RatMatrix tensor_map(hi.size, lo.size);
      for (int p : lo.ps) {
        const int q = r - 1 - p;
        auto block = detail::kronecker(fg.at(p), fh.at(q));
        for (std::size_t i = 0; i < block.rows(); ++i)
          for (std::size_t k = 0; k < block.cols(); ++k)
            tensor_map(hi.offsets[static_cast<std::size_t>(p + 1)] + i, lo.offsets[static_cast<std::size_t>(p + 1)] + k) =
                block(i, k);
      }
      PersistentKunnethReport::Naturality row;
      row.step = n + 1;
      row.r = r;
      row.tensor_rank = rank(tensor_map);
      auto composite = fj.at(r) * mu_lo;
      row.composite_rank = rank(composite);
      row.injective = rank(mu_lo) == mu_lo.cols() && rank(mu_hi) == mu_hi.cols();
      row.commutes = mu_hi * tensor_map == composite;
      out.naturality.push_back(row);
    }
  }
  return out;
}

}  // namespace wph
