#pragma once

#include "wph/abelian_group.hpp"
#include "wph/complex.hpp"

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace wph {

enum class ComplexKind { Omega, Gamma };

inline const char* complex_name(ComplexKind k) { return k == ComplexKind::Omega ? "omega" : "gamma"; }

class CertificateFailure : public Error {
 public:
  explicit CertificateFailure(const std::string& what) : Error("certificate failure: " + what) {}
};

// A bounded chain complex of free modules with chosen bases. Degree d lives
// at index d - min_degree. differentials[i] maps C_d to C_{d-1} in basis
// coordinates (zero-row matrix at the bottom degree). top_image spans the
// image of the next differential inside C_{top}.
template <Scalar T>
struct FreeChainComplex {
  int min_degree = 0;
  int max_degree = 0;
  std::vector<GradedBasis<T>> bases;
  std::vector<Matrix<T>> differentials;
  Matrix<T> top_image;

  const GradedBasis<T>& basis(int d) const { return bases[static_cast<std::size_t>(d - min_degree)]; }
  const Matrix<T>& differential(int d) const { return differentials[static_cast<std::size_t>(d - min_degree)]; }
  // Image of the differential into degree d, in C_d coordinates.
  const Matrix<T>& incoming(int d) const { return d == max_degree ? top_image : differential(d + 1); }
};

namespace detail {

// Weighted boundary of each basis column, in coordinates of `target`. Terms
// outside the target ambient must cancel.
template <Scalar T>
Matrix<T> boundary_in_basis(const WeightedDigraph& g, const GradedBasis<T>& source, const GradedBasis<T>& target,
                            bool weighted) {
  auto index = index_paths(target.ambient);
  Matrix<T> images(target.ambient.size(), source.rank());
  std::unordered_map<Path, T, PathHash> outside;
  for (std::size_t c = 0; c < source.rank(); ++c) {
    outside.clear();
    for (std::size_t i = 0; i < source.ambient.size(); ++i) {
      const T& coeff = source.vectors(i, c);
      if (coeff == 0) continue;
      for_each_boundary_face(source.ambient[i], g.weights(), weighted, [&](const Path& face, const Rational& k) {
        T term = coeff * from_rational<T>(k);
        if (auto it = index.find(face); it != index.end()) images(it->second, c) += term;
        else outside[face] += term;
      });
    }
    for (const auto& [path, v] : outside)
      if (v != 0) throw CertificateFailure("boundary leaves the target complex in degree " + std::to_string(target.degree));
  }
  auto coords = SpanSolver<T>::from_echelon(target.vectors).solve_columns(images);
  if (!coords) throw CertificateFailure("boundary is not in the span of degree " + std::to_string(target.degree));
  return *coords;
}

template <Scalar T>
GradedBasis<T> augmentation_basis() {
  GradedBasis<T> b;
  b.degree = -1;
  b.ambient = {Path{}};
  b.vectors = Matrix<T>::identity(1);
  return b;
}

}  // namespace detail

// Omega or Gamma complex of g in degrees [reduced ? -1 : 0, p_max]. Over Z the
// digraph must have integral weights.
template <Scalar T>
FreeChainComplex<T> build_complex(const WeightedDigraph& g, int p_max, ComplexKind kind, bool reduced,
                                  bool weighted = true) {
  FreeChainComplex<T> cx;
  cx.min_degree = reduced ? -1 : 0;
  cx.max_degree = p_max;
  if (reduced) cx.bases.push_back(detail::augmentation_basis<T>());
  for (int d = 0; d <= p_max; ++d)
    cx.bases.push_back(kind == ComplexKind::Omega ? omega_basis<T>(g, d, weighted) : gamma_basis<T>(g, d, weighted));
  for (int d = cx.min_degree; d <= p_max; ++d) {
    if (d == cx.min_degree) {
      cx.differentials.emplace_back(0, cx.basis(d).rank());
      continue;
    }
    cx.differentials.push_back(detail::boundary_in_basis(g, cx.basis(d), cx.basis(d - 1), weighted));
  }
  // Only the image of the next differential is needed at the top. For Gamma
  // it equals the boundary of the allowed (p_max+1)-chains.
  GradedBasis<T> next;
  if (kind == ComplexKind::Omega) {
    next = omega_basis<T>(g, p_max + 1, weighted);
  } else {
    next.degree = p_max + 1;
    next.ambient = enumerate_allowed_paths(g, p_max + 1);
    next.vectors = Matrix<T>::identity(next.ambient.size());
  }
  cx.top_image = detail::boundary_in_basis(g, next, cx.basis(p_max), weighted);
  return cx;
}

template <Scalar T>
struct DegreeHomology {
  int degree = 0;
  FgAbelianGroup group;
  Matrix<T> cycles;           // kernel basis, complex coordinates (columns)
  Matrix<T> boundary_coords;  // image of the next differential, cycle coordinates
  Matrix<T> class_transform;  // U of the Smith form: class coordinates = U * cycle coordinates
  std::vector<std::size_t> generator_slots;
  std::vector<Integer> generator_orders;  // 0 marks a free generator
  Matrix<T> generators;                   // complex coordinates of each generator
  std::shared_ptr<const SpanSolver<T>> cycle_solver;

  std::size_t generator_count() const { return generator_slots.size(); }
};

template <Scalar T>
struct HomologyResult {
  ComplexKind kind = ComplexKind::Omega;
  bool reduced = false;
  FreeChainComplex<T> complex;
  std::vector<DegreeHomology<T>> degrees;

  const DegreeHomology<T>& at(int d) const { return degrees[static_cast<std::size_t>(d - complex.min_degree)]; }
  std::vector<FgAbelianGroup> groups() const {
    std::vector<FgAbelianGroup> out;
    for (const auto& d : degrees) out.push_back(d.group);
    return out;
  }
};

template <Scalar T>
DegreeHomology<T> degree_homology(const FreeChainComplex<T>& cx, int d) {
  DegreeHomology<T> h;
  h.degree = d;
  h.cycles = kernel_basis(cx.differential(d));
  const std::size_t k = h.cycles.cols();
  h.cycle_solver = std::make_shared<const SpanSolver<T>>(SpanSolver<T>::from_echelon(h.cycles));
  const auto& incoming = cx.incoming(d);
  auto coords = h.cycle_solver->solve_columns(incoming);
  if (!coords) throw CertificateFailure("image is not contained in the cycles in degree " + std::to_string(d));
  h.boundary_coords = std::move(*coords);

  // The cokernel only depends on the lattice spanned by the image.
  auto snf = smith_normal_form(span_basis(h.boundary_coords), false);
  h.class_transform = snf.U;
  for (std::size_t i = 0; i < k; ++i) {
    if (i < snf.rank) {
      if constexpr (!is_field_v<T>) {
        if (snf.S(i, i) > 1) {
          h.generator_slots.push_back(i);
          h.generator_orders.push_back(snf.S(i, i));
        }
      }
    } else {
      h.generator_slots.push_back(i);
      h.generator_orders.emplace_back(0);
    }
  }
  h.group.free_rank = k - snf.rank;
  for (const auto& o : h.generator_orders)
    if (o != 0) h.group.torsion.push_back(o);

  Matrix<T> uinv = k ? inverse(snf.U) : Matrix<T>(0, 0);
  h.generators = h.cycles * uinv.select_columns(h.generator_slots);
  return h;
}

template <Scalar T>
HomologyResult<T> compute_homology(const WeightedDigraph& g, int p_max, ComplexKind kind = ComplexKind::Omega,
                                   bool reduced = false, bool weighted = true) {
  HomologyResult<T> r;
  r.kind = kind;
  r.reduced = reduced;
  r.complex = build_complex<T>(g, p_max, kind, reduced, weighted);
  for (int d = r.complex.min_degree; d <= p_max; ++d) r.degrees.push_back(degree_homology(r.complex, d));
  return r;
}

// Groups only, without cycle bases or generators. The cycles are a direct
// summand of a free module, so the torsion of H_d is read off the invariant
// factors of the incoming differential alone.
template <Scalar T>
std::vector<FgAbelianGroup> homology_groups(const FreeChainComplex<T>& cx) {
  // Walk down from the top so that rank(d_d) is the rank of incoming(d - 1).
  std::vector<FgAbelianGroup> out(static_cast<std::size_t>(cx.max_degree - cx.min_degree + 1));
  std::vector<std::vector<T>> factors(out.size());
  for (int d = cx.max_degree; d >= cx.min_degree - 1; --d) {
    const auto& in = d >= cx.min_degree ? cx.incoming(d) : cx.differential(cx.min_degree);
    std::vector<T> f;
    if (in.cols() > 0 && in.rows() > 0) {
      if constexpr (is_field_v<T>) f.assign(rank(in), T(1));
      else f = invariant_factors(in);
    }
    if (d < cx.min_degree) {
      out.front().free_rank -= f.size();
      break;
    }
    const auto k = static_cast<std::size_t>(d - cx.min_degree);
    auto& g = out[k];
    g.free_rank = cx.basis(d).rank() - f.size();
    if constexpr (!is_field_v<T>) {
      for (const auto& x : f)
        if (x > 1) g.torsion.push_back(x);
    }
    if (k + 1 < out.size()) out[k + 1].free_rank -= f.size();
  }
  return out;
}

template <Scalar T>
std::vector<FgAbelianGroup> homology_groups(const WeightedDigraph& g, int p_max, ComplexKind kind = ComplexKind::Omega,
                                            bool reduced = false, bool weighted = true) {
  return homology_groups(build_complex<T>(g, p_max, kind, reduced, weighted));
}

// Coordinates of the class of a cycle (complex coordinates) on the generators;
// torsion coordinates are reduced into [0, order).
template <Scalar T>
std::vector<T> class_coordinates(const DegreeHomology<T>& h, const std::vector<T>& cycle) {
  auto x = h.cycle_solver->solve(cycle);
  if (!x) throw CertificateFailure("vector is not a cycle in degree " + std::to_string(h.degree));
  auto y = h.class_transform * *x;
  std::vector<T> out;
  for (std::size_t s = 0; s < h.generator_slots.size(); ++s) {
    T v = y[h.generator_slots[s]];
    if constexpr (!is_field_v<T>) {
      if (h.generator_orders[s] != 0) v = floor_mod(v, h.generator_orders[s]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Converts a chain on the ambient paths of a degree into complex coordinates.
template <Scalar T>
std::optional<std::vector<T>> chain_coordinates(const GradedBasis<T>& basis, const Chain& c) {
  auto index = index_paths(basis.ambient);
  std::vector<T> amb(basis.ambient.size());
  for (const auto& [p, k] : c.terms()) {
    auto it = index.find(p);
    if (it == index.end()) return std::nullopt;
    if constexpr (!is_field_v<T>) {
      if (!is_integral(k)) return std::nullopt;
    }
    amb[it->second] = from_rational<T>(k);
  }
  return SpanSolver<T>::from_echelon(basis.vectors).solve(std::move(amb));
}

template <Scalar T>
Chain generator_chain(const HomologyResult<T>& r, int d, std::size_t gen) {
  const auto& b = r.complex.basis(d);
  const auto& h = r.at(d);
  Chain c(d);
  for (std::size_t i = 0; i < b.ambient.size(); ++i) {
    T coeff = 0;
    for (std::size_t j = 0; j < b.rank(); ++j)
      if (b.vectors(i, j) != 0 && h.generators(j, gen) != 0) coeff += b.vectors(i, j) * h.generators(j, gen);
    if (coeff != 0) c.add(b.ambient[i], to_rational(coeff));
  }
  return c;
}

// Type-erased report used by the CLI and serializers.
struct HomologyReport {
  struct Degree {
    int degree = 0;
    FgAbelianGroup group;
    GradedBasis<Rational> cycle_basis;  // cycles as chains on the complex ambient
    RatMatrix boundary_coords;
    std::vector<Chain> generators;
  };
  Ring ring = Ring::Integers;
  ComplexKind complex_used = ComplexKind::Omega;
  bool reduced = false;
  std::vector<Degree> degrees;

  const Degree& at(int d) const { return degrees[static_cast<std::size_t>(d - (reduced ? -1 : 0))]; }
};

namespace detail {

template <Scalar T>
HomologyReport make_report(const HomologyResult<T>& r, Ring ring) {
  HomologyReport out;
  out.ring = ring;
  out.complex_used = r.kind;
  out.reduced = r.reduced;
  for (const auto& h : r.degrees) {
    HomologyReport::Degree d;
    d.degree = h.degree;
    d.group = h.group;
    const auto& b = r.complex.basis(h.degree);
    d.cycle_basis.degree = h.degree;
    d.cycle_basis.ambient = b.ambient;
    d.cycle_basis.vectors = convert<Rational>(b.vectors * h.cycles);
    d.boundary_coords = convert<Rational>(h.boundary_coords);
    for (std::size_t gen = 0; gen < h.generator_count(); ++gen) d.generators.push_back(generator_chain(r, h.degree, gen));
    out.degrees.push_back(std::move(d));
  }
  return out;
}

}  // namespace detail

inline HomologyReport homology(const WeightedDigraph& g, Ring ring, int p_max, ComplexKind kind = ComplexKind::Omega,
                               bool reduced = false) {
  require_valid(g, ring);
  if (ring == Ring::Integers) return detail::make_report(compute_homology<Integer>(g, p_max, kind, reduced), ring);
  return detail::make_report(compute_homology<Rational>(g, p_max, kind, reduced), ring);
}

// ---------------------------------------------------------------------------
// Induced maps

// Pushes a chain given on source ambient coordinates through f#, dropping
// images that collapse to non-regular paths.
inline Chain push_forward(const Chain& c, const std::vector<VertexIndex>& vertex_map) {
  Chain out(c.degree());
  for (const auto& [p, k] : c.terms()) {
    Path q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = vertex_map[p[i]];
    if (is_regular(q)) out.add(q, k);
  }
  return out;
}

template <Scalar T>
struct InducedMapResult {
  int min_degree = 0;
  // Per degree: target generators x source generators, torsion rows reduced.
  std::vector<Matrix<T>> matrices;
  std::vector<std::vector<Integer>> target_orders;
  // Chain level: f# on complex bases, target x source coordinates.
  std::vector<Matrix<T>> chain_maps;

  const Matrix<T>& at(int d) const { return matrices[static_cast<std::size_t>(d - min_degree)]; }
};

template <Scalar T>
Chain basis_chain(const GradedBasis<T>& b, const std::vector<T>& coords) {
  Chain c(b.degree);
  for (std::size_t i = 0; i < b.ambient.size(); ++i) {
    T v = 0;
    for (std::size_t j = 0; j < b.rank(); ++j)
      if (b.vectors(i, j) != 0 && coords[j] != 0) v += b.vectors(i, j) * coords[j];
    if (v != 0) c.add(b.ambient[i], to_rational(v));
  }
  return c;
}

// Matrices of f_* between precomputed Omega homologies of source and target.
// Certifies that f# maps the source Omega complex into the target one.
template <Scalar T>
InducedMapResult<T> induced_map_between(const DigraphMorphism& f, const HomologyResult<T>& src,
                                        const HomologyResult<T>& tgt) {
  if (src.kind != ComplexKind::Omega || tgt.kind != ComplexKind::Omega)
    throw Error("induced maps are computed on the Omega complex");
  auto v = validate_morphism(f);
  if (!v.empty()) throw InvalidMorphism(std::move(v));
  const auto vmap = f.index_map();
  InducedMapResult<T> out;
  out.min_degree = src.complex.min_degree;
  for (int d = src.complex.min_degree; d <= src.complex.max_degree; ++d) {
    const auto& sb = src.complex.basis(d);
    const auto& tb = tgt.complex.basis(d);
    Matrix<T> chain_map(tb.rank(), sb.rank());
    for (std::size_t j = 0; j < sb.rank(); ++j) {
      auto image = push_forward(sb.chain(j), vmap);
      auto coords = chain_coordinates(tb, image);
      if (!coords) throw CertificateFailure("f# leaves Omega in degree " + std::to_string(d));
      for (std::size_t i = 0; i < tb.rank(); ++i) chain_map(i, j) = (*coords)[i];
    }
    const auto& sh = src.at(d);
    const auto& th = tgt.at(d);
    Matrix<T> m(th.generator_count(), sh.generator_count());
    for (std::size_t j = 0; j < sh.generator_count(); ++j) {
      auto cls = class_coordinates(th, chain_map * sh.generators.column(j));
      for (std::size_t i = 0; i < cls.size(); ++i) m(i, j) = cls[i];
    }
    out.matrices.push_back(std::move(m));
    out.target_orders.push_back(th.generator_orders);
    out.chain_maps.push_back(std::move(chain_map));
  }
  return out;
}

template <Scalar T>
InducedMapResult<T> compute_induced_map(const DigraphMorphism& f, int p_max, bool reduced = false) {
  return induced_map_between(f, compute_homology<T>(f.source, p_max, ComplexKind::Omega, reduced),
                             compute_homology<T>(f.target, p_max, ComplexKind::Omega, reduced));
}

// Product of induced matrices with entries reduced modulo the target orders.
template <Scalar T>
Matrix<T> reduce_mod_orders(Matrix<T> m, const std::vector<Integer>& orders) {
  if constexpr (!is_field_v<T>) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (orders[i] != 0)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = floor_mod(m(i, j), orders[i]);
  }
  return m;
}

struct InducedMap {
  Ring ring = Ring::Integers;
  HomologyReport source_report;
  HomologyReport target_report;
  std::vector<RatMatrix> matrices;                 // per degree 0..p_max (or -1..)
  std::vector<std::vector<Integer>> target_orders;  // generator side table, 0 = free
};

inline InducedMap induced_map(const DigraphMorphism& f, Ring ring, int p_max, bool reduced = false) {
  require_valid(f.source, ring);
  require_valid(f.target, ring);
  auto v = validate_morphism(f);
  if (!v.empty()) throw InvalidMorphism(std::move(v));
  InducedMap out;
  out.ring = ring;
  auto run = [&]<Scalar T>() {
    auto src = compute_homology<T>(f.source, p_max, ComplexKind::Omega, reduced);
    auto tgt = compute_homology<T>(f.target, p_max, ComplexKind::Omega, reduced);
    auto m = induced_map_between(f, src, tgt);
    out.source_report = detail::make_report(src, ring);
    out.target_report = detail::make_report(tgt, ring);
    for (const auto& x : m.matrices) out.matrices.push_back(convert<Rational>(x));
    out.target_orders = m.target_orders;
  };
  if (ring == Ring::Integers) run.template operator()<Integer>();
  else run.template operator()<Rational>();
  return out;
}

// ---------------------------------------------------------------------------
// Weight independence over Q

struct WeightIndependenceReport {
  struct Degree {
    int degree = 0;
    std::size_t betti = 0;
    std::size_t betti_alt = 0;
    // phi_w o phi_alt^{-1} restricted to Omega, in (Omega^w x Omega^alt) coordinates.
    RatMatrix witness;
    bool witness_invertible = false;
    bool witness_is_chain_map = false;
  };
  std::vector<Degree> degrees;
  bool equal() const {
    for (const auto& d : degrees)
      if (d.betti != d.betti_alt || !d.witness_invertible || !d.witness_is_chain_map) return false;
    return true;
  }
};

inline WeightIndependenceReport verify_weight_independence(const WeightedDigraph& g,
                                                           std::optional<std::vector<Rational>> alt_weights,
                                                           int p_max) {
  require_valid(g, Ring::Rationals);
  auto alt = g.with_weights(alt_weights ? *alt_weights : std::vector<Rational>(g.size(), Rational(1)));
  require_valid(alt, Ring::Rationals);
  auto hw = compute_homology<Rational>(g, p_max);
  auto ha = compute_homology<Rational>(alt, p_max);
  WeightIndependenceReport out;
  std::vector<RatMatrix> witnesses;
  for (int d = 0; d <= p_max; ++d) {
    WeightIndependenceReport::Degree row;
    row.degree = d;
    row.betti = hw.at(d).group.free_rank;
    row.betti_alt = ha.at(d).group.free_rank;
    const auto& wb = hw.complex.basis(d);
    const auto& ab = ha.complex.basis(d);
    // psi = phi_w o phi_alt^{-1} scales each path by prod(alt) / prod(w).
    RatMatrix m(wb.rank(), ab.rank());
    bool ok = wb.rank() == ab.rank();
    for (std::size_t j = 0; j < ab.rank() && ok; ++j) {
      Chain c(d);
      const Chain source = ab.chain(j);
      for (const auto& [p, k] : source.terms()) {
        Rational s = 1;
        for (VertexIndex v : p) s *= alt.weight(v) / g.weight(v);
        c.add(p, k * s);
      }
      auto coords = chain_coordinates(wb, c);
      if (!coords) {
        ok = false;
        break;
      }
      for (std::size_t i = 0; i < wb.rank(); ++i) m(i, j) = (*coords)[i];
    }
    row.witness_invertible = ok && rank(m) == m.rows();
    row.witness = std::move(m);
    witnesses.push_back(row.witness);
    out.degrees.push_back(std::move(row));
  }
  // psi commutes with the differentials: d^w psi = psi d^alt.
  for (int d = 1; d <= p_max; ++d) {
    auto& row = out.degrees[static_cast<std::size_t>(d)];
    if (!row.witness_invertible || !out.degrees[static_cast<std::size_t>(d - 1)].witness_invertible) continue;
    row.witness_is_chain_map = hw.complex.differential(d) * witnesses[static_cast<std::size_t>(d)] ==
                               witnesses[static_cast<std::size_t>(d - 1)] * ha.complex.differential(d);
  }
  if (!out.degrees.empty()) out.degrees[0].witness_is_chain_map = out.degrees[0].witness_invertible;
  return out;
}

}  // namespace wph
