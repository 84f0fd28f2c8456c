#pragma once

#include "wph/normal_form.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace wph {

// Finitely generated abelian group Z^free_rank + Z/t1 + ... + Z/tk with
// t1 | t2 | ... | tk and every ti >= 2. Over Q only free_rank is used.
struct FgAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }

  friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

  // Canonical group from a list of cyclic orders: 0 means Z, 1 is dropped.
  static FgAbelianGroup from_cyclic_orders(const std::vector<Integer>& orders) {
    FgAbelianGroup g;
    std::vector<Integer> finite;
    for (const auto& o : orders) {
      Integer a = abs_value(o);
      if (a == 0) ++g.free_rank;
      else if (a != 1) finite.push_back(a);
    }
    if (finite.empty()) return g;
    IntMatrix d(finite.size(), finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i) d(i, i) = finite[i];
    auto snf = smith_normal_form(d);
    for (const auto& x : snf.diagonal())
      if (x > 1) g.torsion.push_back(x);
    return g;
  }

  std::string to_string() const {
    std::string out;
    if (free_rank == 1) out = "Z";
    else if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
    for (const auto& t : torsion) {
      if (!out.empty()) out += " + ";
      out += "Z/" + t.str();
    }
    return out.empty() ? "0" : out;
  }

  bool is_divisibility_chain() const {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      if (torsion[i] < 2) return false;
      if (i + 1 < torsion.size() && torsion[i + 1] % torsion[i] != 0) return false;
    }
    return true;
  }
};

inline FgAbelianGroup direct_sum(const std::vector<FgAbelianGroup>& parts) {
  std::vector<Integer> orders;
  for (const auto& g : parts) {
    for (std::size_t i = 0; i < g.free_rank; ++i) orders.emplace_back(0);
    orders.insert(orders.end(), g.torsion.begin(), g.torsion.end());
  }
  return FgAbelianGroup::from_cyclic_orders(orders);
}

// Cokernel of the image columns inside Z^k (or Q^k); k = image.rows().
template <Scalar T>
FgAbelianGroup quotient_group(std::size_t kernel_rank, const Matrix<T>& image_in_kernel_coords) {
  assert(image_in_kernel_coords.rows() == kernel_rank || image_in_kernel_coords.cols() == 0);
  FgAbelianGroup g;
  if (image_in_kernel_coords.cols() == 0 || kernel_rank == 0) {
    g.free_rank = kernel_rank;
    return g;
  }
  auto factors = invariant_factors(image_in_kernel_coords);
  g.free_rank = kernel_rank - factors.size();
  if constexpr (!is_field_v<T>) {
    for (const auto& f : factors)
      if (f > 1) g.torsion.push_back(f);
  }
  return g;
}

}  // namespace wph
