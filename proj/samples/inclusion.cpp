#include "wph/io.hpp"

#include <iostream>

int main() {
  using namespace wph;
  WeightedDigraph g1({"i0", "i1", "i2"}, {2, 4, 1}, {{"i0", "i1"}});
  WeightedDigraph g2({"i0", "i1", "i2"}, {2, 4, 1}, {{"i0", "i1"}, {"i1", "i2"}});

  std::cout << "G1\n" << format_homology(homology(g1, Ring::Integers, 2), g1);
  std::cout << "G2\n" << format_homology(homology(g2, Ring::Integers, 2), g2);

  DigraphMorphism inclusion{g1, g2, {{"i0", "i0"}, {"i1", "i1"}, {"i2", "i2"}}};
  std::cout << "inclusion\n" << format_induced(induced_map(inclusion, Ring::Integers, 1));

  auto f = make_filtration({g1, g2});
  std::cout << "barcode over Q\n" << format_barcode(barcode(f, Ring::Rationals, 1));
}
