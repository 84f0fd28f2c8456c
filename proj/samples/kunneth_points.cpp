#include "wph/io.hpp"

#include <iostream>

int main() {
  using namespace wph;
  WeightedDigraph a({"a"}, {2}, {});
  WeightedDigraph b({"b"}, {2}, {});
  std::cout << format_kunneth(kunneth_check(a, b, Ring::Integers, 1));

  WeightedDigraph c3({"x", "y", "z"}, {1, 2, 3}, {{"x", "y"}, {"y", "z"}, {"z", "x"}});
  WeightedDigraph edge({"u", "v"}, {2, 2}, {{"u", "v"}});
  std::cout << format_kunneth(kunneth_check(c3, edge, Ring::Integers, 3));
}
