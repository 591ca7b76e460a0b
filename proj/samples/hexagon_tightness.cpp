// Prints diameter vs. bound for the hexagon-power family H_1..H_5, the
// (0,2)-polytopes on which floor(3d/2) is attained.

#include <cstdio>

#include "latdiam/latdiam.hpp"

int main() {
  using namespace latdiam;
  std::printf("%3s %9s %9s %6s\n", "d", "vertices", "diameter", "bound");
  for (int d = 1; d <= 5; ++d) {
    auto h = gen_hexagon_power(d);
    auto s = build_skeleton(h);
    std::printf("%3d %9zu %9zu %6lld\n", d, h.size(), diameter(s),
                static_cast<long long>(diameter_bound(d, 2)));
  }
}
