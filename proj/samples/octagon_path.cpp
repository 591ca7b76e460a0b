// Certified path between opposite vertices of the [0,3]^2 octagon.

#include <iostream>

#include "latdiam/latdiam.hpp"

int main() {
  using namespace latdiam;
  auto oct = gen_octagon3();
  auto s = build_skeleton(oct);
  auto u = *oct.index_of({0, 1});
  auto v = *oct.index_of({3, 2});
  auto res = construct_path(oct, s, u, v);
  std::cout << "path:";
  for (auto x : res.path.vertices) std::cout << " " << format_point(oct.point(x));
  std::cout << "\nlength " << res.path.length() << " (bound " << res.certificate.bound_value
            << ", distance " << *bfs_distance(s, u, v).distance << ")\ntrace:";
  for (auto c : res.certificate.case_trace) std::cout << " " << to_string(c);
  std::cout << "\nverified: " << std::boolalpha << verify_certificate(res.path, res.certificate, s) << "\n";
}
