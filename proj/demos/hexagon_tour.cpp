// The P(V) x P(V) x P(V*) example: hexagon, admissible cones, fan pieces
// and H-stability of the sample points. Pass the corpus file as argv[1].

#include <iostream>

#include "nrgit/io.hpp"
#include "nrgit/vgit.hpp"

using namespace nrgit;

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: hexagon_tour corpus/sec7_1.json\n";
    return 2;
  }
  auto spec = load_action_spec(argv[1]);
  const auto& a = spec.action;

  std::cout << "hull vertices:";
  for (const auto& v : hull_vertices(PointSet(a.segre_weights()))) std::cout << " " << to_string(v);
  std::cout << "\n";

  for (const auto& [name, g] : spec.groups) {
    auto ac = admissible_cone(g, a.rank());
    std::cout << name << ": cone";
    for (const auto& h : ac.cone.halfspaces()) std::cout << " <" << to_string(h.normal) << ",l> > 0";
    auto u = universal_1ps(a, ac.cone);
    std::cout << "; " << u.pieces.size() << " fan piece(s)";
    if (u.unique) std::cout << ", universal 1PS " << to_string(u.unique->sample.cochar());
    std::cout << "\n";
  }

  auto cc = wall_chamber_decomposition(a);
  std::cout << cc.chambers().size() << " chambers, " << cc.walls.size() << " walls\n";

  const std::vector<RationalVector> twists{RationalVector(2), RationalVector{Rational(-1), Rational(0)}};
  for (const auto& chi : twists) {
    auto at = a.with_twist(chi);
    std::cout << "twist " << to_string(chi) << ":\n";
    for (const auto& e : spec.explicit_points)
      std::cout << "  " << e.name << ": " << to_string(h_stable_explicit(e.point, at, spec.group("H")).verdict) << "\n";
  }
}
