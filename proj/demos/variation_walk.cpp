// Walks the twist line of a rank-1 action and prints how the semistable
// supports change at each wall, then the stratification of the same action.

#include <iostream>

#include "nrgit/strata.hpp"
#include "nrgit/vgit.hpp"

using namespace nrgit;

namespace {

std::string family(const std::vector<SupportPoint>& f) {
  std::string s;
  for (const auto& x : f) s += to_string(x) + " ";
  return s.empty() ? "-" : s;
}

}  // namespace

int main() {
  auto a = TorusAction::single({RationalVector::from_ints({-1}), RationalVector::from_ints({0}), RationalVector::from_ints({2})});
  auto cc = wall_chamber_decomposition(a);

  std::cout << "faces of the twist line\n";
  for (const auto& f : cc.faces)
    std::cout << "  " << (f.dim == 0 ? "wall    " : "chamber ") << to_string(f.sample) << "  semistable: " << family(f.family.semistable) << "\n";

  auto ch = cc.chambers();
  for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
    for (const auto& [lo, hi] : cc.incidences) {
      if (hi != ch[i] || !cc.adjacent(lo, ch[i + 1])) continue;
      auto r = crossing_report(cc, lo, ch[i], ch[i + 1]);
      std::cout << "crossing " << to_string(cc.faces[lo].sample) << ": lost " << family(r.lost) << "gained " << family(r.gained)
                << "wall only " << family(r.wall_only) << "\n";
    }
  }

  auto rep = verify_stratification(a);
  std::cout << "strata (" << (rep.ok() ? "verified" : "violations") << ")\n";
  for (std::size_t k = 0; k < rep.betas.size(); ++k)
    std::cout << "  beta " << to_string(rep.betas[k].beta) << "  |beta|^2 " << to_string(rep.betas[k].norm_sq) << "  " << family(rep.members(k))
              << "\n";
}
