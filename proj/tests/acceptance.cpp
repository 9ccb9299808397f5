// Acceptance run: one line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "nrgit/io.hpp"
#include "nrgit/strata.hpp"
#include "nrgit/vgit.hpp"

using namespace nrgit;

namespace {

std::string corpus(const std::string& name) { return std::string(NRGIT_CORPUS_DIR) + "/" + name; }

RationalVector r1(long a) { return RationalVector::from_ints({a}); }
RationalVector v2(long a, long b) { return RationalVector::from_ints({a, b}); }
RationalVector q2(long an, long ad, long bn, long bd) { return RationalVector{make_rational(an, ad), make_rational(bn, bd)}; }

struct Outcome {
  bool ok = true;
  std::string note;
  std::string info;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<void(Outcome&)> body;
};

const std::vector<std::string> kCorpus{"ex1_7.json", "sec7_1.json", "external_toy.json"};

// Monotone-chain hull on exact points, kept apart from the library's hull code.
std::vector<RationalVector> oracle_hull(std::vector<RationalVector> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  auto cross = [](const RationalVector& o, const RationalVector& a, const RationalVector& b) -> Rational {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<RationalVector> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

std::optional<SupportPoint> support_at(const ExplicitPoint& ux, const Rational& b, const Rational& c) {
  std::vector<std::size_t> idx;
  std::size_t k = 0;
  for (const auto& f : ux.coords()) {
    bool any = false;
    for (const auto& p : f) {
      if (p(b, c) != 0) {
        idx.push_back(k);
        any = true;
      }
      ++k;
    }
    if (!any) return std::nullopt;
  }
  return SupportPoint(std::move(idx));
}

void c1(Outcome& o) {
  auto cc = wall_chamber_decomposition(TorusAction::single({r1(-1), r1(0), r1(2)}));
  std::vector<RationalVector> walls;
  for (const auto& w : cc.walls) walls.push_back(*w.point);
  o.require(walls == std::vector<RationalVector>{r1(-1), r1(0), r1(2)}, "walls differ from {-1, 0, 2}");
  auto ch = cc.chambers();
  o.require(ch.size() == 2, "expected two chambers");
  if (ch.size() != 2) return;
  auto ends = [&](std::size_t c) {
    std::vector<RationalVector> e;
    for (const auto& [lo, hi] : cc.incidences)
      if (hi == c) e.push_back(cc.faces[lo].sample);
    std::sort(e.begin(), e.end());
    return e;
  };
  o.require(ends(ch[0]) == std::vector<RationalVector>{r1(-1), r1(0)}, "first chamber is not (-1,0)");
  o.require(ends(ch[1]) == std::vector<RationalVector>{r1(0), r1(2)}, "second chamber is not (0,2)");
  o.require(cc.region.vertices() == std::vector<RationalVector>{r1(-1), r1(2)}, "effective interval is not [-1,2]");
}

void c2(Outcome& o) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  const auto fw = spec.action.factor_weights();
  std::vector<RationalVector> sums;
  for (const auto& x : fw[0])
    for (const auto& y : fw[1])
      for (const auto& z : fw[2]) sums.push_back(x + y + z);
  o.require(sums.size() == 27, "expected 27 vertex sums");
  auto want = oracle_hull(sums);
  auto got = hull_vertices(PointSet(spec.action.segre_weights()));
  o.require(got.size() == 6, "hull does not have 6 vertices");
  o.require(std::set<RationalVector>(got.begin(), got.end()) == std::set<RationalVector>(want.begin(), want.end()),
            "hull vertices differ from the Minkowski-sum oracle");
}

void c3(Outcome& o) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  auto ac = admissible_cone(spec.group("H"), 2);
  const auto& hs = ac.cone.halfspaces();
  o.require(hs.size() == 2, "expected two halfspaces");
  o.require(std::all_of(hs.begin(), hs.end(), [](const Halfspace& h) { return h.strict; }), "halfspaces must be strict");
  std::set<RationalVector> normals;
  for (const auto& h : hs) normals.insert(h.normal);
  o.require(normals == std::set<RationalVector>{v2(1, -1), v2(2, 1)}, "normals differ from (1,-1), (2,1)");
  // Positive Weyl chamber on (a,b) -> diag(a,b,-a-b): a - b > 0, a + 2b > 0.
  Cone weyl(2, {Halfspace{v2(1, -1), true}, Halfspace{v2(1, 2), true}});
  for (long a = -12; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b)
      if (weyl.contains(v2(a, b))) o.require(ac.cone.contains(v2(a, b)), "Weyl chamber point outside the admissible cone");
  RationalVector witness = v2(2, -3);
  o.require(ac.cone.contains(witness) && !weyl.contains(witness), "no integral witness outside the Weyl chamber");
}

void c4(Outcome& o) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  auto full = admissible_cone(spec.group("H"), 2).cone;
  auto b0 = admissible_cone(spec.group("H_b0"), 2).cone;
  for (long a = -12; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b)
      if (full.contains(v2(a, b))) o.require(b0.contains(v2(a, b)), "H cone not inside the H_b0 cone");
  o.require(b0.contains(v2(1, 1)) && !full.contains(v2(1, 1)), "H_b0 cone not strictly larger");
  auto u = universal_1ps(spec.action, b0);
  o.require(!u.is_unique(), "H_b0 reports a universal 1PS");
  o.require(u.pieces.size() > 1, "H_b0 fan has a single piece");
}

void c5(Outcome& o) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> ent(-5, 5), dim(1, 3), cnt(1, 8);
  for (int t = 0; t < 200 && o.ok; ++t) {
    const int d = dim(rng), n = cnt(rng);
    std::vector<RationalVector> pts;
    for (int i = 0; i < n; ++i) {
      std::vector<long> v;
      for (int k = 0; k < d; ++k) v.push_back(ent(rng));
      pts.push_back(RationalVector(std::vector<Rational>(v.begin(), v.end())));
    }
    PointSet s(pts);
    o.require(min_norm_point(s) == min_norm_point_oracle(s), "Wolfe and face enumeration differ on trial " + std::to_string(t));
  }
}

void c6(Outcome& o) {
  for (const auto& file : kCorpus) {
    auto a = load_action_spec(corpus(file)).action;
    o.require(a.coordinate_count() <= 12, file + " has more than 12 weights");
    for (const auto& s : a.all_supports()) {
      bool mu_ok = true;
      for (const auto& rho : facet_normal_candidates(a.twisted_weights(s))) mu_ok = mu_ok && hm_mu(a, s, rho) >= 0;
      const bool ss = torus_status(a, s) != TorusStatus::Unstable;
      o.require(ss == mu_ok, file + " " + to_string(s) + ": status and mu disagree");
      o.require(ss == destabilising_beta(a, s).beta.is_zero(), file + " " + to_string(s) + ": status and min-norm disagree");
    }
  }
}

void c7(Outcome& o) {
  for (const auto& file : kCorpus) {
    auto rep = verify_stratification(load_action_spec(corpus(file)).action);
    o.require(rep.ok(), file + ": " + (rep.ok() ? "" : rep.violations.front().kind + " violation"));
  }
  auto rep = verify_stratification(TorusAction::single({r1(-1), r1(0), r1(2)}));
  std::vector<RationalVector> betas;
  for (const auto& b : rep.betas) betas.push_back(b.beta);
  o.require(std::set<RationalVector>(betas.begin(), betas.end()) == std::set<RationalVector>{r1(0), r1(-1), r1(2)},
            "index set differs from {0,-1,2}");
  o.require(rep.supports.size() == 7, "expected 7 supports");
  std::multiset<std::size_t> sizes;
  for (std::size_t k = 0; k < rep.betas.size(); ++k) sizes.insert(rep.members(k).size());
  o.require(sizes == std::multiset<std::size_t>{5, 1, 1}, "partition is not 5/1/1");
}

void c8(Outcome& o) {
  auto spec = load_action_spec(corpus("external_toy.json"));
  const auto& e = *spec.external;
  auto rep = verify_external_change(spec.action, e.m_lambda, e.m_mu, e.n, e.epsilon);
  o.require(rep.lambda_ok, "check (1) fails");
  o.require(rep.mu_ok, "check (2) fails");
  auto bad = verify_external_change(spec.action, e.m_lambda, e.m_mu, e.n, e.epsilon,
                                    RationalVector{Rational(0), Rational(0), Rational(e.n + rep.r_lambda + 1)});
  o.require(!bad.lambda_ok, "mis-twisted control passes");
}

void c9(Outcome& o) {
  auto a = load_action_spec(corpus("sec7_1.json")).action;
  auto cc = wall_chamber_decomposition(a);
  SupportClassifier sc(a);
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-3000, 3000);
  int pairs = 0;
  while (pairs < 100) {
    RationalVector x = q2(d(rng), 1000, d(rng), 1000), y = q2(d(rng), 1000, d(rng), 1000);
    auto lx = cc.locate(x), ly = cc.locate(y);
    if (!lx || !ly || *lx != *ly || cc.faces[*lx].dim != 2) continue;
    o.require(git_class(a, x) == git_class(a, y), "same-chamber twists give different families");
    ++pairs;
  }
  auto ch = cc.chambers();
  o.require(ch.size() > 1, "only one chamber");
  for (std::size_t i = 0; i < ch.size(); ++i)
    for (std::size_t j = i + 1; j < ch.size(); ++j)
      o.require(!(git_class(a, cc.faces[ch[i]].sample) == git_class(a, cc.faces[ch[j]].sample)), "distinct chambers share a family");
}

void c10(Outcome& o) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  std::vector<Rational> grid;
  for (int i = -10; i <= 10; ++i) grid.push_back(make_rational(i, 2));
  const std::vector<std::pair<std::string, std::vector<OneParamSubgroup>>> runs{
      {"H", {OneParamSubgroup::from_ints({1, 0}), OneParamSubgroup::from_ints({5, -1}), OneParamSubgroup::from_ints({2, -3})}},
      {"H_b0", {OneParamSubgroup::from_ints({1, 0}), OneParamSubgroup::from_ints({1, 1}), OneParamSubgroup::from_ints({-1, 3})}}};
  int decided = 0, stable = 0, grid_points = 0;
  for (const auto& [gname, lambdas] : runs) {
    const auto& g = spec.group(gname);
    const std::vector<Rational> cs = g.u_params() == 2 ? grid : std::vector<Rational>{Rational(0)};
    for (const auto& chi : {v2(0, 0), v2(-1, 0), q2(-3, 2, -1, 2)}) {
      auto a = spec.action.with_twist(chi);
      for (const auto& l : lambdas)
        for (const auto& e : spec.explicit_points) {
          auto ux = orbit_point(e.point, g);
          auto u = uhat_stable_explicit(e.point, a, g, l);
          const std::string where = gname + " " + e.name + " lambda " + to_string(l.cochar());
          o.require(u.verdict != SweepVerdict::Undecided, where + ": undecided");
          if (u.verdict == SweepVerdict::Undecided) continue;
          ++decided;
          if (u.verdict == SweepVerdict::Stable) ++stable;
          if (u.verdict == SweepVerdict::Unstable) {
            o.require(u.witness.has_value(), where + ": unstable without witness");
            if (u.witness) {
              auto s = support_at(ux, u.witness->first, u.witness->second);
              o.require(s && !gm_stable_support(a, l, *s), where + ": witness is stable");
            }
          }
          for (const auto& b : grid)
            for (const auto& c : cs) {
              auto s = support_at(ux, b, c);
              ++grid_points;
              if (u.verdict == SweepVerdict::Stable) o.require(s && gm_stable_support(a, l, *s), where + ": grid finds an unstable point");
            }
        }
    }
  }
  o.require(decided > 0 && stable > 0 && stable < decided, "sweeps not mixed");
  o.info = std::to_string(stable) + " stable / " + std::to_string(decided - stable) + " unstable sweeps, " + std::to_string(grid_points) + " grid evaluations";
}

void c11(Outcome& o) {
  for (const auto& file : kCorpus) {
    auto spec = load_action_spec(corpus(file));
    const auto& a = spec.action;
    std::vector<OneParamSubgroup> lambdas;
    if (a.rank() == 1) lambdas = {OneParamSubgroup::from_ints({1}), OneParamSubgroup::from_ints({-1})};
    else lambdas = {OneParamSubgroup::from_ints({1, 0}), OneParamSubgroup::from_ints({2, -1}), OneParamSubgroup::from_ints({5, -1}),
                    OneParamSubgroup::from_ints({-1, 3})};
    for (const auto& l : lambdas)
      for (long n : {2L, 3L, 7L}) {
        auto ln = l.scaled(n);
        o.require(x_min(a, l).per_factor == x_min(a, ln).per_factor, file + ": x_min changes under scaling");
        for (const auto& s : a.all_supports())
          o.require(gm_stable_support(a, l, s) == gm_stable_support(a, ln, s), file + ": G_m stability changes under scaling");
        try {
          auto r = adapted_region(a, l), rn = adapted_region(a, ln);
          o.require(rn.lower == r.lower * n && rn.upper == r.upper * n, file + ": adapted slab changes under scaling");
        } catch (const Error& e) {
          bool also = false;
          try {
            adapted_region(a, ln);
          } catch (const Error&) {
            also = true;
          }
          o.require(also, file + ": adapted region exists for one scale only");
        }
        for (const auto& e : spec.explicit_points) {
          const auto& g = spec.group();
          o.require(uhat_stable_explicit(e.point, a, g, l).verdict == uhat_stable_explicit(e.point, a, g, ln).verdict,
                    file + ": sweep verdict changes under scaling");
        }
      }

    // Reverse the coordinates inside every factor.
    auto fw = a.factor_weights();
    for (auto& f : fw) std::reverse(f.begin(), f.end());
    TorusAction p(fw, a.twist(), a.ip());
    auto map = [&](const SupportPoint& s) {
      std::vector<std::size_t> idx;
      for (auto i : s.indices()) {
        const auto& block = a.factor_partition()[a.factor_of(i)];
        idx.push_back(block.front() + block.back() - i);
      }
      std::sort(idx.begin(), idx.end());
      return SupportPoint(std::move(idx));
    };
    auto map_family = [&](const std::vector<SupportPoint>& f) {
      std::vector<SupportPoint> out;
      for (const auto& s : f) out.push_back(map(s));
      std::sort(out.begin(), out.end());
      return out;
    };
    for (const auto& s : a.all_supports()) {
      o.require(torus_status(a, s) == torus_status(p, map(s)), file + ": status changes under permutation");
      o.require(destabilising_beta(a, s).beta == destabilising_beta(p, map(s)).beta, file + ": beta changes under permutation");
    }
    for (const auto& l : lambdas) o.require(map(x_min(a, l).min_support()) == x_min(p, l).min_support(), file + ": x_min under permutation");

    auto s1 = verify_stratification(a), s2 = verify_stratification(p);
    o.require(s1.betas.size() == s2.betas.size(), file + ": index set size under permutation");
    for (std::size_t k = 0; k < s1.betas.size() && k < s2.betas.size(); ++k) {
      o.require(s1.betas[k].beta == s2.betas[k].beta, file + ": index set under permutation");
      o.require(map_family(s1.members(k)) == s2.members(k), file + ": strata under permutation");
    }
    if (a.rank() <= 2) {
      auto c1 = wall_chamber_decomposition(a), c2 = wall_chamber_decomposition(p);
      o.require(c1.faces.size() == c2.faces.size() && c1.walls.size() == c2.walls.size(), file + ": complex size under permutation");
      for (const auto& f : c1.faces) {
        auto at = c2.locate(f.sample);
        o.require(at && map_family(f.family.semistable) == c2.faces[*at].family.semistable, file + ": chamber families under permutation");
      }
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "weights -1,0,2: walls {-1,0,2} and chambers (-1,0), (0,2)", 1.0, c1},
      {2, "Segre weight hull is a hexagon matching the Minkowski-sum oracle", 1.0, c2},
      {3, "admissible cone is two strict halfspaces, strictly containing the Weyl chamber", 5.0, c3},
      {4, "b=0 variant: larger cone, several fan pieces, no universal 1PS", 5.0, c4},
      {5, "Wolfe equals face enumeration on 200 random point sets", 30.0, c5},
      {6, "Hilbert-Mumford, mu and min-norm agree on every corpus support", 10.0, c6},
      {7, "stratification verified on the corpus; weights -1,0,2 give {0,-1,2} split 5/1/1", 30.0, c7},
      {8, "external grading change passes both checks; mis-twisted control fails", 10.0, c8},
      {9, "twists in one chamber share a family; chambers have distinct families", 30.0, c9},
      {10, "U-hat sweep agrees with the 21x21 parameter grid", 60.0, c10},
      {11, "scale and permutation invariance on the corpus", 60.0, c11},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.limit_s) {
      o.ok = false;
      o.note = "over the time limit";
    }
    if (!o.ok) ++failed;
    std::printf("[%s] %2d  %s  (%.2f s, limit %.0f s)", o.ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs, c.limit_s);
    if (!o.info.empty()) std::printf("  [%s]", o.info.c_str());
    if (!o.ok) std::printf("  -- %s", o.note.c_str());
    std::printf("\n");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
