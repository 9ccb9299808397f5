#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "nrgit/io.hpp"
#include "nrgit/stability.hpp"

using namespace nrgit;

namespace {

std::string corpus(const std::string& name) { return std::string(NRGIT_CORPUS_DIR) + "/" + name; }

RationalVector r1(long a) { return RationalVector::from_ints({a}); }
RationalVector v2(long a, long b) { return RationalVector::from_ints({a, b}); }

TorusAction ex17() { return TorusAction::single({r1(-1), r1(0), r1(2)}); }

OneParamSubgroup l1(long a) { return OneParamSubgroup::from_ints({a}); }
OneParamSubgroup l2(long a, long b) { return OneParamSubgroup::from_ints({a, b}); }

// Actual support of u·x at a parameter value.
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

std::vector<Rational> grid_values() {
  std::vector<Rational> g;
  for (int i = -10; i <= 10; ++i) g.emplace_back(i, 2);
  return g;
}

}  // namespace

TEST(HilbertMumford, MuExamples) {
  auto a = ex17();
  EXPECT_EQ(hm_mu(a, a.full_support(), l1(1)), 1);
  EXPECT_EQ(hm_mu(a, SupportPoint{2}, l1(1)), -2);
  EXPECT_EQ(hm_mu(a, SupportPoint{2}, l1(-1)), 2);
  HMValue m = hm_M(a, a.full_support(), l1(1));
  EXPECT_EQ(m.mu, 1);
  EXPECT_EQ(m.norm_sq, 1);
  EXPECT_THROW(hm_mu(a, SupportPoint{0}, l2(1, 0)), Error);
}

TEST(HilbertMumford, MValueOrdering) {
  EXPECT_EQ((HMValue{-2, 4}), (HMValue{-1, 1}));
  EXPECT_LT((HMValue{-2, 4}), (HMValue{1, 1}));
  EXPECT_LT((HMValue{-2, 1}), (HMValue{-1, 1}));
  EXPECT_LT((HMValue{1, 4}), (HMValue{1, 1}));
  EXPECT_EQ((HMValue{0, 4}), (HMValue{0, 1}));
  EXPECT_GT((HMValue{0, 4}), (HMValue{-1, 100}));
  auto a = ex17();
  EXPECT_EQ(hm_M(a, SupportPoint{2}, l1(2)), hm_M(a, SupportPoint{2}, l1(1)));
}

TEST(OneParam, Validation) {
  EXPECT_THROW(OneParamSubgroup(RationalVector{Rational(1, 2)}), Error);
  EXPECT_THROW(OneParamSubgroup::from_ints({0, 0}), Error);
  EXPECT_EQ(OneParamSubgroup::primitive_along(RationalVector{Rational(3, 2), Rational(3, 2)}), l2(1, 1));
  EXPECT_FALSE(l2(2, 4).is_primitive());
}

TEST(TorusStatus, Examples) {
  auto a = ex17();
  EXPECT_EQ(torus_status(a, SupportPoint{0, 2}), TorusStatus::Stable);
  EXPECT_EQ(torus_status(a, SupportPoint{1}), TorusStatus::StrictlySemistable);
  EXPECT_EQ(torus_status(a, SupportPoint{2}), TorusStatus::Unstable);

  // Lower-dimensional hull through the origin: not stable under the ambient convention.
  auto b = TorusAction::single({v2(-1, 0), v2(1, 0), v2(0, 1)});
  EXPECT_EQ(torus_status(b, SupportPoint{0, 1}), TorusStatus::StrictlySemistable);
  EXPECT_EQ(torus_status(b, SupportPoint{0, 1}, InteriorMode::Relative), TorusStatus::Stable);
}

TEST(Destabilising, Examples) {
  auto a = TorusAction::single({v2(1, 2), v2(2, 1), v2(2, 0), v2(-1, -2)});
  auto d = destabilising_beta(a, SupportPoint{0, 1});
  EXPECT_EQ(d.beta, (RationalVector{Rational(3, 2), Rational(3, 2)}));
  ASSERT_TRUE(d.lambda_beta);
  EXPECT_EQ(*d.lambda_beta, l2(1, 1));
  EXPECT_EQ(d.norm_sq, Rational(9, 2));

  auto s = destabilising_beta(a, SupportPoint{2});
  EXPECT_EQ(s.beta, v2(2, 0));
  EXPECT_EQ(*s.lambda_beta, l2(1, 0));

  auto z = destabilising_beta(a, SupportPoint{0, 3});
  EXPECT_TRUE(z.beta.is_zero());
  EXPECT_FALSE(z.lambda_beta);
  EXPECT_THROW(destabilising_beta(a, SupportPoint{0, 3}, true), Error);
  try {
    destabilising_beta(a, SupportPoint{0, 3}, true);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroBeta);
  }
}

TEST(Destabilising, LambdaBetaMinimisesM) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  const auto& a = spec.action;
  for (const auto& s : a.all_supports()) {
    auto d = destabilising_beta(a, s);
    if (!d.lambda_beta) continue;
    HMValue best = hm_M(a, s, *d.lambda_beta);
    EXPECT_LT(best.mu, 0);
    // M is then −‖β‖ under the dual form.
    EXPECT_EQ(best.mu * best.mu, d.norm_sq * best.norm_sq);
    for (const auto& rho : facet_normal_candidates(a.twisted_weights(s))) EXPECT_LE(best, hm_M(a, s, rho));
  }
}

TEST(Consistency, StatusMuAndBetaAgree) {
  for (const char* file : {"ex1_7.json", "sec7_1.json", "external_toy.json"}) {
    auto spec = load_action_spec(corpus(file));
    const auto& a = spec.action;
    for (const auto& s : a.all_supports()) {
      auto w = a.twisted_weights(s);
      bool mu_ok = true;
      for (const auto& rho : facet_normal_candidates(w)) mu_ok = mu_ok && hm_mu(a, s, rho) >= 0;
      bool semistable = torus_status(a, s) != TorusStatus::Unstable;
      EXPECT_EQ(semistable, mu_ok) << file << " " << to_string(s);
      EXPECT_EQ(semistable, destabilising_beta(a, s).beta.is_zero()) << file << " " << to_string(s);
    }
  }
}

TEST(Admissible, HexagonCone) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  auto c = admissible_cone(spec.group("H"), 2);
  EXPECT_FALSE(c.full_space);
  ASSERT_EQ(c.cone.halfspaces().size(), 2u);
  EXPECT_EQ(c.cone.halfspaces()[0].normal, v2(1, -1));
  EXPECT_EQ(c.cone.halfspaces()[1].normal, v2(2, 1));
  EXPECT_TRUE(c.cone.contains(v2(1, -1)));
  EXPECT_FALSE(c.cone.contains(v2(-1, 1)));
  EXPECT_FALSE(c.cone.contains(v2(1, 1)));

  auto b0 = admissible_cone(spec.group("H_b0"), 2);
  EXPECT_TRUE(b0.cone.contains(v2(1, 1)));
  for (int x = -5; x <= 5; ++x)
    for (int y = -5; y <= 5; ++y)
      if (c.cone.contains(v2(x, y))) { EXPECT_TRUE(b0.cone.contains(v2(x, y))); }
}

TEST(Admissible, TrivialAndEmpty) {
  auto full = admissible_cone(GroupSpec::trivial({3}), 2);
  EXPECT_TRUE(full.full_space);
  EXPECT_TRUE(full.cone.contains(v2(-3, 7)));
  try {
    admissible_cone(GroupSpec({v2(1, -1), v2(-1, 1)}, 0, {poly_identity(2)}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyCone);
  }
}

TEST(XMin, Examples) {
  auto a = ex17();
  auto m = x_min(a, l1(1));
  EXPECT_EQ(m.min_support(), SupportPoint{0});
  EXPECT_EQ(m.min_weight, -1);
  auto tie = TorusAction::single({r1(-1), r1(-1), r1(2)});
  EXPECT_EQ(x_min(tie, l1(1)).min_support(), (SupportPoint{0, 1}));

  EXPECT_TRUE(gm_stable_support(a, l1(1), SupportPoint{0, 2}));
  EXPECT_FALSE(gm_stable_support(a, l1(1), SupportPoint{0}));
  EXPECT_FALSE(gm_stable_support(a, l1(1), SupportPoint{1, 2}));
}

TEST(XMin, HexagonMatchesSegreArgmin) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  const auto& a = spec.action;
  for (const auto& l : {l2(1, 0), l2(2, -1), l2(0, 1), l2(-1, -1)}) {
    auto m = x_min(a, l);
    auto seg = a.segre_weights();
    Rational best = dot(l.cochar(), seg[0]);
    for (const auto& w : seg) best = std::min(best, Rational(dot(l.cochar(), w)));
    EXPECT_EQ(m.min_weight, best);
    auto tuples = a.segre_tuples(a.full_support());
    std::vector<std::vector<std::size_t>> arg;
    for (const auto& t : tuples)
      if (dot(l.cochar(), a.segre_weight(t)) == best) arg.push_back(t);
    EXPECT_EQ(m.segre_argmin(a), arg);
  }
  // λ = (1,0) picks the hexagon vertex (−3,−2).
  auto m = x_min(a, l2(1, 0));
  ASSERT_EQ(m.segre_argmin(a).size(), 1u);
  EXPECT_EQ(a.segre_weight(m.segre_argmin(a)[0]), v2(-3, -2));
}

TEST(Adapted, Examples) {
  auto a = ex17();
  auto r = adapted_region(a, l1(1), Rational(1, 10));
  EXPECT_EQ(r.lower, -1);
  EXPECT_EQ(r.upper, 0);
  EXPECT_TRUE(r.is_adapted(RationalVector{Rational(-1, 2)}));
  EXPECT_FALSE(r.is_adapted(r1(0)));
  EXPECT_TRUE(r.is_well_adapted(RationalVector{Rational(-19, 20)}));
  EXPECT_FALSE(r.is_well_adapted(RationalVector{Rational(-9, 10)}));

  auto r2 = adapted_region(a, l1(2));
  EXPECT_EQ(r2.lower, -2);
  EXPECT_EQ(r2.upper, 0);
  EXPECT_EQ(r2.epsilon, Rational(1, 500));
  for (int k = -30; k <= 30; ++k) {
    RationalVector chi{Rational(k, 20)};
    EXPECT_EQ(r.is_adapted(chi), r2.is_adapted(chi));
  }
  EXPECT_THROW(adapted_region(TorusAction::single({r1(3)}), l1(1)), Error);
  EXPECT_THROW(adapted_region(a, l1(1), Rational(1)), Error);
}

TEST(Adapted, TwistedMinimumIsOnlyNegative) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  auto r = adapted_region(spec.action, l2(1, 0));
  for (int x = -8; x <= 8; ++x)
    for (int y = -8; y <= 8; ++y) {
      RationalVector chi{Rational(x, 2), Rational(y, 2)};
      int negative = 0, zero = 0;
      for (const auto& w : spec.action.segre_weights()) {
        Rational t = dot(r.lambda.cochar(), w - chi);
        negative += t < 0;
        zero += t == 0;
      }
      auto m = x_min(spec.action, r.lambda);
      const bool only_min_negative = zero == 0 && negative == static_cast<int>(m.segre_argmin(spec.action).size());
      EXPECT_EQ(r.is_adapted(chi), only_min_negative);
    }
}

TEST(Fan, RankOneAndDegenerate) {
  auto a = ex17();
  auto ray = Cone(1, {Halfspace{r1(1), true}});
  auto fan = cocharacter_fan(a, ray);
  ASSERT_EQ(fan.pieces.size(), 1u);
  EXPECT_TRUE(universal_1ps(a, ray).is_unique());

  auto eq = TorusAction::single({v2(1, 1), v2(1, 1)});
  auto f2 = cocharacter_fan(eq, Cone(2, {Halfspace{v2(1, 0), true}}));
  ASSERT_EQ(f2.pieces.size(), 1u);
  EXPECT_EQ(f2.pieces[0].label.min_support(), (SupportPoint{0, 1}));

  EXPECT_THROW(cocharacter_fan(TorusAction::single({RationalVector::from_ints({1, 0, 0})}), Cone::full(3)), Error);
}

TEST(Fan, TwoPieces) {
  auto a = TorusAction::single({v2(1, 0), v2(0, 1)});
  auto u = universal_1ps(a, Cone(2, {Halfspace{v2(1, 0), true}, Halfspace{v2(0, 1), true}}));
  EXPECT_FALSE(u.is_unique());
  // Two open sectors and the tie ray between them.
  EXPECT_EQ(u.pieces.size(), 3u);
}

TEST(Fan, HexagonGroups) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  const auto& a = spec.action;
  auto h = admissible_cone(spec.group("H"), 2);
  auto b0 = admissible_cone(spec.group("H_b0"), 2);
  auto fh = cocharacter_fan(a, h.cone);
  auto fb = cocharacter_fan(a, b0.cone);
  EXPECT_GE(fh.pieces.size(), 2u);
  EXPECT_GT(fb.pieces.size(), fh.pieces.size());
  EXPECT_FALSE(universal_1ps(a, b0.cone).is_unique());
  for (const auto* fan : {&fh, &fb}) {
    for (std::size_t i = 0; i < fan->pieces.size(); ++i) {
      for (const auto& s : fan->pieces[i].face_samples) EXPECT_EQ(x_min(a, s).per_factor, fan->pieces[i].label.per_factor);
      for (std::size_t j = i + 1; j < fan->pieces.size(); ++j) EXPECT_NE(fan->pieces[i].label.per_factor, fan->pieces[j].label.per_factor);
    }
  }
  // Every lattice point of the cone lies in the piece with its own label.
  for (int x = -6; x <= 6; ++x)
    for (int y = -6; y <= 6; ++y) {
      RationalVector v = v2(x, y);
      if (!b0.cone.contains(v)) continue;
      auto m = x_min(a, OneParamSubgroup::primitive_along(v));
      EXPECT_TRUE(std::any_of(fb.pieces.begin(), fb.pieces.end(), [&](const FanPiece& p) { return p.label.per_factor == m.per_factor; }));
    }
}

TEST(Unipotent, TrivialGroupReducesToSupports) {
  auto a = ex17();
  auto g = GroupSpec::trivial({3});
  auto x = ExplicitPoint::rational({{1, 0, 5}});
  EXPECT_EQ(uhat_stable_explicit(x, a, g, l1(1)).verdict, SweepVerdict::Stable);
  EXPECT_EQ(uhat_stable_explicit(ExplicitPoint::rational({{0, 1, 5}}), a, g, l1(1)).verdict, SweepVerdict::Unstable);
  EXPECT_EQ(uhat_stable_explicit(ExplicitPoint::rational({{1, 0, 0}}), a, g, l1(1)).verdict, SweepVerdict::Unstable);
  for (const auto& s : a.all_supports()) {
    std::vector<Rational> c(3, Rational(0));
    for (auto i : s.indices()) c[i] = 1;
    auto h = h_stable_explicit(ExplicitPoint::rational({c}), a, g);
    auto t = torus_status(a, s);
    SweepVerdict want = t == TorusStatus::Stable               ? SweepVerdict::Stable
                        : t == TorusStatus::StrictlySemistable ? SweepVerdict::StrictlySemistable
                                                               : SweepVerdict::Unstable;
    EXPECT_EQ(h.verdict, want) << to_string(s);
  }
}

TEST(Unipotent, HexagonPointOnAxis) {
  // P(V) alone with λ = (1,0): the orbit of [0:1:0] is [b:1:0] and vanishes in the minimal coordinate at b = 0.
  auto a = TorusAction::single({v2(1, 0), v2(0, 1), v2(-1, -1)});
  auto spec = load_action_spec(corpus("sec7_1.json"));
  GroupSpec g({v2(1, -1), v2(2, 1)}, 2, {spec.group("H").u_matrices()[0]});
  auto x = ExplicitPoint::rational({{0, 1, 0}});
  auto m = x_min(a, l2(1, 0));
  EXPECT_EQ(m.min_support(), SupportPoint{2});
  auto ux = orbit_point(x, g);
  EXPECT_EQ(ux.coords()[0][0], parse_bipoly("b"));
  // Here index 2 is the minimum and is identically zero on the orbit.
  auto r = uhat_stable_explicit(x, a, g, l2(1, 0));
  EXPECT_EQ(r.verdict, SweepVerdict::Unstable);
  ASSERT_TRUE(r.witness);
  // With λ = (−1,0) index 0 is the unique minimum, and its coordinate b vanishes at b = 0.
  EXPECT_EQ(x_min(a, l2(-1, 0)).min_support(), SupportPoint{0});
  auto r2 = uhat_stable_explicit(x, a, g, l2(-1, 0));
  EXPECT_EQ(r2.verdict, SweepVerdict::Unstable);
  ASSERT_TRUE(r2.witness);
  EXPECT_EQ(r2.witness->first, 0);
  // A point whose minimal coordinate is a nonzero constant along the orbit.
  EXPECT_EQ(uhat_stable_explicit(ExplicitPoint::rational({{0, 1, 1}}), a, g, l2(1, 0)).verdict, SweepVerdict::Stable);
}

TEST(Unipotent, UhatStableImpliesGmStableAtIdentity) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  for (const auto& [gname, g] : spec.groups) {
    auto cone = admissible_cone(g, 2).cone;
    for (const auto& l : {l2(1, 0), l2(2, -1), l2(1, -1), l2(3, -1)}) {
      if (!cone.contains(l.cochar())) continue;
      for (const auto& e : spec.explicit_points) {
        auto r = uhat_stable_explicit(e.point, spec.action, g, l);
        ASSERT_NE(r.verdict, SweepVerdict::Undecided);
        if (r.verdict == SweepVerdict::Stable) { EXPECT_TRUE(gm_stable_support(spec.action, l, generic_support(e.point))); }
      }
    }
  }
}

TEST(Unipotent, SweepsAgreeWithParameterGrid) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  const auto grid = grid_values();
  for (const char* gname : {"H", "H_b0"}) {
    const auto& g = spec.group(gname);
    auto l = l2(1, 0);
    for (const RationalVector& chi : {v2(0, 0), v2(-1, 0), RationalVector{Rational(-3, 2), Rational(-1, 2)}}) {
      auto a = spec.action.with_twist(chi);
      for (const auto& e : spec.explicit_points) {
        auto ux = orbit_point(e.point, g);
        auto u = uhat_stable_explicit(e.point, a, g, l);
        auto h = h_stable_explicit(e.point, a, g);
        ASSERT_NE(u.verdict, SweepVerdict::Undecided);
        ASSERT_NE(h.verdict, SweepVerdict::Undecided);
        if (u.witness) { EXPECT_FALSE(gm_stable_support(a, l, *support_at(ux, u.witness->first, u.witness->second))); }
        if (h.witness && h.support) {
          EXPECT_TRUE(support_at(ux, h.witness->first, h.witness->second)->subset_of(*h.support));
        }
        for (const auto& b : grid)
          for (const auto& c : g.u_params() == 2 ? grid : std::vector<Rational>{Rational(0)}) {
            auto s = *support_at(ux, b, c);
            if (u.verdict == SweepVerdict::Stable) { EXPECT_TRUE(gm_stable_support(a, l, s)) << e.name; }
            auto t = torus_status(a, s);
            if (h.verdict == SweepVerdict::Stable) { EXPECT_EQ(t, TorusStatus::Stable) << e.name; }
            if (h.verdict == SweepVerdict::StrictlySemistable) { EXPECT_NE(t, TorusStatus::Unstable) << e.name; }
          }
      }
    }
  }
}

TEST(Unipotent, HStableFoundAtAdaptedTwist) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  auto a = spec.action.with_twist(v2(-1, 0));
  const auto* x = &spec.explicit_points[0].point;
  EXPECT_EQ(h_stable_explicit(*x, a, spec.group("H")).verdict, SweepVerdict::Stable);
  EXPECT_EQ(h_stable_explicit(*x, spec.action, spec.group("H")).verdict, SweepVerdict::Unstable);
}

TEST(Unipotent, StabiliserDimension) {
  auto spec = load_action_spec(corpus("sec7_1.json"));
  GroupSpec g({v2(1, -1), v2(2, 1)}, 2, {spec.group("H").u_matrices()[0]});
  EXPECT_EQ(stab_u_dimension(ExplicitPoint::rational({{1, 0, 0}}), g), StabDimension::Positive);
  EXPECT_EQ(stab_u_dimension(ExplicitPoint::rational({{0, 1, 0}}), g), StabDimension::Positive);
  EXPECT_EQ(stab_u_dimension(ExplicitPoint::rational({{0, 1, 1}}), g), StabDimension::Positive);
  const auto& h = spec.group("H");
  for (const auto& e : spec.explicit_points) {
    if (e.name != "x_generic") continue;
    EXPECT_EQ(stab_u_dimension(e.point, h), StabDimension::Zero);
  }
  EXPECT_EQ(stab_u_dimension(ExplicitPoint::rational({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), h), StabDimension::Zero);
  EXPECT_EQ(stab_u_dimension(ExplicitPoint::rational({{1, 0, 0}, {1, 0, 0}, {0, 1, 1}}), h), StabDimension::Positive);
}

TEST(Invariance, ScaleAndPermutation) {
  for (const char* file : {"ex1_7.json", "sec7_1.json", "external_toy.json"}) {
    auto spec = load_action_spec(corpus(file));
    const auto& a = spec.action;
    std::vector<OneParamSubgroup> lambdas;
    if (a.rank() == 1) lambdas = {l1(1), l1(-1)};
    else lambdas = {l2(1, 0), l2(2, -1), l2(1, 1), l2(-1, 3)};
    for (const auto& l : lambdas) {
      for (long n : {2L, 3L, 7L}) {
        auto ln = l.scaled(n);
        EXPECT_EQ(x_min(a, l).per_factor, x_min(a, ln).per_factor);
        try {
          auto r = adapted_region(a, l), rn = adapted_region(a, ln);
          for (int k = -40; k <= 40; ++k) {
            RationalVector chi = a.rank() == 1 ? RationalVector{Rational(k, 8)} : RationalVector{Rational(k, 8), Rational(-k, 16)};
            EXPECT_EQ(r.is_adapted(chi), rn.is_adapted(chi));
          }
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::NoAdaptedTwist);
          EXPECT_THROW(adapted_region(a, ln), Error);
        }
      }
    }
    // Reverse the coordinate order inside every factor.
    std::vector<std::vector<RationalVector>> fw = a.factor_weights();
    for (auto& f : fw) std::reverse(f.begin(), f.end());
    TorusAction p(fw, a.twist(), a.ip());
    auto map = [&](const SupportPoint& s) {
      std::vector<std::size_t> idx;
      for (auto i : s.indices()) {
        const auto& block = a.factor_partition()[a.factor_of(i)];
        std::size_t k = i - block.front();
        idx.push_back(block.front() + block.size() - 1 - k);
      }
      std::sort(idx.begin(), idx.end());
      return SupportPoint(std::move(idx));
    };
    for (const auto& s : a.all_supports()) {
      auto ps = map(s);
      EXPECT_EQ(torus_status(a, s), torus_status(p, ps));
      EXPECT_EQ(destabilising_beta(a, s).beta, destabilising_beta(p, ps).beta);
    }
    for (const auto& l : lambdas) EXPECT_EQ(map(x_min(a, l).min_support()), x_min(p, l).min_support());
  }
}
