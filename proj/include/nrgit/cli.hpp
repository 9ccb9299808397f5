#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nrgit/io.hpp"
#include "nrgit/strata.hpp"
#include "nrgit/svg.hpp"
#include "nrgit/vgit.hpp"

namespace nrgit::cli {

// std::map-backed, so keys come out sorted.
using Report = nlohmann::json;

enum Exit { Ok = 0, Failure = 1, Invalid = 2, Undecided = 3 };

namespace enc {

inline Report q(const Rational& r) { return to_string(r); }

inline Report vec(const RationalVector& v) {
  Report out = Report::array();
  for (const auto& x : v) out.push_back(q(x));
  return out;
}

inline Report support(const SupportPoint& s) { return s.indices(); }

inline Report family(const std::vector<SupportPoint>& f) {
  Report out = Report::array();
  for (const auto& s : f) out.push_back(support(s));
  return out;
}

inline Report ops(const std::optional<OneParamSubgroup>& l) { return l ? vec(l->cochar()) : Report(nullptr); }

inline Report cone(const Cone& c) {
  Report hs = Report::array();
  for (const auto& h : c.halfspaces()) hs.push_back({{"normal", vec(h.normal)}, {"strict", h.strict}});
  return hs;
}

inline Report xmin(const XMin& m) {
  return {{"per_factor", m.per_factor}, {"min_weight", q(m.min_weight)}};
}

inline Report beta(const BetaIndex& b) {
  return {{"beta", vec(b.beta)}, {"norm_sq", q(b.norm_sq)}, {"lambda_beta", ops(b.lambda_beta)},
          {"generating_support", support(b.generating_support)}};
}

inline Report witness(const std::optional<ParamPoint>& w) {
  if (!w) return nullptr;
  return Report::array({q(w->first), q(w->second)});
}

}  // namespace enc

struct Options {
  std::string input, output, epsilon, twist, point, lambda, group, overlays;
  bool strict = false;
};

struct Context {
  ActionSpec spec;
  TorusAction action;
  Options opt;
  bool undecided = false;

  OneParamSubgroup lambda() const {
    if (opt.lambda.empty()) throw Error(ErrorCode::Validation, "--lambda: required by this subcommand");
    RationalVector v = parse_rational_vector(opt.lambda);
    if (v.dim() != action.rank()) throw Error(ErrorCode::DimensionMismatch, "--lambda: length differs from rank");
    if (!v.is_integral() || v.is_zero()) throw Error(ErrorCode::Validation, "--lambda: must be a nonzero integral cocharacter");
    return OneParamSubgroup(v);
  }
  std::optional<Rational> epsilon() const {
    if (opt.epsilon.empty()) return std::nullopt;
    return parse_rational(opt.epsilon);
  }
  const GroupSpec& group() const { return spec.group(opt.group); }
  std::string group_name() const { return opt.group.empty() ? spec.default_group : opt.group; }
};

namespace detail {

inline bool selects_all(const Options& o) { return o.point.empty() || o.point == "all"; }

struct Selected {
  std::string name;
  SupportPoint support;
};

/// Supports named by --point: every valid support for "all", otherwise the
/// named support (or the support of a named explicit point).
inline std::vector<Selected> selected_supports(const Context& c) {
  std::vector<Selected> out;
  if (selects_all(c.opt)) {
    for (auto& s : c.action.all_supports()) out.push_back({"", s});
    return out;
  }
  for (const auto& p : c.spec.supports)
    if (p.name == c.opt.point) return {{p.name, p.support}};
  for (const auto& p : c.spec.explicit_points)
    if (p.name == c.opt.point) return {{p.name, generic_support(p.point)}};
  throw Error(ErrorCode::Validation, "--point: no point named '" + c.opt.point + "'");
}

inline std::vector<NamedExplicit> selected_explicit(const Context& c) {
  if (selects_all(c.opt)) return c.spec.explicit_points;
  for (const auto& p : c.spec.explicit_points)
    if (p.name == c.opt.point) return {p};
  throw Error(ErrorCode::Validation, "--point: no explicit point named '" + c.opt.point + "'");
}

inline Report header(const Context& c, const std::string& command) {
  return {{"command", command}, {"action", c.spec.name}, {"twist", enc::vec(c.action.twist())}};
}

}  // namespace detail

inline Report cmd_stability(Context& c) {
  Report r = detail::header(c, "stability");
  Report pts = Report::array();
  std::vector<SupportPoint> semistable;
  for (const auto& [name, s] : detail::selected_supports(c)) {
    Destabilising d = destabilising_beta(c.action, s);
    TorusStatus st = torus_status(c.action, s);
    if (st != TorusStatus::Unstable) semistable.push_back(s);
    Report e{{"support", enc::support(s)}, {"status", std::string(to_string(st))}, {"beta", enc::vec(d.beta)},
             {"norm_sq", enc::q(d.norm_sq)}, {"lambda_beta", enc::ops(d.lambda_beta)}};
    if (!name.empty()) e["name"] = name;
    pts.push_back(std::move(e));
  }
  r["points"] = std::move(pts);
  r["semistable"] = enc::family(semistable);
  return r;
}

inline Report cmd_beta(Context& c) {
  Report r = detail::header(c, "beta");
  Report bs = Report::array();
  for (const auto& b : beta_index_set(c.action)) bs.push_back(enc::beta(b));
  r["betas"] = std::move(bs);
  return r;
}

inline Report cmd_chambers(Context& c) {
  Report r = detail::header(c, "chambers");
  ChamberComplex cc = wall_chamber_decomposition(c.action);
  r["rank"] = cc.rank;
  Report verts = Report::array();
  for (const auto& v : cc.region.vertices()) verts.push_back(enc::vec(v));
  r["effective_vertices"] = std::move(verts);

  Report walls = Report::array();
  for (const auto& w : cc.walls) {
    Report e{{"cells", w.cells}};
    if (w.point) e["point"] = enc::vec(*w.point);
    if (w.line) e["line"] = {{"normal", enc::vec(w.line->normal)}, {"offset", enc::q(w.line->offset)}};
    walls.push_back(std::move(e));
  }
  r["walls"] = std::move(walls);

  Report faces = Report::array();
  for (std::size_t i = 0; i < cc.faces.size(); ++i) {
    const auto& f = cc.faces[i];
    std::vector<int> signs;
    for (const auto& w : cc.walls)
      signs.push_back(w.point ? sign(f.sample[0] - (*w.point)[0]) : w.line->side(f.sample));
    faces.push_back({{"id", i}, {"dim", f.dim}, {"sample", enc::vec(f.sample)}, {"sign_vector", signs},
                     {"semistable", enc::family(f.family.semistable)}, {"stable", enc::family(f.family.stable)}});
  }
  r["faces"] = std::move(faces);
  Report inc = Report::array();
  for (const auto& [lo, hi] : cc.incidences) inc.push_back({lo, hi});
  r["incidences"] = std::move(inc);
  r["chambers"] = cc.chambers();
  return r;
}

inline Report cmd_strata(Context& c) {
  Report r = detail::header(c, "strata");
  StratificationReport rep = verify_stratification(c.action);
  Report bs = Report::array(), strata = Report::array(), labels = Report::array(), viol = Report::array();
  for (std::size_t k = 0; k < rep.betas.size(); ++k) {
    bs.push_back(enc::beta(rep.betas[k]));
    strata.push_back({{"beta_index", k}, {"supports", enc::family(rep.members(k))}});
  }
  for (std::size_t i = 0; i < rep.supports.size(); ++i) {
    StratumLabel l = stratum_of(c.action, rep.supports[i]);
    labels.push_back({{"support", enc::support(rep.supports[i])}, {"beta_index", rep.stratum[i]}, {"in_Z", l.in_Z},
                      {"in_Y", l.in_Y}, {"in_Yss", l.in_Yss}});
  }
  for (const auto& v : rep.violations)
    viol.push_back({{"kind", v.kind}, {"support", enc::support(v.support)}, {"detail", v.detail}});
  r["betas"] = std::move(bs);
  r["strata"] = std::move(strata);
  r["labels"] = std::move(labels);
  r["violations"] = std::move(viol);
  r["ok"] = rep.ok();
  return r;
}

inline Report cmd_admissible(Context& c) {
  Report r = detail::header(c, "admissible-cone");
  AdmissibleCone ac = admissible_cone(c.group(), c.action.rank());
  r["group"] = c.group_name();
  r["full_space"] = ac.full_space;
  r["halfspaces"] = enc::cone(ac.cone);
  auto p = ac.cone.interior_point();
  r["interior_sample"] = p ? enc::vec(*p) : Report(nullptr);
  return r;
}

inline Report cmd_adapted(Context& c) {
  Report r = detail::header(c, "adapted");
  OneParamSubgroup l = c.lambda();
  AdaptedRegion ar = adapted_region(c.action, l, c.epsilon());
  r["lambda"] = enc::vec(l.cochar());
  r["lower"] = enc::q(ar.lower);
  r["upper"] = enc::q(ar.upper);
  r["epsilon"] = enc::q(ar.epsilon);
  r["x_min"] = enc::xmin(x_min(c.action, l));
  r["twist_adapted"] = ar.is_adapted(c.action.twist());
  r["twist_well_adapted"] = ar.is_well_adapted(c.action.twist());
  return r;
}

inline Report cmd_fan(Context& c) {
  Report r = detail::header(c, "fan");
  AdmissibleCone ac = admissible_cone(c.group(), c.action.rank());
  Universal1PS u = universal_1ps(c.action, ac.cone);
  Report pieces = Report::array();
  for (const auto& p : u.pieces) {
    Report fs = Report::array();
    for (const auto& s : p.face_samples) fs.push_back(enc::vec(s.cochar()));
    pieces.push_back({{"dim", p.dim}, {"sample", enc::vec(p.sample.cochar())}, {"face_samples", std::move(fs)},
                      {"x_min", enc::xmin(p.label)}});
  }
  r["group"] = c.group_name();
  r["cone"] = enc::cone(ac.cone);
  r["pieces"] = std::move(pieces);
  r["universal"] = u.unique ? enc::vec(u.unique->sample.cochar()) : Report(nullptr);
  return r;
}

inline Report verdict_entry(Context& c, const std::string& name, const SweepResult& s) {
  if (s.verdict == SweepVerdict::Undecided) c.undecided = true;
  Report e{{"name", name}, {"verdict", std::string(to_string(s.verdict))}, {"witness", enc::witness(s.witness)}};
  if (s.support) e["support"] = enc::support(*s.support);
  return e;
}

inline Report cmd_usweep(Context& c) {
  Report r = detail::header(c, "usweep");
  OneParamSubgroup l = c.lambda();
  const GroupSpec& g = c.group();
  r["group"] = c.group_name();
  r["lambda"] = enc::vec(l.cochar());
  r["lambda_admissible"] = admissible_cone(g, c.action.rank()).cone.contains(l.cochar());
  Report pts = Report::array();
  for (const auto& p : detail::selected_explicit(c)) pts.push_back(verdict_entry(c, p.name, uhat_stable_explicit(p.point, c.action, g, l)));
  r["points"] = std::move(pts);
  return r;
}

inline Report cmd_hstable(Context& c) {
  Report r = detail::header(c, "hstable");
  const GroupSpec& g = c.group();
  r["group"] = c.group_name();
  Report pts = Report::array();
  for (const auto& p : detail::selected_explicit(c)) {
    Report e = verdict_entry(c, p.name, h_stable_explicit(p.point, c.action, g));
    StabDimension d = stab_u_dimension(p.point, g);
    if (d == StabDimension::Undecided) c.undecided = true;
    e["stab_u_dimension"] = std::string(to_string(d));
    pts.push_back(std::move(e));
  }
  r["points"] = std::move(pts);
  return r;
}

inline Report cmd_external(Context& c) {
  if (!c.spec.external) throw Error(ErrorCode::Validation, "external: input has no 'external' block");
  const ExternalData& e = *c.spec.external;
  Rational eps = c.epsilon().value_or(e.epsilon);
  ExternalChangeReport rep = verify_external_change(c.action, e.m_lambda, e.m_mu, e.n, eps);
  Report r = detail::header(c, "external-equiv");
  r["N"] = e.n;
  r["epsilon"] = enc::q(eps);
  r["r_lambda"] = rep.r_lambda;
  r["r_mu"] = rep.r_mu;
  r["lambda_ok"] = rep.lambda_ok;
  r["mu_ok"] = rep.mu_ok;
  r["passed"] = rep.passed();
  r["families"] = {{"double_lambda", enc::family(rep.double_lambda)}, {"single_lambda", enc::family(rep.single_lambda)},
                   {"double_mu", enc::family(rep.double_mu)}, {"single_mu", enc::family(rep.single_mu)}};
  return r;
}

inline std::string cmd_svg(Context& c) {
  if (c.action.rank() != 2) throw Error(ErrorCode::RankUnsupported, "svg: rank must be 2");
  std::string want = c.opt.overlays.empty() ? "cone,walls,beta" : c.opt.overlays;
  std::vector<std::string> parts;
  std::stringstream ss(want);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  SvgOverlays ov;
  for (const auto& p : parts) {
    if (p == "cone") {
      ov.cone = admissible_cone(c.group(), 2).cone;
    } else if (p == "slab") {
      ov.slab = adapted_region(c.action, c.lambda(), c.epsilon());
    } else if (p == "walls") {
      for (const auto& w : wall_chamber_decomposition(c.action).walls) ov.walls.push_back(*w.line);
    } else if (p == "beta") {
      for (const auto& b : beta_index_set(c.action)) ov.betas.push_back(b.beta);
    } else if (p != "none") {
      throw Error(ErrorCode::Validation, "--overlays: unknown overlay '" + p + "'");
    }
  }
  if (!c.opt.lambda.empty() && std::find(parts.begin(), parts.end(), "slab") == parts.end())
    ov.slab = adapted_region(c.action, c.lambda(), c.epsilon());
  return svg_weight_diagram(c.action, ov);
}

/// Parses argv, runs one subcommand and writes its output. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact stability, variation and stratification computations for torus actions on products of projective spaces."};
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"stability", "Torus status and closest point of each selected support"},
      {"beta", "Index set of closest points over all supports"},
      {"chambers", "Walls, chambers and support families on the twist space"},
      {"strata", "Stratification by closest point, with its verification"},
      {"admissible-cone", "Cone of cocharacters positive on the adjoint weights"},
      {"adapted", "Adapted twist slab and minimal weight space for --lambda"},
      {"fan", "Pieces of the admissible cone with constant minimal weight space"},
      {"usweep", "Stability of U-orbits of explicit points for --lambda"},
      {"hstable", "Stability of explicit points for U with the torus"},
      {"external-equiv", "Check the external grading change against its double extension"},
      {"svg", "Weight diagram with overlays (rank 2)"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input", opt.input, "Action spec (JSON)")->required();
    sub->add_option("--output", opt.output, "Output file (default stdout)");
    sub->add_option("--epsilon", opt.epsilon, "Rational offset");
    sub->add_option("--twist", opt.twist, "Twist \"q1,q2\", replacing the one in the input");
    sub->add_option("--point", opt.point, "Named point, or 'all'");
    sub->add_option("--lambda", opt.lambda, "Cocharacter \"a,b\"");
    sub->add_option("--group", opt.group, "Group name from the input");
    sub->add_flag("--strict", opt.strict, "Exit 3 when a result is Undecided");
    if (name == "svg") sub->add_option("--overlays", opt.overlays, "Comma list of cone, slab, walls, beta, none");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : Invalid;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    Context c{load_action_spec(opt.input), {}, opt};
    c.action = c.spec.action;
    if (!opt.twist.empty()) {
      RationalVector t = parse_rational_vector(opt.twist);
      if (t.dim() != c.action.rank()) throw Error(ErrorCode::DimensionMismatch, "--twist: length differs from rank");
      c.action = c.action.with_twist(t);
    }
    std::string text;
    if (command == "svg") {
      text = cmd_svg(c);
    } else {
      Report r;
      if (command == "stability") r = cmd_stability(c);
      else if (command == "beta") r = cmd_beta(c);
      else if (command == "chambers") r = cmd_chambers(c);
      else if (command == "strata") r = cmd_strata(c);
      else if (command == "admissible-cone") r = cmd_admissible(c);
      else if (command == "adapted") r = cmd_adapted(c);
      else if (command == "fan") r = cmd_fan(c);
      else if (command == "usweep") r = cmd_usweep(c);
      else if (command == "hstable") r = cmd_hstable(c);
      else r = cmd_external(c);
      r["undecided"] = c.undecided;
      text = r.dump(2) + "\n";
    }
    if (opt.output.empty() || opt.output == "-") {
      out << text;
    } else {
      std::ofstream f(opt.output, std::ios::binary);
      if (!f) throw Error(ErrorCode::Validation, "--output: cannot open '" + opt.output + "'");
      f << text;
    }
    if (opt.strict && c.undecided) {
      err << "undecided result under --strict\n";
      return Undecided;
    }
    return Ok;
  } catch (const Error& e) {
    err << command << ": " << e.what() << "\n";
    return Invalid;
  } catch (const std::exception& e) {
    err << command << ": " << e.what() << "\n";
    return Failure;
  }
}

}  // namespace nrgit::cli
