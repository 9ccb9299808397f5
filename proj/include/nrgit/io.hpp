#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nrgit/action.hpp"

namespace nrgit {

using Json = nlohmann::ordered_json;

struct NamedSupport {
  std::string name;
  SupportPoint support;
};

struct NamedExplicit {
  std::string name;
  ExplicitPoint point;
};

struct ExternalData {
  std::vector<long> m_lambda, m_mu;
  long n = 0;
  Rational epsilon;
};

/// Everything a corpus file describes, validated.
struct ActionSpec {
  std::string name;
  TorusAction action;
  std::map<std::string, GroupSpec> groups;
  std::string default_group;
  std::vector<NamedSupport> supports;
  std::vector<NamedExplicit> explicit_points;
  std::optional<ExternalData> external;

  const GroupSpec& group(const std::string& key = "") const {
    const std::string& k = key.empty() ? default_group : key;
    auto it = groups.find(k);
    if (it == groups.end()) throw Error(ErrorCode::Validation, "group '" + k + "' not defined");
    return it->second;
  }
};

namespace detail {

[[noreturn]] inline void field_error(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::Validation, field + ": " + why);
}

inline Rational json_rational(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      field_error(field, e.what());
    }
  }
  field_error(field, "expected an integer or a rational string");
}

inline long json_long(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  return j.get<long>();
}

inline RationalVector json_vector(const Json& j, const std::string& field) {
  if (!j.is_array()) field_error(field, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_rational(j[i], field + "[" + std::to_string(i) + "]"));
  return RationalVector(std::move(out));
}

inline std::vector<long> json_longs(const Json& j, const std::string& field) {
  if (!j.is_array()) field_error(field, "expected an array");
  std::vector<long> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_long(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline BiPoly json_poly(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return BiPoly(json_rational(j, field));
  if (!j.is_string()) field_error(field, "expected a polynomial string");
  try {
    return parse_bipoly(j.get<std::string>());
  } catch (const Error& e) {
    field_error(field, e.what());
  }
}

inline const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) field_error(where.empty() ? key : where + "." + key, "missing");
  return j.at(key);
}

inline GroupSpec parse_group(const Json& j, const std::string& where, const TorusAction& a) {
  std::vector<RationalVector> adj;
  if (j.contains("adjoint_weights")) {
    const auto& aw = j.at("adjoint_weights");
    if (!aw.is_array()) field_error(where + ".adjoint_weights", "expected an array");
    for (std::size_t i = 0; i < aw.size(); ++i) adj.push_back(json_vector(aw[i], where + ".adjoint_weights[" + std::to_string(i) + "]"));
  }
  int params = static_cast<int>(json_long(require(j, "u_params", where), where + ".u_params"));
  std::vector<PolyMatrix> mats;
  if (j.contains("u_matrices")) {
    const auto& um = j.at("u_matrices");
    if (!um.is_array()) field_error(where + ".u_matrices", "expected an array");
    for (std::size_t f = 0; f < um.size(); ++f) {
      const std::string fw = where + ".u_matrices[" + std::to_string(f) + "]";
      if (!um[f].is_array()) field_error(fw, "expected a matrix");
      PolyMatrix m;
      for (std::size_t r = 0; r < um[f].size(); ++r) {
        if (!um[f][r].is_array()) field_error(fw + "[" + std::to_string(r) + "]", "expected a row");
        m.emplace_back();
        for (std::size_t c = 0; c < um[f][r].size(); ++c)
          m.back().push_back(json_poly(um[f][r][c], fw + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      }
      mats.push_back(std::move(m));
    }
  } else {
    for (const auto& block : a.factor_partition()) mats.push_back(poly_identity(block.size()));
  }
  try {
    GroupSpec g(std::move(adj), params, std::move(mats));
    g.check_against(a);
    return g;
  } catch (const Error& e) {
    field_error(where, e.what());
  }
}

}  // namespace detail

inline ActionSpec parse_action_spec(const Json& j) {
  using namespace detail;
  if (!j.is_object()) field_error("(root)", "expected an object");
  ActionSpec spec;
  spec.name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "";
  const long rank = json_long(require(j, "rank", ""), "rank");
  if (rank <= 0) field_error("rank", "must be positive");

  InnerProduct ip = InnerProduct::identity(static_cast<std::size_t>(rank));
  if (j.contains("inner_product")) {
    const auto& g = j.at("inner_product");
    if (!g.is_array()) field_error("inner_product", "expected a matrix");
    Matrix m;
    for (std::size_t i = 0; i < g.size(); ++i) {
      RationalVector row = json_vector(g[i], "inner_product[" + std::to_string(i) + "]");
      if (!row.is_integral()) field_error("inner_product", "entries must be integers");
      m.push_back(row.entries());
    }
    if (m.size() != static_cast<std::size_t>(rank)) field_error("inner_product", "size differs from rank");
    try {
      ip = InnerProduct(std::move(m));
    } catch (const Error& e) {
      field_error("inner_product", e.what());
    }
  }

  const auto& factors = require(j, "factors", "");
  if (!factors.is_array() || factors.empty()) field_error("factors", "expected a nonempty array");
  std::vector<std::vector<RationalVector>> blocks;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const std::string fw = "factors[" + std::to_string(f) + "].weights";
    const auto& w = require(factors[f], "weights", "factors[" + std::to_string(f) + "]");
    if (!w.is_array() || w.empty()) field_error(fw, "expected a nonempty array");
    blocks.emplace_back();
    for (std::size_t i = 0; i < w.size(); ++i) {
      RationalVector v = json_vector(w[i], fw + "[" + std::to_string(i) + "]");
      if (v.dim() != static_cast<std::size_t>(rank)) field_error(fw + "[" + std::to_string(i) + "]", "length differs from rank");
      if (!v.is_integral()) field_error(fw + "[" + std::to_string(i) + "]", "weights must be integral");
      blocks.back().push_back(std::move(v));
    }
  }
  RationalVector twist(static_cast<std::size_t>(rank));
  if (j.contains("twist")) {
    twist = json_vector(j.at("twist"), "twist");
    if (twist.dim() != static_cast<std::size_t>(rank)) field_error("twist", "length differs from rank");
  }
  spec.action = TorusAction(std::move(blocks), twist, ip);

  if (j.contains("group")) {
    spec.groups.emplace("default", parse_group(j.at("group"), "group", spec.action));
    spec.default_group = "default";
  }
  if (j.contains("groups")) {
    const auto& gs = j.at("groups");
    if (!gs.is_object()) field_error("groups", "expected an object");
    for (const auto& [k, v] : gs.items()) spec.groups.emplace(k, parse_group(v, "groups." + k, spec.action));
    if (spec.default_group.empty() && !spec.groups.empty()) spec.default_group = spec.groups.begin()->first;
    if (j.contains("default_group")) spec.default_group = j.at("default_group").get<std::string>();
  }
  if (spec.groups.empty()) {
    std::vector<std::size_t> sizes;
    for (const auto& b : spec.action.factor_partition()) sizes.push_back(b.size());
    spec.groups.emplace("trivial", GroupSpec::trivial(sizes));
    spec.default_group = "trivial";
  }
  if (!spec.groups.count(spec.default_group)) field_error("default_group", "names no group");

  if (j.contains("points")) {
    const auto& pts = j.at("points");
    if (!pts.is_array()) field_error("points", "expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string pw = "points[" + std::to_string(i) + "]";
      const auto& p = pts[i];
      std::string name = require(p, "name", pw).get<std::string>();
      if (p.contains("support")) {
        std::vector<std::size_t> idx;
        for (long v : json_longs(p.at("support"), pw + ".support")) {
          if (v < 0) field_error(pw + ".support", "negative index");
          idx.push_back(static_cast<std::size_t>(v));
        }
        try {
          SupportPoint s(std::move(idx));
          spec.action.validate(s);
          spec.supports.push_back({name, s});
        } catch (const Error& e) {
          field_error(pw + ".support", e.what());
        }
      } else if (p.contains("coords")) {
        const auto& c = p.at("coords");
        if (!c.is_array() || c.size() != spec.action.factor_count()) field_error(pw + ".coords", "expected one list per factor");
        std::vector<std::vector<BiPoly>> coords;
        for (std::size_t f = 0; f < c.size(); ++f) {
          if (!c[f].is_array() || c[f].size() != spec.action.factor_partition()[f].size())
            field_error(pw + ".coords[" + std::to_string(f) + "]", "length differs from factor size");
          coords.emplace_back();
          for (std::size_t k = 0; k < c[f].size(); ++k)
            coords.back().push_back(json_poly(c[f][k], pw + ".coords[" + std::to_string(f) + "][" + std::to_string(k) + "]"));
        }
        try {
          spec.explicit_points.push_back({name, ExplicitPoint(std::move(coords))});
        } catch (const Error& e) {
          field_error(pw + ".coords", e.what());
        }
      } else {
        field_error(pw, "needs 'support' or 'coords'");
      }
    }
  }

  if (j.contains("external")) {
    const auto& e = j.at("external");
    ExternalData ext;
    ext.m_lambda = json_longs(require(e, "m_lambda", "external"), "external.m_lambda");
    ext.m_mu = json_longs(require(e, "m_mu", "external"), "external.m_mu");
    ext.n = json_long(require(e, "N", "external"), "external.N");
    ext.epsilon = json_rational(require(e, "epsilon", "external"), "external.epsilon");
    if (ext.m_lambda.size() != spec.action.coordinate_count() || ext.m_mu.size() != spec.action.coordinate_count())
      field_error("external", "m_lambda and m_mu need one entry per coordinate");
    if (ext.n <= 0) field_error("external.N", "must be positive");
    if (ext.epsilon <= 0) field_error("external.epsilon", "must be positive");
    spec.external = ext;
  }
  return spec;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Validation, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "'" + path + "': " + e.what());
  }
}

inline ActionSpec load_action_spec(const std::string& path) { return parse_action_spec(read_json_file(path)); }

}  // namespace nrgit
