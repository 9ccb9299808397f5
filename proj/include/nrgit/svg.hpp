#pragma once

// Rendering only: rationals are turned into doubles here and nowhere else,
// and nothing in the library includes this header.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nrgit/polytope/arrangement.hpp"
#include "nrgit/stability/admissible.hpp"

namespace nrgit {

struct SvgOverlays {
  std::optional<Cone> cone;
  std::optional<AdaptedRegion> slab;
  std::vector<Line2D> walls;
  std::vector<RationalVector> betas;
};

namespace detail::svg {

struct P {
  double x, y;
};

inline double num(const Rational& q) { return q.get_d(); }

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// Sutherland-Hodgman against {p : n·p + c >= 0}.
inline std::vector<P> clip(const std::vector<P>& poly, double nx, double ny, double c) {
  std::vector<P> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    P a = poly[i], b = poly[(i + 1) % poly.size()];
    double fa = nx * a.x + ny * a.y + c, fb = nx * b.x + ny * b.y + c;
    if (fa >= 0) out.push_back(a);
    if ((fa >= 0) != (fb >= 0)) {
      double t = fa / (fa - fb);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

}  // namespace detail::svg

/// Weight diagram of a rank-2 action: Segre weights as dots (with
/// multiplicities), their hull, and the requested overlays.
inline std::string svg_weight_diagram(const TorusAction& a, const SvgOverlays& ov = {}) {
  using namespace detail::svg;
  if (a.rank() != 2) throw Error(ErrorCode::RankUnsupported, "svg_weight_diagram: rank must be 2");

  std::map<RationalVector, int> mult;
  for (const auto& w : a.segre_weights()) ++mult[w];
  double lo = 0, hi = 0;
  auto extend = [&](const RationalVector& v) {
    for (std::size_t i = 0; i < 2; ++i) {
      lo = std::min(lo, num(v[i]));
      hi = std::max(hi, num(v[i]));
    }
  };
  for (const auto& [w, _] : mult) extend(w);
  for (const auto& b : ov.betas) extend(b);
  lo -= 1;
  hi += 1;

  const double size = 480, pad = 20;
  const double scale = (size - 2 * pad) / (hi - lo);
  auto sx = [&](double x) { return pad + (x - lo) * scale; };
  auto sy = [&](double y) { return size - pad - (y - lo) * scale; };
  const std::vector<P> box{{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}};
  auto path = [&](const std::vector<P>& poly) {
    std::string d;
    for (std::size_t i = 0; i < poly.size(); ++i) d += (i ? " L " : "M ") + fmt(sx(poly[i].x)) + " " + fmt(sy(poly[i].y));
    return d + " Z";
  };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " "
    << size << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
  s << "<line class=\"axis\" x1=\"" << fmt(sx(lo)) << "\" y1=\"" << fmt(sy(0)) << "\" x2=\"" << fmt(sx(hi)) << "\" y2=\"" << fmt(sy(0))
    << "\" stroke=\"#bbb\"/>\n";
  s << "<line class=\"axis\" x1=\"" << fmt(sx(0)) << "\" y1=\"" << fmt(sy(lo)) << "\" x2=\"" << fmt(sx(0)) << "\" y2=\"" << fmt(sy(hi))
    << "\" stroke=\"#bbb\"/>\n";

  if (ov.cone) {
    std::vector<P> region = box;
    for (const auto& h : ov.cone->halfspaces()) region = clip(region, num(h.normal[0]), num(h.normal[1]), 0);
    if (region.size() >= 3) s << "<path class=\"cone\" d=\"" << path(region) << "\" fill=\"#4a90d9\" fill-opacity=\"0.2\"/>\n";
  }
  if (ov.slab) {
    const double lx = num(ov.slab->lambda.cochar()[0]), ly = num(ov.slab->lambda.cochar()[1]);
    std::vector<P> region = clip(clip(box, lx, ly, -num(ov.slab->lower)), -lx, -ly, num(ov.slab->upper));
    if (region.size() >= 3) s << "<path class=\"slab\" d=\"" << path(region) << "\" fill=\"#e8a33d\" fill-opacity=\"0.25\"/>\n";
  }
  for (const auto& l : ov.walls) {
    // Liang-Barsky on p0 + t·d, with p0 the foot of the normal.
    const double nx = num(l.normal[0]), ny = num(l.normal[1]), c = num(l.offset);
    const double nn = nx * nx + ny * ny;
    const P p0{nx * c / nn, ny * c / nn}, d{-ny, nx};
    double t0 = -1e300, t1 = 1e300;
    bool empty = false;
    auto bound = [&](double q0, double dq) {
      if (dq == 0) {
        if (q0 < lo || q0 > hi) empty = true;
        return;
      }
      double ta = (lo - q0) / dq, tb = (hi - q0) / dq;
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
    };
    bound(p0.x, d.x);
    bound(p0.y, d.y);
    if (empty || t0 >= t1) continue;
    const P a{p0.x + t0 * d.x, p0.y + t0 * d.y}, b{p0.x + t1 * d.x, p0.y + t1 * d.y};
    s << "<line class=\"wall\" x1=\"" << fmt(sx(a.x)) << "\" y1=\"" << fmt(sy(a.y)) << "\" x2=\"" << fmt(sx(b.x)) << "\" y2=\""
      << fmt(sy(b.y)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }

  std::vector<RationalVector> pts;
  for (const auto& [w, _] : mult) pts.push_back(w);
  auto hull = convex_hull_2d(pts);
  if (hull.size() >= 2) {
    std::vector<P> poly;
    for (const auto& v : hull) poly.push_back({num(v[0]), num(v[1])});
    s << "<path class=\"hull\" d=\"" << path(poly) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& [w, m] : mult) {
    const double x = sx(num(w[0])), y = sy(num(w[1]));
    s << "<circle class=\"weight\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"4\" fill=\"black\"/>\n";
    s << "<text x=\"" << fmt(x + 6) << "\" y=\"" << fmt(y - 6) << "\" font-size=\"10\">" << to_string(w);
    if (m > 1) s << " x" << m;
    s << "</text>\n";
  }
  for (const auto& b : ov.betas)
    s << "<circle class=\"beta\" cx=\"" << fmt(sx(num(b[0]))) << "\" cy=\"" << fmt(sy(num(b[1]))) << "\" r=\"3\" fill=\"#c0392b\"/>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace nrgit
