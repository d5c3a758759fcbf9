#pragma once

// SVG pictures of rank-2 affine arrangements.

#include <cstdio>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "affinelie/alcove.hpp"
#include "affinelie/weylaff.hpp"

namespace affinelie {

struct SvgOptions {
  /// Levels drawn per positive root; the viewport is {lo <= beta <= hi for all positive beta}.
  std::int64_t lo = -2;
  std::int64_t hi = 2;
  std::optional<std::vector<int>> highlight;
  double scale = 60;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Plane {
  Eigen::Matrix2d embed;  // ambient -> Euclidean
  Eigen::Matrix2d unembed;

  explicit Plane(const RootSystem& rs) {
    Eigen::Matrix2d g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = rs.inner_product_matrix()(i, j).to_double();
    embed = Eigen::LLT<Eigen::Matrix2d>(g).matrixU();
    unembed = embed.inverse();
  }
  Eigen::Vector2d operator()(const QVector& x) const { return embed * Eigen::Vector2d(x[0].to_double(), x[1].to_double()); }
};

}  // namespace detail

/// Hyperplanes H_{beta,n} for every positive root and lo <= n <= hi, the
/// fundamental alcove, and optionally the star of a face of C.
inline std::string render_svg(const AffineSystem& sys, const SvgOptions& opt = {}) {
  const RootSystem& rs = sys.rs();
  if (rs.rank() != 2 || rs.dim() != 2) throw std::invalid_argument("svg: rank-2 sc or ad types only");
  if (opt.lo >= opt.hi) throw std::invalid_argument("svg: empty level range");
  const detail::Plane plane(rs);
  const std::size_t npos = rs.positive_count();

  // Root functionals in Euclidean coordinates: beta(x) = f . p.
  std::vector<Eigen::Vector2d> f(npos);
  for (std::size_t i = 0; i < npos; ++i) {
    Eigen::Vector2d cov(rs.covector(i)[0].to_double(), rs.covector(i)[1].to_double());
    f[i] = plane.unembed.transpose() * cov;
  }
  auto inside = [&](const Eigen::Vector2d& p) {
    for (const auto& g : f) {
      double v = g.dot(p);
      if (v < opt.lo - 1e-9 || v > opt.hi + 1e-9) return false;
    }
    return true;
  };
  // Viewport polygon corners: pairwise intersections of boundary lines.
  std::vector<Eigen::Vector2d> corners;
  for (std::size_t i = 0; i < npos; ++i)
    for (std::size_t j = i + 1; j < npos; ++j)
      for (double a : {double(opt.lo), double(opt.hi)})
        for (double b : {double(opt.lo), double(opt.hi)}) {
          Eigen::Matrix2d m;
          m << f[i].transpose(), f[j].transpose();
          Eigen::Vector2d p = m.inverse() * Eigen::Vector2d(a, b);
          if (inside(p)) corners.push_back(p);
        }
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& c : corners) {
    xmin = std::min(xmin, c.x()), xmax = std::max(xmax, c.x());
    ymin = std::min(ymin, c.y()), ymax = std::max(ymax, c.y());
  }
  const double pad = 0.2;
  auto sx = [&](double x) { return detail::fmt((x - xmin + pad) * opt.scale); };
  auto sy = [&](double y) { return detail::fmt((ymax - y + pad) * opt.scale); };
  auto pt = [&](const Eigen::Vector2d& p) { return sx(p.x()) + "," + sy(p.y()); };
  auto polygon = [&](const std::vector<QVector>& vs, const std::string& cls) {
    std::string s = "<polygon class=\"" + cls + "\" points=\"";
    for (std::size_t k = 0; k < vs.size(); ++k) s += (k ? " " : "") + pt(plane(vs[k]));
    return s + "\"/>\n";
  };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt((xmax - xmin + 2 * pad) * opt.scale) +
                    "\" height=\"" + detail::fmt((ymax - ymin + 2 * pad) * opt.scale) + "\">\n";
  out += "<style>.hyperplane{stroke:#888;stroke-width:1}.alcove{fill:#9cf;opacity:0.6}"
         ".star-alcove{fill:#fc9;opacity:0.7}.star-edge{stroke:#c60;stroke-width:3}.star-vertex{fill:#c60}</style>\n";
  out += "<title>" + rs.cartan_type().name() + "</title>\n";

  if (opt.highlight) {
    const Face& face = sys.face(*opt.highlight);
    std::set<std::vector<std::int64_t>> seen;
    std::string alcoves, edges, vertices;
    for (const auto& w : alcoves_containing(sys, sys.alcove().vertices[face.vertices.front()]))
      for (const auto& k : sys.faces().faces) {
        QVector x = w(k.witness);
        if (!star_contains(sys, face, x) || !seen.insert(facet_cells(rs, x)).second) continue;
        std::vector<QVector> vs;
        for (int v : k.vertices) vs.push_back(w(sys.alcove().vertices[v]));
        if (vs.size() == 3) alcoves += polygon(vs, "star-alcove");
        if (vs.size() == 2)
          edges += "<line class=\"star-edge\" x1=\"" + sx(plane(vs[0]).x()) + "\" y1=\"" + sy(plane(vs[0]).y()) +
                   "\" x2=\"" + sx(plane(vs[1]).x()) + "\" y2=\"" + sy(plane(vs[1]).y()) + "\"/>\n";
        if (vs.size() == 1) vertices += "<circle class=\"star-vertex\" cx=\"" + sx(plane(vs[0]).x()) + "\" cy=\"" + sy(plane(vs[0]).y()) + "\" r=\"4\"/>\n";
      }
    out += alcoves + edges + vertices;
  }
  out += polygon(sys.alcove().vertices, "alcove");

  // Each line beta = n clipped to the viewport polygon.
  for (std::size_t i = 0; i < npos; ++i) {
    Eigen::Vector2d dir(-f[i].y(), f[i].x());
    for (std::int64_t n = opt.lo; n <= opt.hi; ++n) {
      Eigen::Vector2d base = f[i] * (double(n) / f[i].squaredNorm());
      double tmin = 1e300, tmax = -1e300;
      // Sides of the viewport cut the line where another root reaches lo or hi.
      for (std::size_t j = 0; j < npos; ++j) {
        double d = f[j].dot(dir);
        if (std::abs(d) < 1e-12) continue;
        for (double level : {double(opt.lo), double(opt.hi)}) {
          double t = (level - f[j].dot(base)) / d;
          if (inside(base + t * dir)) tmin = std::min(tmin, t), tmax = std::max(tmax, t);
        }
      }
      if (tmin > tmax) tmin = tmax = 0;
      Eigen::Vector2d a = base + tmin * dir, b = base + tmax * dir;
      out += "<line class=\"hyperplane\" data-root=\"" + std::to_string(i) + "\" data-level=\"" + std::to_string(n) +
             "\" x1=\"" + sx(a.x()) + "\" y1=\"" + sy(a.y()) + "\" x2=\"" + sx(b.x()) + "\" y2=\"" + sy(b.y()) + "\"/>\n";
    }
  }
  return out + "</svg>\n";
}

}  // namespace affinelie
