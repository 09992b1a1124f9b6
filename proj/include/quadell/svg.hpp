#pragma once

//! @file
//! Deterministic SVG figure of a quadrilateral and its extremal ellipses.

#include <quadell/conic.hpp>
#include <quadell/quad.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace quadell {

struct SvgLayer
{
  std::string name;
  std::string color;
  EllipseGeometry ellipse;
};

struct SvgFigure
{
  ConvexQuadrilateral quad;
  std::vector<SvgLayer> ellipses;
  std::optional<SegmentZ> segment;
  std::string title;
};

namespace detail {

inline std::string fmt(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x == 0 ? 0.0 : x);
  return buf;
}

inline std::string escape_xml(const std::string& s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

} // namespace detail

//! Renders with y pointing up; the view box is the bounding box of every
//! drawn element plus a 10% margin on each side.
inline std::string render_svg(const SvgFigure& fig)
{
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  const auto grow = [&](double x0, double x1, double y0, double y1) {
    xmin = std::min(xmin, x0);
    xmax = std::max(xmax, x1);
    ymin = std::min(ymin, y0);
    ymax = std::max(ymax, y1);
  };
  for (int i = 0; i < 4; ++i)
    grow(fig.quad[i].x(), fig.quad[i].x(), fig.quad[i].y(), fig.quad[i].y());
  for (const auto& l : fig.ellipses) {
    const auto& g = l.ellipse;
    const double c = std::cos(g.phi), s = std::sin(g.phi);
    const double hx = std::hypot(g.a * c, g.b * s);
    const double hy = std::hypot(g.a * s, g.b * c);
    grow(g.center.x() - hx, g.center.x() + hx, g.center.y() - hy, g.center.y() + hy);
  }
  const double w = xmax - xmin, h = ymax - ymin;
  const double mx = 0.1 * w, my = 0.1 * h;
  const double vx = xmin - mx, vw = w + 2 * mx;
  const double vy = -(ymax + my), vh = h + 2 * my;
  const double stroke = 0.004 * std::max(vw, vh);
  const double font = 0.035 * std::max(vw, vh);
  using detail::fmt;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"" +
         fmt(800 * vh / vw) + "\" viewBox=\"" + fmt(vx) + " " + fmt(vy) + " " + fmt(vw) + " " +
         fmt(vh) + "\">\n";
  if (!fig.title.empty())
    out += "  <title>" + detail::escape_xml(fig.title) + "</title>\n";
  out += "  <rect x=\"" + fmt(vx) + "\" y=\"" + fmt(vy) + "\" width=\"" + fmt(vw) + "\" height=\"" +
         fmt(vh) + "\" fill=\"white\"/>\n";

  std::string pts;
  for (int i = 0; i < 4; ++i)
    pts += (i ? " " : "") + fmt(fig.quad[i].x()) + "," + fmt(-fig.quad[i].y());
  out += "  <polygon id=\"quadrilateral\" points=\"" + pts +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + fmt(stroke) + "\"/>\n";

  for (const auto& l : fig.ellipses) {
    const auto& g = l.ellipse;
    out += "  <ellipse id=\"" + detail::escape_xml(l.name) + "\" cx=\"" + fmt(g.center.x()) +
           "\" cy=\"" + fmt(-g.center.y()) + "\" rx=\"" + fmt(g.a) + "\" ry=\"" + fmt(g.b) +
           "\" transform=\"rotate(" + fmt(-g.phi * 180 / std::numbers::pi) + " " +
           fmt(g.center.x()) + " " + fmt(-g.center.y()) + ")\" fill=\"none\" stroke=\"" + l.color +
           "\" stroke-width=\"" + fmt(stroke) + "\"/>\n";
  }
  if (fig.segment) {
    const auto& z = *fig.segment;
    out += "  <line id=\"Z\" x1=\"" + fmt(z.m1.x()) + "\" y1=\"" + fmt(-z.m1.y()) + "\" x2=\"" +
           fmt(z.m2.x()) + "\" y2=\"" + fmt(-z.m2.y()) + "\" stroke=\"gray\" stroke-dasharray=\"" +
           fmt(3 * stroke) + "\" stroke-width=\"" + fmt(stroke) + "\"/>\n";
  }

  out += "  <g id=\"legend\" font-family=\"sans-serif\" font-size=\"" + fmt(font) + "\">\n";
  double ly = vy + 1.5 * font;
  const double lx = vx + 0.5 * font;
  const auto entry = [&](const std::string& color, const std::string& text) {
    out += "    <text x=\"" + fmt(lx) + "\" y=\"" + fmt(ly) + "\" fill=\"" + color + "\">" +
           detail::escape_xml(text) + "</text>\n";
    ly += 1.3 * font;
  };
  entry("black", "quadrilateral");
  for (const auto& l : fig.ellipses)
    entry(l.color, l.name + "  e=" + fmt(l.ellipse.ecc));
  if (fig.segment)
    entry("gray", "Z (inscribed centers)");
  out += "  </g>\n</svg>\n";
  return out;
}

} // namespace quadell
