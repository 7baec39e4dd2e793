#include "ustitch/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>

#include "ustitch/bench.hpp"

namespace ustitch {

namespace {

struct Bounds {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void include(const Point2& p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  void include(const std::vector<Point2>& pts) {
    for (const Point2& p : pts) include(p);
  }
};

struct Mapper {
  Bounds b;
  double margin;
  double scale;

  double width() const { return (b.max_x - b.min_x + 2 * margin) * scale; }
  double height() const { return (b.max_y - b.min_y + 2 * margin) * scale; }
  double px(double x) const { return (x - b.min_x + margin) * scale; }
  double py(double y) const { return (b.max_y - y + margin) * scale; }
};

void appendf(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  out += buf;
}

void append_polyline(std::string& out, const Mapper& m,
                     const std::vector<Point2>& pts, const char* color,
                     double width, const char* dash) {
  if (pts.size() < 2) return;
  out += "<polyline fill=\"none\" stroke=\"";
  out += color;
  appendf(out, "\" stroke-width=\"%.2f\"", width);
  if (dash != nullptr) appendf(out, " stroke-dasharray=\"%s\"", dash);
  out += " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    appendf(out, i == 0 ? "%.3f,%.3f" : " %.3f,%.3f", m.px(pts[i].x),
            m.py(pts[i].y));
  }
  out += "\"/>\n";
}

const char* method_color(const std::string& method) {
  if (method == "us") return "#000000";
  if (method == "pp") return "#8e44ad";
  if (method == "raw") return "#16a085";
  if (method == "ballistic") return "#7f8c8d";
  if (method == "ls1") return "#e67e22";
  if (method == "ls3") return "#d35400";
  if (method == "ls5") return "#a04000";
  return "#c0392b";
}

}  // namespace

std::string render_scene(
    const ScenarioRecord& record,
    const std::map<std::string, std::vector<Point2>>& method_paths,
    const RenderOptions& options) {
  Bounds b;
  for (const Polyline& g : record.goal_candidates) b.include(g.vertices());
  b.include(record.ground_truth.positions());
  for (const PredictedTrajectory& p : record.predicted) {
    for (const GaussianWaypoint& wp : p.waypoints) b.include(wp.mean);
  }
  for (const auto& [name, pts] : method_paths) b.include(pts);
  b.include(record.actor.position);
  const Mapper m{b, options.margin, options.scale};

  std::string svg;
  appendf(svg,
          "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
          "height=\"%.0f\" viewBox=\"0 0 %.3f %.3f\">\n",
          m.width(), m.height(), m.width(), m.height());
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  for (const Polyline& g : record.goal_candidates) {
    append_polyline(svg, m, g.vertices(), "#4a90d9", 2.5, nullptr);
  }

  const int stride = std::max(options.ellipse_stride, 1);
  for (const PredictedTrajectory& p : record.predicted) {
    for (std::size_t i = static_cast<std::size_t>(stride) - 1;
         i < p.waypoints.size(); i += static_cast<std::size_t>(stride)) {
      const GaussianWaypoint& wp = p.waypoints[i];
      const double lmax = wp.cov.max_eigenvalue();
      const double lmin = wp.cov.min_eigenvalue();
      if (!(lmin > 0.0)) continue;
      // Screen y points down, so the major-axis angle flips sign.
      const double ang =
          0.5 * std::atan2(2.0 * wp.cov.xy, wp.cov.xx - wp.cov.yy);
      appendf(svg,
              "<ellipse cx=\"%.3f\" cy=\"%.3f\" rx=\"%.3f\" ry=\"%.3f\" "
              "transform=\"rotate(%.3f %.3f %.3f)\" fill=\"#aecbeb\" "
              "fill-opacity=\"0.25\" stroke=\"#7fa8d9\" "
              "stroke-width=\"0.5\"/>\n",
              m.px(wp.mean.x), m.py(wp.mean.y), std::sqrt(lmax) * m.scale,
              std::sqrt(lmin) * m.scale, -ang * 180.0 / kPi, m.px(wp.mean.x),
              m.py(wp.mean.y));
    }
    std::vector<Point2> means;
    means.reserve(p.waypoints.size());
    for (const GaussianWaypoint& wp : p.waypoints) means.push_back(wp.mean);
    append_polyline(svg, m, means, "#5d8fc9", 1.2, "4 3");
  }

  // Canonical method order, ground truth between the baselines and the
  // stitched path so the black line stays on top.
  std::vector<std::string> ordered;
  for (const char* name : kAllMethods) {
    if (name != std::string("us") && method_paths.count(name)) {
      ordered.push_back(name);
    }
  }
  for (const auto& [name, pts] : method_paths) {
    if (std::find(ordered.begin(), ordered.end(), name) == ordered.end() &&
        name != "us") {
      ordered.push_back(name);
    }
  }
  for (const std::string& name : ordered) {
    append_polyline(svg, m, method_paths.at(name), method_color(name), 1.6,
                    nullptr);
  }
  append_polyline(svg, m, record.ground_truth.positions(), "#2e9e44", 2.0,
                  nullptr);
  if (method_paths.count("us")) {
    append_polyline(svg, m, method_paths.at("us"), method_color("us"), 1.8,
                    nullptr);
  }

  appendf(svg,
          "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"#e74c3c\"/>\n",
          m.px(record.actor.position.x), m.py(record.actor.position.y));

  double ly = 18.0;
  appendf(svg,
          "<text x=\"10\" y=\"%.0f\" font-family=\"sans-serif\" "
          "font-size=\"13\" fill=\"#333333\">%s</text>\n",
          ly, record.id.c_str());
  const auto legend_line = [&](const char* label, const char* color) {
    ly += 16.0;
    appendf(svg,
            "<line x1=\"10\" y1=\"%.0f\" x2=\"34\" y2=\"%.0f\" "
            "stroke=\"%s\" stroke-width=\"2.5\"/>\n",
            ly - 4.0, ly - 4.0, color);
    appendf(svg,
            "<text x=\"40\" y=\"%.0f\" font-family=\"sans-serif\" "
            "font-size=\"11\" fill=\"#333333\">%s</text>\n",
            ly, label);
  };
  legend_line("goal", "#4a90d9");
  legend_line("prediction", "#5d8fc9");
  legend_line("ground truth", "#2e9e44");
  if (method_paths.count("us")) legend_line("us", method_color("us"));
  for (const std::string& name : ordered) {
    legend_line(name.c_str(), method_color(name));
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace ustitch
