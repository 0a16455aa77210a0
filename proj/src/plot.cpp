#include "pisr/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace pisr {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string f2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string f0(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.0f", v);
  return buf;
}

}  // namespace

std::string render_plan_svg(const Instance& instance, const RoutePlan& plan) {
  double min_x = instance.depot_x, max_x = instance.depot_x;
  double min_y = instance.depot_y, max_y = instance.depot_y;
  for (const Task& t : instance.tasks) {
    min_x = std::min(min_x, t.x);
    max_x = std::max(max_x, t.x);
    min_y = std::min(min_y, t.y);
    max_y = std::max(max_y, t.y);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
  const double margin = 0.06 * span;
  const double scale = 720.0 / (span + 2.0 * margin);
  // SVG's y axis points down; flip so plots read like the plane
  auto px = [&](double x) { return (x - min_x + margin) * scale; };
  auto py = [&](double y) { return (max_y - y + margin) * scale; };
  const double width = (max_x - min_x + 2.0 * margin) * scale;
  const double height = (max_y - min_y + 2.0 * margin) * scale;
  const double r_task = 0.011 * 720.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f0(width) << "\" height=\""
      << f0(height) << "\" viewBox=\"0 0 " << f2(width) << " " << f2(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const RoutePlan ordered = canonical_plan(plan);
  for (std::size_t k = 0; k < ordered.cycles.size(); ++k) {
    svg << "<path fill=\"none\" stroke=\"" << kPalette[k % kPaletteSize]
        << "\" stroke-width=\"2\" d=\"M " << f2(px(instance.depot_x)) << " "
        << f2(py(instance.depot_y));
    for (int id : ordered.cycles[k]) {
      const Task& t = instance.task(id);
      svg << " L " << f2(px(t.x)) << " " << f2(py(t.y));
    }
    svg << " Z\"/>\n";
  }

  for (const Task& t : instance.tasks) {
    const bool constrained = instance.is_constrained(t.id);
    svg << "<circle cx=\"" << f2(px(t.x)) << "\" cy=\"" << f2(py(t.y)) << "\" r=\""
        << f2(r_task) << "\" fill=\"#333333\"/>\n";
    if (constrained) {
      svg << "<circle cx=\"" << f2(px(t.x)) << "\" cy=\"" << f2(py(t.y)) << "\" r=\""
          << f2(1.9 * r_task) << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
      svg << "<text x=\"" << f2(px(t.x) + 2.3 * r_task) << "\" y=\"" << f2(py(t.y) + 4.0)
          << "\" font-size=\"12\" fill=\"#d62728\">t" << t.id << " R="
          << f0(instance.revisit_limits.at(t.id)) << "</text>\n";
    } else {
      svg << "<text x=\"" << f2(px(t.x) + 2.3 * r_task) << "\" y=\"" << f2(py(t.y) + 4.0)
          << "\" font-size=\"12\" fill=\"#555555\">t" << t.id << "</text>\n";
    }
  }

  const double ds = 1.6 * r_task;
  svg << "<rect x=\"" << f2(px(instance.depot_x) - ds / 2.0) << "\" y=\""
      << f2(py(instance.depot_y) - ds / 2.0) << "\" width=\"" << f2(ds) << "\" height=\""
      << f2(ds) << "\" fill=\"black\"/>\n";
  svg << "<text x=\"" << f2(px(instance.depot_x) + ds) << "\" y=\""
      << f2(py(instance.depot_y) - ds) << "\" font-size=\"13\" fill=\"black\">depot</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pisr
