// Copyright 2026 the stcv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <sstream>

#include "stcv/plan.hpp"

namespace stcv::io {

/// What to draw: which folds (of which repeat), point size, role colors,
/// optional block outlines, and optional faceting by time key for
/// spatiotemporal tasks (uses the first requested fold).
struct PlotSpec {
  std::vector<int> fold_ids = {1};
  int repeat = 1;
  double point_size = 3.0;
  bool show_blocks = false;
  bool facet_time = false;
  std::string test_color = "#e66101";
  std::string train_color = "#1a9641";
  std::string omitted_color = "#b0b0b0";
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct PanelTransform {
  double scale, ox, oy, ymax;
  double px(double x) const { return ox + scale * x; }
  double py(double y) const { return oy + scale * (ymax - y); }
};

}  // namespace detail

/// Deterministic SVG 1.1 rendering of one or more folds as small
/// multiples: points colored by role (train below, omitted, test on top),
/// 1:1 aspect ratio, a legend, and optional block rectangles.
inline std::string render_partition_svg(const Task& task, const ResamplingPlan& plan,
                                        const PlotSpec& spec,
                                        const BlockSet* blocks = nullptr) {
  const Fold* first_fold = nullptr;
  std::vector<const Fold*> selected;
  for (int id : spec.fold_ids) {
    const Fold* found = nullptr;
    for (const Fold& fold : plan.folds)
      if (fold.repeat == spec.repeat && fold.id == id) found = &fold;
    if (!found)
      throw std::invalid_argument("plot: fold " + std::to_string(id) + " (repeat " +
                                  std::to_string(spec.repeat) + ") not in plan");
    selected.push_back(found);
    if (!first_fold) first_fold = found;
  }
  if (selected.empty()) throw std::invalid_argument("plot: no folds requested");
  if (spec.facet_time && !task.time)
    throw std::invalid_argument("plot: facet_time needs a task with a time role");

  // Panels: one per fold, or one per time key when faceting.
  std::vector<std::int64_t> time_keys;
  if (spec.facet_time) {
    time_keys = *task.time;
    std::sort(time_keys.begin(), time_keys.end());
    time_keys.erase(std::unique(time_keys.begin(), time_keys.end()), time_keys.end());
  }
  const std::size_t n_panels = spec.facet_time ? time_keys.size() : selected.size();

  const double panel = 360.0;
  const double title_h = 22.0;
  const double legend_h = 26.0;
  const double pad = 10.0;
  const std::size_t cols = std::min<std::size_t>(n_panels, 3);
  const std::size_t rows = (n_panels + cols - 1) / cols;
  const double width = cols * (panel + pad) + pad;
  const double height = rows * (panel + title_h + pad) + pad + legend_h;

  Bounds box = bounds_of(task.coords);
  const double extent = std::max({box.width(), box.height(), 1e-12});
  const double margin = 0.05 * extent;
  box.xmin -= margin;
  box.ymin -= margin;
  box.xmax = box.xmin + extent + 2 * margin;
  box.ymax = box.ymin + extent + 2 * margin;
  const double scale = panel / (extent + 2 * margin);

  bool any_omitted = false;
  for (const Fold* fold : selected) any_omitted = any_omitted || !fold->omitted.empty();

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::svg_num(width)
      << "\" height=\"" << detail::svg_num(height) << "\" viewBox=\"0 0 "
      << detail::svg_num(width) << " " << detail::svg_num(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto draw_panel = [&](std::size_t index, const Fold& fold, const std::string& title,
                        std::optional<std::int64_t> only_time) {
    const double x0 = pad + (index % cols) * (panel + pad);
    const double y0 = pad + (index / cols) * (panel + title_h + pad) + title_h;
    detail::PanelTransform tr{scale, x0 - scale * box.xmin, y0, box.ymax};

    svg << "<text x=\"" << detail::svg_num(x0 + panel / 2) << "\" y=\""
        << detail::svg_num(y0 - 7) << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"13\">" << title << "</text>\n";
    svg << "<rect x=\"" << detail::svg_num(x0) << "\" y=\"" << detail::svg_num(y0)
        << "\" width=\"" << detail::svg_num(panel) << "\" height=\"" << detail::svg_num(panel)
        << "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";

    if (spec.show_blocks && blocks) {
      const double rad = blocks->rotation_deg * 3.14159265358979323846 / 180.0;
      for (const auto& rect : blocks->geometry) {
        Point corners[4] = {{rect.x0, rect.y0}, {rect.x1, rect.y0},
                            {rect.x1, rect.y1}, {rect.x0, rect.y1}};
        svg << "<polygon points=\"";
        for (int c = 0; c < 4; ++c) {
          Point p = corners[c];
          if (rad != 0.0) p = rotate_about(p, blocks->pivot, rad);
          if (c) svg << ' ';
          svg << detail::svg_num(tr.px(p.x)) << ',' << detail::svg_num(tr.py(p.y));
        }
        svg << "\" fill=\"none\" stroke=\"#808080\" stroke-width=\"0.8\"/>\n";
      }
    }

    auto draw_points = [&](const std::vector<int>& idx, const std::string& color) {
      for (int i : idx) {
        if (only_time && (*task.time)[static_cast<std::size_t>(i)] != *only_time) continue;
        const Point p = task.coords[static_cast<std::size_t>(i)];
        svg << "<circle cx=\"" << detail::svg_num(tr.px(p.x)) << "\" cy=\""
            << detail::svg_num(tr.py(p.y)) << "\" r=\"" << detail::svg_num(spec.point_size)
            << "\" fill=\"" << color << "\"/>\n";
      }
    };
    draw_points(fold.train, spec.train_color);
    draw_points(fold.omitted, spec.omitted_color);
    draw_points(fold.test, spec.test_color);
  };

  if (spec.facet_time) {
    for (std::size_t t = 0; t < time_keys.size(); ++t)
      draw_panel(t, *first_fold,
                 "fold " + std::to_string(first_fold->id) + ", t = " +
                     std::to_string(time_keys[t]),
                 time_keys[t]);
  } else {
    for (std::size_t f = 0; f < selected.size(); ++f) {
      std::string title = "fold " + std::to_string(selected[f]->id);
      if (plan.repeats > 1) title += " (repeat " + std::to_string(spec.repeat) + ")";
      draw_panel(f, *selected[f], title, std::nullopt);
    }
  }

  // Legend: one entry per role actually present.
  struct Entry {
    const char* label;
    const std::string* color;
  };
  std::vector<Entry> entries = {{"test", &spec.test_color}, {"train", &spec.train_color}};
  if (any_omitted) entries.push_back({"omitted", &spec.omitted_color});
  double lx = pad + 4;
  const double ly = height - legend_h / 2;
  for (const auto& e : entries) {
    svg << "<circle cx=\"" << detail::svg_num(lx) << "\" cy=\"" << detail::svg_num(ly)
        << "\" r=\"5\" fill=\"" << *e.color << "\"/>\n";
    svg << "<text x=\"" << detail::svg_num(lx + 10) << "\" y=\"" << detail::svg_num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << e.label << "</text>\n";
    lx += 85;
  }
  svg << "</svg>\n";
  return svg.str();
}

inline void save_partition_svg(const Task& task, const ResamplingPlan& plan,
                               const PlotSpec& spec, const std::string& path,
                               const BlockSet* blocks = nullptr) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << render_partition_svg(task, plan, spec, blocks);
}

}  // namespace stcv::io
