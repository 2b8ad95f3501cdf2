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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace stcv {

/// Planar point. Coordinates are Euclidean, in consistent length units.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double sq_dist(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(Point a, Point b) { return std::sqrt(sq_dist(a, b)); }

/// Axis-aligned bounding box.
struct Bounds {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void expand(Point p) {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
    xmax = std::max(xmax, p.x);
    ymax = std::max(ymax, p.y);
  }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  Point center() const { return {(xmin + xmax) / 2.0, (ymin + ymax) / 2.0}; }
};

inline Bounds bounds_of(const std::vector<Point>& pts) {
  Bounds b;
  for (const Point& p : pts) b.expand(p);
  return b;
}

/// Rotate `p` by `radians` around `pivot` (counterclockwise).
inline Point rotate_about(Point p, Point pivot, double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  const double dx = p.x - pivot.x;
  const double dy = p.y - pivot.y;
  return {pivot.x + c * dx - s * dy, pivot.y + s * dx + c * dy};
}

}  // namespace stcv
