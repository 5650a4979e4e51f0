#include "linefig/layout.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "linefig/errors.hpp"

namespace linefig {

std::vector<Point2> force_layout(int nodes, std::span<const WeightedLink> links, std::uint64_t seed, int iterations) {
  if (nodes < 0) throw ValidationError("layout: negative node count");
  if (iterations < 1) throw ValidationError("layout: iterations must be positive");
  std::vector<Point2> pos(static_cast<std::size_t>(nodes));
  if (nodes == 0) return pos;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto& p : pos) {
    p.x = unit(rng);
    p.y = unit(rng);
  }
  if (nodes == 1) return {{0.5, 0.5}};

  double max_w = 0.0;
  for (const auto& l : links) {
    if (l.a < 0 || l.b < 0 || l.a >= nodes || l.b >= nodes) throw ValidationError("layout: link out of range");
    max_w = std::max(max_w, std::abs(l.weight));
  }
  const double k = std::sqrt(1.0 / nodes);
  const double t0 = 0.1;
  std::vector<Point2> disp(pos.size());
  for (int it = 0; it < iterations; ++it) {
    std::fill(disp.begin(), disp.end(), Point2{});
    for (int i = 0; i < nodes; ++i) {
      for (int j = i + 1; j < nodes; ++j) {
        double dx = pos[i].x - pos[j].x;
        double dy = pos[i].y - pos[j].y;
        const double d = std::max(std::hypot(dx, dy), 1e-9);
        const double f = k * k / d;
        dx /= d;
        dy /= d;
        disp[i].x += dx * f;
        disp[i].y += dy * f;
        disp[j].x -= dx * f;
        disp[j].y -= dy * f;
      }
    }
    for (const auto& l : links) {
      if (l.a == l.b) continue;
      const double w = max_w > 0.0 ? std::abs(l.weight) / max_w : 1.0;
      double dx = pos[l.a].x - pos[l.b].x;
      double dy = pos[l.a].y - pos[l.b].y;
      const double d = std::max(std::hypot(dx, dy), 1e-9);
      const double f = w * d * d / k;
      dx /= d;
      dy /= d;
      disp[l.a].x -= dx * f;
      disp[l.a].y -= dy * f;
      disp[l.b].x += dx * f;
      disp[l.b].y += dy * f;
    }
    const double t = t0 * (1.0 - static_cast<double>(it) / iterations);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const double d = std::hypot(disp[i].x, disp[i].y);
      if (d > 0.0) {
        const double step = std::min(d, t);
        pos[i].x += disp[i].x / d * step;
        pos[i].y += disp[i].y / d * step;
      }
    }
  }

  double min_x = pos[0].x, max_x = pos[0].x, min_y = pos[0].y, max_y = pos[0].y;
  for (const auto& p : pos) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
  for (auto& p : pos) {
    p.x = (p.x - min_x) / span;
    p.y = (p.y - min_y) / span;
  }
  return pos;
}

}  // namespace linefig
