#include "cassini/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>

namespace cassini {

namespace {

struct Grid {
  Box box;
  int n = 0;  // cells per side

  double hx() const { return box.width() / n; }
  double hy() const { return box.height() / n; }
  Complex vertex(int i, int j) const { return {box.xmin + i * hx(), box.ymin + j * hy()}; }
  Complex center(int i, int j) const {
    return {box.xmin + (i + 0.5) * hx(), box.ymin + (j + 0.5) * hy()};
  }
};

// Edge ids: horizontal edge (i,j)-(i+1,j) is even, vertical (i,j)-(i,j+1) odd.
std::int64_t horizontal_edge(int i, int j, int n) {
  return 2 * (static_cast<std::int64_t>(j) * (n + 1) + i);
}
std::int64_t vertical_edge(int i, int j, int n) {
  return 2 * (static_cast<std::int64_t>(j) * (n + 1) + i) + 1;
}

}  // namespace

std::vector<Polyline> boundary_polyline(const Primitive& p, int resolution) {
  if (resolution < kMinResolution) {
    throw Error(ErrorKind::InvalidInput,
                "resolution must be at least " + std::to_string(kMinResolution));
  }
  if (is_degenerate(p)) {
    return {};
  }
  const Grid grid{bounding_box(p).padded(0.05), resolution};
  const int n = resolution;
  const int stride = n + 1;
  std::vector<double> value(static_cast<std::size_t>(stride) * stride);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      value[static_cast<std::size_t>(j) * stride + i] = -membership_slack(p, grid.vertex(i, j));
    }
  }
  const auto v = [&](int i, int j) { return value[static_cast<std::size_t>(j) * stride + i]; };

  std::unordered_map<std::int64_t, Complex> points;
  std::unordered_map<std::int64_t, std::vector<std::int64_t>> links;

  const auto crossing = [&](std::int64_t id) {
    auto it = points.find(id);
    if (it != points.end()) {
      return;
    }
    const auto cell = id / 2;
    const int i = static_cast<int>(cell % stride);
    const int j = static_cast<int>(cell / stride);
    const int i2 = (id % 2 == 0) ? i + 1 : i;
    const int j2 = (id % 2 == 0) ? j : j + 1;
    const double va = v(i, j);
    const double vb = v(i2, j2);
    const double t = va / (va - vb);
    points.emplace(id, grid.vertex(i, j) + t * (grid.vertex(i2, j2) - grid.vertex(i, j)));
  };
  const auto link = [&](std::int64_t a, std::int64_t b) {
    crossing(a);
    crossing(b);
    links[a].push_back(b);
    links[b].push_back(a);
  };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const bool c0 = v(i, j) < 0.0;
      const bool c1 = v(i + 1, j) < 0.0;
      const bool c2 = v(i + 1, j + 1) < 0.0;
      const bool c3 = v(i, j + 1) < 0.0;
      const int config = c0 | (c1 << 1) | (c2 << 2) | (c3 << 3);
      if (config == 0 || config == 15) {
        continue;
      }
      const std::int64_t bottom = horizontal_edge(i, j, n);
      const std::int64_t top = horizontal_edge(i, j + 1, n);
      const std::int64_t left = vertical_edge(i, j, n);
      const std::int64_t right = vertical_edge(i + 1, j, n);
      if (config == 0b0101 || config == 0b1010) {
        const double mid = 0.25 * (v(i, j) + v(i + 1, j) + v(i + 1, j + 1) + v(i, j + 1));
        const bool center_in = mid < 0.0;
        // cut off the two corners that are not joined through the center
        if ((config == 0b0101) == center_in) {
          link(bottom, right);  // corner c1
          link(top, left);      // corner c3
        } else {
          link(left, bottom);  // corner c0
          link(right, top);    // corner c2
        }
        continue;
      }
      std::vector<std::int64_t> ends;
      if (c0 != c1) ends.push_back(bottom);
      if (c1 != c2) ends.push_back(right);
      if (c3 != c2) ends.push_back(top);
      if (c0 != c3) ends.push_back(left);
      link(ends[0], ends[1]);
    }
  }

  // Trace loops in a deterministic order.
  std::vector<std::int64_t> ids;
  ids.reserve(links.size());
  for (const auto& [id, _] : links) {
    ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  std::set<std::int64_t> visited;
  std::vector<Polyline> out;
  for (std::int64_t start : ids) {
    if (visited.count(start)) {
      continue;
    }
    Polyline line;
    std::int64_t prev = -1;
    std::int64_t cur = start;
    while (true) {
      visited.insert(cur);
      line.push_back(points.at(cur));
      std::int64_t next = -1;
      for (std::int64_t cand : links.at(cur)) {
        if (cand != prev && !visited.count(cand)) {
          next = cand;
          break;
        }
      }
      if (next < 0) {
        break;
      }
      prev = cur;
      cur = next;
    }
    if (line.size() >= 3) {
      line.push_back(line.front());
      out.push_back(std::move(line));
    }
  }
  return out;
}

int ComponentMap::component_at(Complex lambda) const {
  if (!box.contains(lambda) || resolution <= 0) {
    return -1;
  }
  const double hx = cell_width();
  const double hy = cell_height();
  const int ci = std::clamp(static_cast<int>((lambda.real() - box.xmin) / hx), 0, resolution - 1);
  const int cj = std::clamp(static_cast<int>((lambda.imag() - box.ymin) / hy), 0, resolution - 1);
  const auto at = [&](int i, int j) { return labels[static_cast<std::size_t>(j) * resolution + i]; };
  if (at(ci, cj) >= 0) {
    return at(ci, cj);
  }
  int best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int dj = -2; dj <= 2; ++dj) {
    for (int di = -2; di <= 2; ++di) {
      const int i = ci + di;
      const int j = cj + dj;
      if (i < 0 || j < 0 || i >= resolution || j >= resolution || at(i, j) < 0) {
        continue;
      }
      const Complex c{box.xmin + (i + 0.5) * hx, box.ymin + (j + 0.5) * hy};
      const double dist = std::abs(c - lambda);
      if (dist < best_dist) {
        best_dist = dist;
        best = at(i, j);
      }
    }
  }
  return best;
}

ComponentMap component_analysis(const RegionUnion& u, int resolution) {
  if (resolution < kMinResolution) {
    throw Error(ErrorKind::InvalidInput,
                "resolution must be at least " + std::to_string(kMinResolution));
  }
  if (u.primitives.empty()) {
    throw Error(ErrorKind::InvalidInput, "cannot analyze an empty union");
  }
  const int n = resolution;
  const Grid grid{bounding_box(u).padded(0.02), n};
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  const std::size_t count = u.primitives.size();

  std::vector<char> filled(cells, 0);
  std::vector<char> covered(count, 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Complex c = grid.center(i, j);
      for (std::size_t p = 0; p < count; ++p) {
        if (contains(u.primitives[p], c)) {
          filled[static_cast<std::size_t>(j) * n + i] = 1;
          covered[p] = 1;
        }
      }
    }
  }
  for (std::size_t p = 0; p < count; ++p) {
    if (!covered[p] && !is_degenerate(u.primitives[p])) {
      throw Error(ErrorKind::ResolutionTooCoarse,
                  "primitive " + std::to_string(p) + " covers no cell at resolution " +
                      std::to_string(n),
                  p);
    }
  }

  const auto cell_of = [&](Complex z) -> std::ptrdiff_t {
    if (!grid.box.contains(z)) {
      return -1;
    }
    const int i = std::clamp(static_cast<int>((z.real() - grid.box.xmin) / grid.hx()), 0, n - 1);
    const int j = std::clamp(static_cast<int>((z.imag() - grid.box.ymin) / grid.hy()), 0, n - 1);
    return static_cast<std::ptrdiff_t>(j) * n + i;
  };
  std::vector<std::pair<std::size_t, std::ptrdiff_t>> anchors;
  for (std::size_t p = 0; p < count; ++p) {
    for (const Complex& a : anchor_points(u.primitives[p])) {
      const auto cell = cell_of(a);
      if (cell >= 0) {
        filled[static_cast<std::size_t>(cell)] = 1;
        anchors.emplace_back(p, cell);
      }
    }
  }

  ComponentMap map;
  map.box = grid.box;
  map.resolution = n;
  map.labels.assign(cells, -1);
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < cells; ++start) {
    if (!filled[start] || map.labels[start] >= 0) {
      continue;
    }
    const int label = static_cast<int>(map.components.size());
    map.components.emplace_back();
    map.labels[start] = label;
    queue.push_back(start);
    std::size_t size = 0;
    while (!queue.empty()) {
      const std::size_t cell = queue.front();
      queue.pop_front();
      ++size;
      const int i = static_cast<int>(cell % n);
      const int j = static_cast<int>(cell / n);
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int ni = i + di[k];
        const int nj = j + dj[k];
        if (ni < 0 || nj < 0 || ni >= n || nj >= n) {
          continue;
        }
        const std::size_t next = static_cast<std::size_t>(nj) * n + ni;
        if (filled[next] && map.labels[next] < 0) {
          map.labels[next] = label;
          queue.push_back(next);
        }
      }
    }
    map.components.back().cells = size;
  }

  // Attribute primitives to components.
  std::vector<std::set<Index>> prims(map.components.size());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int label = map.labels[static_cast<std::size_t>(j) * n + i];
      if (label < 0) {
        continue;
      }
      const Complex c = grid.center(i, j);
      for (std::size_t p = 0; p < count; ++p) {
        if (contains(u.primitives[p], c)) {
          prims[static_cast<std::size_t>(label)].insert(static_cast<Index>(p));
        }
      }
    }
  }
  for (const auto& [p, cell] : anchors) {
    const int label = map.labels[static_cast<std::size_t>(cell)];
    prims[static_cast<std::size_t>(label)].insert(static_cast<Index>(p));
    ++map.components[static_cast<std::size_t>(label)].focus_count;
  }
  for (std::size_t c = 0; c < map.components.size(); ++c) {
    auto& comp = map.components[c];
    comp.primitives.assign(prims[c].begin(), prims[c].end());
    std::set<Index> modes;
    for (Index p : comp.primitives) {
      const auto& labels = u.mode_labels[static_cast<std::size_t>(p)];
      modes.insert(labels.begin(), labels.end());
    }
    comp.modes.assign(modes.begin(), modes.end());
  }
  return map;
}

}  // namespace cassini
