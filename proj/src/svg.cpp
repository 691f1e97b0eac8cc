#include "cassini/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <optional>

namespace cassini {

namespace {

std::string num(double v) {
  if (v == 0.0) {
    v = 0.0;  // no "-0"
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#17becf"};

}  // namespace

std::string render_svg(const std::vector<RegionUnion>& unions,
                       const std::vector<Complex>& eigenvalues, int resolution) {
  std::optional<Box> box;
  const auto grow = [&](const Box& b) { box = box ? box->united(b) : b; };
  for (const RegionUnion& u : unions) {
    if (!u.primitives.empty()) {
      grow(bounding_box(u));
    }
  }
  for (Complex z : eigenvalues) {
    grow(Box{z.real(), z.real(), z.imag(), z.imag()});
  }
  Box view = box.value_or(Box{-1.0, 1.0, -1.0, 1.0});
  if (view.width() <= 0.0 || view.height() <= 0.0) {
    const double half = std::max({view.width(), view.height(), 1.0}) * 0.5;
    const double cx = 0.5 * (view.xmin + view.xmax);
    const double cy = 0.5 * (view.ymin + view.ymax);
    view = Box{cx - half, cx + half, cy - half, cy + half};
  }
  view = view.padded(0.10);
  const double size = std::max(view.width(), view.height());
  const double stroke = size / 400.0;

  // SVG y grows downward; every imaginary part is negated.
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"";
  out += num(800.0 * view.height() / view.width());
  out += "\" viewBox=\"" + num(view.xmin) + " " + num(-view.ymax) + " " + num(view.width()) +
         " " + num(view.height()) + "\">\n";

  const double ax = std::clamp(0.0, view.xmin, view.xmax);
  const double ay = std::clamp(0.0, view.ymin, view.ymax);
  out += "<g stroke=\"#888888\" stroke-width=\"" + num(stroke) + "\">\n";
  out += "<line x1=\"" + num(view.xmin) + "\" y1=\"" + num(-ay) + "\" x2=\"" + num(view.xmax) +
         "\" y2=\"" + num(-ay) + "\"/>\n";
  out += "<line x1=\"" + num(ax) + "\" y1=\"" + num(-view.ymin) + "\" x2=\"" + num(ax) +
         "\" y2=\"" + num(-view.ymax) + "\"/>\n";
  out += "</g>\n";
  const double font = size / 30.0;
  out += "<text x=\"" + num(view.xmax - 2.0 * font) + "\" y=\"" + num(-ay - 0.5 * font) +
         "\" font-size=\"" + num(font) + "\">Re</text>\n";
  out += "<text x=\"" + num(ax + 0.3 * font) + "\" y=\"" + num(-view.ymax + font) +
         "\" font-size=\"" + num(font) + "\">Im</text>\n";

  for (std::size_t k = 0; k < unions.size(); ++k) {
    const RegionUnion& u = unions[k];
    out += "<g id=\"" + std::string(method_name(u.method)) + "\" fill=\"none\" stroke=\"" +
           kColors[k % kColors.size()] + "\" stroke-width=\"" + num(stroke) + "\">\n";
    for (const Primitive& p : u.primitives) {
      for (const Polyline& line : boundary_polyline(p, resolution)) {
        out += "<path d=\"M";
        for (std::size_t i = 0; i + 1 < line.size(); ++i) {
          out += (i == 0 ? "" : " L") + num(line[i].real()) + "," + num(-line[i].imag());
        }
        out += " Z\"/>\n";
      }
    }
    out += "</g>\n";
  }

  const double arm = size / 80.0;
  out += "<g stroke=\"#000000\" stroke-width=\"" + num(stroke) + "\">\n";
  for (Complex z : eigenvalues) {
    const double x = z.real();
    const double y = -z.imag();
    out += "<line x1=\"" + num(x - arm) + "\" y1=\"" + num(y - arm) + "\" x2=\"" + num(x + arm) +
           "\" y2=\"" + num(y + arm) + "\"/>\n";
    out += "<line x1=\"" + num(x - arm) + "\" y1=\"" + num(y + arm) + "\" x2=\"" + num(x + arm) +
           "\" y2=\"" + num(y - arm) + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

void emit_svg(const std::vector<RegionUnion>& unions, const std::vector<Complex>& eigenvalues,
              const std::filesystem::path& path, int resolution) {
  const std::string text = render_svg(unions, eigenvalues, resolution);
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) {
    throw Error(ErrorKind::Io, "cannot write " + path.string());
  }
}

}  // namespace cassini
