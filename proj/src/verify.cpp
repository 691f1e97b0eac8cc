#include "cassini/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cassini {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

Linearization linearize(const ModalForm& form, Layout layout) {
  const Index n = form.order();
  const Matrix& d = form.damping.matrix();
  Matrix a = Matrix::Zero(2 * n, 2 * n);
  if (layout == Layout::Block) {
    a.topRightCorner(n, n) = form.omega.asDiagonal();
    a.bottomLeftCorner(n, n) = -Matrix(form.omega.asDiagonal());
    a.bottomRightCorner(n, n) = -d;
  } else {
    for (Index j = 0; j < n; ++j) {
      a(2 * j, 2 * j + 1) = form.omega(j);
      a(2 * j + 1, 2 * j) = -form.omega(j);
      for (Index k = 0; k < n; ++k) {
        a(2 * j + 1, 2 * k + 1) = -d(j, k);
      }
    }
  }
  return {a, layout};
}

Spectrum true_spectrum(const ModalForm& form) {
  Spectrum s;
  s.values = complex_eig(linearize(form).a);
  std::sort(s.values.begin(), s.values.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const Index n = form.order();
  const ComplexMatrix d = form.damping.matrix().cast<Complex>();
  const ComplexMatrix w2 = form.omega.cwiseAbs2().asDiagonal().toDenseMatrix().cast<Complex>();
  for (Complex lambda : s.values) {
    ComplexMatrix q = lambda * d + w2;
    q.diagonal().array() += lambda * lambda;
    s.residuals.push_back(n > 0 ? smallest_singular_value(q) : 0.0);
  }
  return s;
}

bool residuals_ok(const Spectrum& s, const ModalForm& form, double rtol) {
  const double dnorm = spectral_norm(form.damping.matrix());
  const double wnorm = form.omega.maxCoeff();
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double mod = std::abs(s.values[i]);
    if (s.residuals[i] > rtol * (mod * mod + mod * dnorm + wnorm * wnorm)) {
      return false;
    }
  }
  return true;
}

InclusionReport check_inclusion(const Spectrum& spectrum, const RegionUnion& u) {
  InclusionReport report;
  report.method = u.method;
  report.rigorous = u.rigorous;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (Complex lambda : spectrum.values) {
    InclusionEntry e;
    e.value = lambda;
    e.margin = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < u.primitives.size(); ++p) {
      const double m = normalized_slack(u.primitives[p], lambda);
      if (m > e.margin) {
        e.margin = m;
        e.primitive = static_cast<Index>(p);
      }
    }
    if (!(e.margin >= -kContainmentTol)) {
      e.primitive.reset();
      ++report.violations;
    }
    report.worst_margin = std::min(report.worst_margin, e.margin);
    report.entries.push_back(e);
  }
  report.all_contained = report.violations == 0;
  if (spectrum.values.empty()) {
    report.worst_margin = 0.0;
  }
  return report;
}

DominanceReport compare_regions(const RegionUnion& first, const RegionUnion& second,
                                std::size_t samples, std::uint64_t seed) {
  DominanceReport r;
  r.samples = samples;
  if (first.primitives.empty() && second.primitives.empty()) {
    return r;
  }
  if (first.primitives.empty()) {
    r.box = bounding_box(second);
  } else if (second.primitives.empty()) {
    r.box = bounding_box(first);
  } else {
    r.box = bounding_box(first).united(bounding_box(second));
  }
  const std::uint64_t base = splitmix64(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint64_t s = splitmix64(base ^ (0xD1B54A32D192ED03ULL * (i + 1)));
    const double x = r.box.xmin + unit(s) * r.box.width();
    const double y = r.box.ymin + unit(splitmix64(s)) * r.box.height();
    const Complex z{x, y};
    const bool a = contains(first, z);
    const bool b = contains(second, z);
    r.in_first += a;
    r.in_second += b;
    r.first_not_second += a && !b;
  }
  const double area = r.box.width() * r.box.height();
  if (samples > 0) {
    r.area_first = area * static_cast<double>(r.in_first) / static_cast<double>(samples);
    r.area_second = area * static_cast<double>(r.in_second) / static_cast<double>(samples);
  }
  return r;
}

ComponentCounts count_eigenvalues(const ComponentMap& map, const Spectrum& spectrum) {
  ComponentCounts out;
  out.per_component.assign(map.components.size(), 0);
  for (Complex lambda : spectrum.values) {
    const int c = map.component_at(lambda);
    if (c < 0) {
      ++out.unassigned;
    } else {
      ++out.per_component[static_cast<std::size_t>(c)];
    }
  }
  return out;
}

}  // namespace cassini
