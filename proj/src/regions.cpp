#include "cassini/regions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cassini {

namespace {

struct MethodTag {
  Method method;
  std::string_view name;
};

constexpr std::array<MethodTag, kAllMethods.size()> kMethodTags = {{
    {Method::UndampedDiskNorm, "UNDAMPED_DISK_NORM"},
    {Method::UndampedDiskColsum, "UNDAMPED_DISK_COLSUM"},
    {Method::UndampedOvalNorm, "UNDAMPED_OVAL_NORM"},
    {Method::UndampedOvalRel, "UNDAMPED_OVAL_REL"},
    {Method::UndampedOvalColsum, "UNDAMPED_OVAL_COLSUM"},
    {Method::UndampedOvalRelsum, "UNDAMPED_OVAL_RELSUM"},
    {Method::ModalDiskNorm, "MODAL_DISK_NORM"},
    {Method::ModalDiskRowsum, "MODAL_DISK_ROWSUM"},
    {Method::ModalOvalNorm, "MODAL_OVAL_NORM"},
    {Method::ModalOvalRowsum, "MODAL_OVAL_ROWSUM"},
    {Method::ModalDiskApprox, "MODAL_DISK_APPROX"},
    {Method::Brauer, "BRAUER"},
    {Method::ModifiedOval, "MODIFIED_OVAL"},
}};

constexpr Complex kI{0.0, 1.0};

void add(RegionUnion& u, Primitive p, std::vector<Index> modes) {
  u.primitives.push_back(std::move(p));
  u.mode_labels.push_back(std::move(modes));
}

// Extension per mode after the optional override.
Vector per_mode(Index n, double value, const std::optional<double>& override_value) {
  return Vector::Constant(n, override_value.value_or(value));
}

Vector per_mode(const Vector& values, const std::optional<double>& override_value) {
  return override_value ? Vector::Constant(values.size(), *override_value) : values;
}

void require_noncritical(const std::vector<ModeFocus>& foci, Method method) {
  for (std::size_t j = 0; j < foci.size(); ++j) {
    if (foci[j].critical) {
      throw Error(ErrorKind::CriticalModePresent,
                  std::string(method_name(method)) + " is undefined: mode " + std::to_string(j) +
                      " is critically damped",
                  j);
    }
  }
}

double oval_product(const QuasiOval& o, Complex z) {
  return std::abs(z - o.focus_plus) * std::abs(z - o.focus_minus);
}

double double_product(const DoubleOval& o, Complex z) {
  return (std::abs(z - o.foci[0]) * std::abs(z - o.foci[1])) *
         (std::abs(z - o.foci[2]) * std::abs(z - o.foci[3]));
}

// Largest |λ| that can satisfy the double-oval inequality.
double double_oval_modulus_bound(const DoubleOval& o) {
  std::array<double, 4> a{};
  for (std::size_t i = 0; i < 4; ++i) {
    a[i] = std::abs(o.foci[i]);
  }
  const double amax = *std::max_element(a.begin(), a.end());
  // Π(t − a_i)/t² is increasing beyond amax, so bracket and bisect.
  const auto excess = [&](double t) {
    return (t - a[0]) * (t - a[1]) * (t - a[2]) * (t - a[3]) - o.bound * t * t;
  };
  double lo = amax;
  double hi = std::max(2.0 * amax, 1.0);
  while (excess(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) <= 0.0 ? lo : hi) = mid;
  }
  return hi;
}

Box focus_cover(const std::vector<Complex>& foci, double reach) {
  Box box{foci[0].real(), foci[0].real(), foci[0].imag(), foci[0].imag()};
  for (const Complex& f : foci) {
    box = box.united({f.real(), f.real(), f.imag(), f.imag()});
  }
  return {box.xmin - reach, box.xmax + reach, box.ymin - reach, box.ymax + reach};
}

Box clip(const Box& box, double radius) {
  return {std::max(box.xmin, -radius), std::min(box.xmax, radius), std::max(box.ymin, -radius),
          std::min(box.ymax, radius)};
}

}  // namespace

std::string_view method_name(Method method) {
  for (const auto& tag : kMethodTags) {
    if (tag.method == method) {
      return tag.name;
    }
  }
  return "UNKNOWN";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& tag : kMethodTags) {
    if (tag.name == name) {
      return tag.method;
    }
  }
  return std::nullopt;
}

bool is_rigorous(Method method) { return method != Method::ModalDiskApprox; }

bool is_kappa_based(Method method) {
  return method == Method::ModalDiskNorm || method == Method::ModalDiskRowsum;
}

RegionUnion build_regions(const ModalForm& form, const ModalSplit& split,
                          const std::vector<ModeFocus>& foci, Method method,
                          const BuildOptions& options) {
  const Index n = form.order();
  if (static_cast<Index>(foci.size()) != n || split.d0.order() != n) {
    throw Error(ErrorKind::InvalidInput, "modal form, split and foci disagree in order");
  }
  RegionUnion u;
  u.method = method;
  u.rigorous = is_rigorous(method);

  const Matrix& d = form.damping.matrix();
  const Vector& omega = form.omega;
  const auto& ov = options.extension_override;

  const auto undamped_ovals = [&](const Vector& ext) {
    for (Index j = 0; j < n; ++j) {
      add(u, QuasiOval{kI * omega(j), -kI * omega(j), ext(j), 0.0}, {j});
    }
  };
  const auto undamped_disks = [&](const Vector& radius) {
    for (Index j = 0; j < n; ++j) {
      add(u, Disk{kI * omega(j), radius(j)}, {j});
      add(u, Disk{-kI * omega(j), radius(j)}, {j});
    }
  };
  const auto modal_ovals = [&](const Vector& ext, double q) {
    for (Index j = 0; j < n; ++j) {
      const auto& f = foci[static_cast<std::size_t>(j)];
      add(u, QuasiOval{f.plus, f.minus, ext(j), q}, {j});
    }
  };
  const auto modal_disks = [&](const Vector& radius) {
    for (Index j = 0; j < n; ++j) {
      const auto& f = foci[static_cast<std::size_t>(j)];
      add(u, Disk{f.plus, radius(j)}, {j});
      add(u, Disk{f.minus, radius(j)}, {j});
    }
  };
  // R_j: column sums including the diagonal.
  const auto colsums = [&]() -> Vector { return d.cwiseAbs().colwise().sum().transpose(); };

  switch (method) {
    case Method::UndampedDiskNorm:
      undamped_disks(per_mode(n, spectral_norm(d), ov));
      break;
    case Method::UndampedDiskColsum:
      undamped_disks(per_mode(colsums(), ov));
      break;
    case Method::UndampedOvalNorm:
      undamped_ovals(per_mode(n, spectral_norm(d), ov));
      break;
    case Method::UndampedOvalRel: {
      const Vector inv = omega.cwiseInverse();
      const double rel = spectral_norm(Matrix(inv.asDiagonal() * d * inv.asDiagonal()));
      undamped_ovals(per_mode(Vector(rel * omega.cwiseAbs2()), ov));
      break;
    }
    case Method::UndampedOvalColsum:
      undamped_ovals(per_mode(colsums(), ov));
      break;
    case Method::UndampedOvalRelsum: {
      // ρ_j = Σ_k |d_kj|/(ω_k ω_j), diagonal included.
      Vector ext(n);
      for (Index j = 0; j < n; ++j) {
        double rho = 0.0;
        for (Index k = 0; k < n; ++k) {
          rho += std::abs(d(k, j)) / (omega(k) * omega(j));
        }
        ext(j) = rho * omega(j) * omega(j);
      }
      undamped_ovals(per_mode(ext, ov));
      break;
    }
    case Method::ModalDiskNorm: {
      require_noncritical(foci, method);
      double s_norm = 0.0;
      double s_inv_norm = 0.0;
      for (const auto& f : foci) {
        const Eigen::Matrix2cd s = eigenvector_matrix(f);
        s_norm = std::max(s_norm, spectral_norm(ComplexMatrix(s)));
        s_inv_norm = std::max(s_inv_norm, spectral_norm(ComplexMatrix(s.inverse())));
      }
      const double kappa = s_norm * s_inv_norm;
      modal_disks(Vector(kappa * per_mode(n, split.dprime_norm, ov)));
      break;
    }
    case Method::ModalDiskRowsum: {
      require_noncritical(foci, method);
      Vector radius = per_mode(split.offdiag_sums, ov);
      for (Index j = 0; j < n; ++j) {
        radius(j) *= foci[static_cast<std::size_t>(j)].kappa;
      }
      modal_disks(radius);
      break;
    }
    case Method::ModalOvalNorm:
      modal_ovals(per_mode(n, split.dprime_norm, ov), 0.0);
      break;
    case Method::ModalOvalRowsum:
      modal_ovals(per_mode(split.offdiag_sums, ov), 0.0);
      break;
    case Method::ModalDiskApprox: {
      const double r = ov.value_or(split.dprime_norm);
      for (Index j = 0; j < n; ++j) {
        const auto& f = foci[static_cast<std::size_t>(j)];
        const double gap = std::abs(f.plus - f.minus);
        if (f.critical || gap == 0.0) {
          continue;
        }
        add(u, Disk{f.plus, std::abs(f.plus) * r / gap}, {j});
        add(u, Disk{f.minus, std::abs(f.minus) * r / gap}, {j});
      }
      break;
    }
    case Method::Brauer: {
      const Vector r = per_mode(split.offdiag_sums, ov);
      if (n == 1) {
        const auto& f = foci[0];
        add(u, DoubleOval{{f.plus, f.minus, f.plus, f.minus}, r(0) * r(0)}, {0});
        break;
      }
      for (Index p = 0; p < n; ++p) {
        for (Index q = p + 1; q < n; ++q) {
          const auto& fp = foci[static_cast<std::size_t>(p)];
          const auto& fq = foci[static_cast<std::size_t>(q)];
          add(u, DoubleOval{{fp.plus, fp.minus, fq.plus, fq.minus}, r(p) * r(q)}, {p, q});
        }
      }
      break;
    }
    case Method::ModifiedOval:
      modal_ovals(per_mode(n, split.dprime_norm, ov), split.z_norm);
      break;
  }
  return u;
}

double membership_slack(const Primitive& p, Complex lambda) {
  return std::visit(
      [lambda](const auto& prim) -> double {
        using T = std::decay_t<decltype(prim)>;
        if constexpr (std::is_same_v<T, QuasiOval>) {
          return std::abs(lambda) * prim.r + prim.q - oval_product(prim, lambda);
        } else if constexpr (std::is_same_v<T, Disk>) {
          return prim.radius - std::abs(lambda - prim.center);
        } else {
          return prim.bound * std::norm(lambda) - double_product(prim, lambda);
        }
      },
      p);
}

bool contains(const Primitive& p, Complex lambda) { return membership_slack(p, lambda) >= 0.0; }

bool contains(const RegionUnion& u, Complex lambda) {
  return std::any_of(u.primitives.begin(), u.primitives.end(),
                     [lambda](const Primitive& p) { return contains(p, lambda); });
}

double normalized_slack(const Primitive& p, Complex lambda) {
  const double scale = 1.0 + std::norm(lambda);
  const double slack = membership_slack(p, lambda);
  return std::holds_alternative<DoubleOval>(p) ? slack / (scale * scale) : slack / scale;
}

bool is_degenerate(const Primitive& p) {
  return std::visit(
      [](const auto& prim) -> bool {
        using T = std::decay_t<decltype(prim)>;
        if constexpr (std::is_same_v<T, QuasiOval>) {
          return prim.r == 0.0 && prim.q == 0.0;
        } else if constexpr (std::is_same_v<T, Disk>) {
          return prim.radius == 0.0;
        } else {
          return prim.bound == 0.0;
        }
      },
      p);
}

std::vector<Complex> anchor_points(const Primitive& p) {
  return std::visit(
      [](const auto& prim) -> std::vector<Complex> {
        using T = std::decay_t<decltype(prim)>;
        if constexpr (std::is_same_v<T, QuasiOval>) {
          return {prim.focus_plus, prim.focus_minus};
        } else if constexpr (std::is_same_v<T, Disk>) {
          return {prim.center};
        } else {
          return {prim.foci.begin(), prim.foci.end()};
        }
      },
      p);
}

Box Box::united(const Box& o) const {
  return {std::min(xmin, o.xmin), std::max(xmax, o.xmax), std::min(ymin, o.ymin),
          std::max(ymax, o.ymax)};
}

Box Box::padded(double fraction) const {
  // a flat axis borrows the other extent so that grid cells never collapse
  double base = std::max(width(), height());
  if (base == 0.0) {
    base = std::max({1.0, std::abs(xmin), std::abs(ymin)});
  }
  const double dx = fraction * (width() > 0.0 ? width() : base);
  const double dy = fraction * (height() > 0.0 ? height() : base);
  return {xmin - dx, xmax + dx, ymin - dy, ymax + dy};
}

double oval_modulus_bound(const QuasiOval& oval) {
  const double a = std::abs(oval.focus_plus);
  const double b = std::abs(oval.focus_minus);
  const double s = a + b + oval.r;
  const double c = std::max(0.0, a * b - oval.q);
  return 0.5 * (s + std::sqrt(std::max(0.0, s * s - 4.0 * c)));
}

Box bounding_box(const Primitive& p) {
  return std::visit(
      [](const auto& prim) -> Box {
        using T = std::decay_t<decltype(prim)>;
        if constexpr (std::is_same_v<T, QuasiOval>) {
          // members also lie within √(R·r + q) of one of the foci
          const double r = oval_modulus_bound(prim);
          const double reach = std::sqrt(r * prim.r + prim.q);
          return clip(focus_cover({prim.focus_plus, prim.focus_minus}, reach), r);
        } else if constexpr (std::is_same_v<T, Disk>) {
          return {prim.center.real() - prim.radius, prim.center.real() + prim.radius,
                  prim.center.imag() - prim.radius, prim.center.imag() + prim.radius};
        } else {
          const double r = double_oval_modulus_bound(prim);
          const double reach = std::pow(prim.bound * r * r, 0.25);
          return clip(focus_cover({prim.foci.begin(), prim.foci.end()}, reach), r);
        }
      },
      p);
}

Box bounding_box(const RegionUnion& u) {
  if (u.primitives.empty()) {
    return {-1.0, 1.0, -1.0, 1.0};
  }
  Box box = bounding_box(u.primitives.front());
  for (std::size_t i = 1; i < u.primitives.size(); ++i) {
    box = box.united(bounding_box(u.primitives[i]));
  }
  return box;
}

}  // namespace cassini
