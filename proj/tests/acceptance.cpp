// One line per acceptance criterion. Exit status is nonzero when any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "cassini/contour.hpp"
#include "cassini/svg.hpp"
#include "support.hpp"

using namespace cassini;
using testing::random_psd;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

RegionUnion regions_for(const ModalForm& f, const ModalSplit& s, Method m) {
  return build_regions(f, s, mode_foci(f, s), m);
}

ComponentMap components(const RegionUnion& u, int res) {
  for (;; res *= 2) {
    try {
      return component_analysis(u, res);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResolutionTooCoarse || res >= 8192) {
        throw;
      }
    }
  }
}

// 1 ---------------------------------------------------------------------------

Verdict inclusion_sweep() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  const double scales[] = {0.05, 0.3, 1.0, 3.0};
  std::size_t checked = 0, violations = 0, skipped = 0;
  double worst = std::numeric_limits<double>::infinity();
  const auto audit = [&](const Spectrum& s, const RegionUnion& u) {
    const InclusionReport r = check_inclusion(s, u);
    checked += r.entries.size();
    violations += r.violations;
    worst = std::min(worst, r.worst_margin);
  };
  for (int i = 0; i < 500; ++i) {
    const Index n = 1 + i % 8;
    const ModalForm f = testing::random_form(rng, n, scales[(i / 8) % 4]);
    const Spectrum s = true_spectrum(f);
    const ModalSplit diag = modal_split(f, SplitMode::Diagonal);
    for (Method m : kAllMethods) {
      if (!is_rigorous(m) || m == Method::ModifiedOval) {
        continue;
      }
      try {
        audit(s, regions_for(f, diag, m));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CriticalModePresent) {
          throw;
        }
        ++skipped;
      }
    }
    // clustered frequencies, inexact clusters so that Z ≠ 0
    const ModalForm c = testing::clustered_form(rng, n, 1e-3);
    audit(true_spectrum(c), regions_for(c, modal_split(c, SplitMode::Maximal, 1e-2),
                                           Method::ModifiedOval));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {violations == 0 && worst >= -kContainmentTol,
          fmt("%zu eigenvalue checks, %zu violations, worst margin %.3e, %zu critical skips, "
              "%.1f s",
              checked, violations, worst, skipped, secs)};
}

// 2 ---------------------------------------------------------------------------

Verdict brauer_refinement() {
  std::mt19937_64 rng(1002);
  std::size_t outside = 0, inside = 0;
  for (int i = 0; i < 100; ++i) {
    const ModalForm f = testing::random_form(rng, 2 + i % 7);
    const ModalSplit s = modal_split(f, SplitMode::Diagonal);
    const DominanceReport d = compare_regions(regions_for(f, s, Method::Brauer),
                                              regions_for(f, s, Method::ModalOvalRowsum),
                                              kDefaultSamples, 1000 + i);
    outside += d.first_not_second;
    inside += d.in_first;
  }
  return {outside == 0,
          fmt("100 systems x %zu points, %zu Brauer hits, %zu outside the oval union",
              kDefaultSamples, inside, outside)};
}

// 3 ---------------------------------------------------------------------------

// Largest chord through `center` of the component of p around it.
double chord_diameter(const Primitive& p, Complex center, double scale) {
  const auto exit = [&](Complex dir) {
    const double step = scale / 400.0;
    double t = 0.0;
    while (contains(p, center + (t + step) * dir) && t < 10.0 * scale) {
      t += step;
    }
    double lo = t, hi = t + step;
    for (int k = 0; k < 60; ++k) {
      const double mid = 0.5 * (lo + hi);
      (contains(p, center + mid * dir) ? lo : hi) = mid;
    }
    return lo;
  };
  double best = 0.0;
  for (int k = 0; k < 16; ++k) {
    const Complex dir = std::polar(1.0, M_PI * k / 16.0);
    best = std::max(best, exit(dir) + exit(-dir));
  }
  return best;
}

Verdict tightness() {
  std::mt19937_64 rng(1003);
  int smaller = 0, disjoint = 0;
  double worst_ratio = 1.0;
  for (int i = 0; i < 100; ++i) {
    const ModalForm f = testing::lightly_damped_form(rng, 1 + i % 6);
    const ModalSplit s = modal_split(f, SplitMode::Diagonal);
    const RegionUnion ovals = regions_for(f, s, Method::UndampedOvalNorm);
    const RegionUnion disks = regions_for(f, s, Method::UndampedDiskNorm);
    const DominanceReport d = compare_regions(ovals, disks, 100000, 3000 + i);
    smaller += d.area_first <= d.area_second;
    if (components(ovals, kDefaultResolution).components.size() !=
        2 * static_cast<std::size_t>(f.order())) {
      continue;
    }
    ++disjoint;
    const double dnorm = spectral_norm(f.damping.matrix());
    for (Index j = 0; j < f.order(); ++j) {
      const Primitive& p = ovals.primitives[static_cast<std::size_t>(j)];
      for (Complex focus : {Complex(0, f.omega(j)), Complex(0, -f.omega(j))}) {
        // half-radius disks: diameter ‖D‖
        const double ratio = chord_diameter(p, focus, dnorm) / dnorm;
        if (std::abs(std::log(ratio)) > std::abs(std::log(worst_ratio))) {
          worst_ratio = ratio;
        }
      }
    }
  }
  const bool area_ok = smaller >= 95;
  const bool diam_ok = worst_ratio <= 1.3 && worst_ratio >= 1.0 / 1.3;
  return {area_ok && diam_ok,
          fmt("ovals <= disks in %d/100; %d systems fully split, worst diameter ratio %.4f",
              smaller, disjoint, worst_ratio)};
}

// 4, 5 ------------------------------------------------------------------------

struct Certified {
  ModalForm form;
  CertificateVariant variant;
  OverdampedCertificate cert;
};

std::vector<Certified> certified_systems(std::size_t& tried) {
  std::mt19937_64 rng(1004);
  std::vector<Certified> out;
  tried = 0;
  for (int i = 0; i < 200; ++i, ++tried) {
    const ModalForm f = i % 2 == 0 ? testing::near_modal_overdamped_form(rng, 1 + i % 8)
                                   : to_modal(random_system(rng, {1 + i % 8, 1.0, true}));
    const ModalSplit s = modal_split(f, SplitMode::Diagonal);
    for (auto v : {CertificateVariant::Norm, CertificateVariant::Gershgorin}) {
      const CertificateResult r = sufficient_certificate(f, s, v);
      if (const auto* c = std::get_if<OverdampedCertificate>(&r)) {
        out.push_back({f, v, *c});
      }
    }
  }
  return out;
}

Verdict certificate_soundness(const std::vector<Certified>& certs, std::size_t tried) {
  std::size_t failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const Certified& c : certs) {
    const DefinitenessInterval exact = exact_definiteness_interval(modal_system(c.form));
    if (exact.empty) {
      ++failures;
      continue;
    }
    const double slack = std::min((c.cert.p_minus - exact.lo) / (1 + std::abs(exact.lo)),
                                  (exact.hi - c.cert.p_plus) / (1 + std::abs(exact.hi)));
    worst = std::min(worst, slack);
    failures += slack < -1e-8;
  }
  Vector w(2);
  w << 1, 2;
  Matrix d(2, 2);
  d << 6, 0.1, 0.1, 10;
  const ModalForm f = modal_form_from(w, SymMatrix(d));
  const CertificateResult r =
      sufficient_certificate(f, modal_split(f, SplitMode::Diagonal), CertificateVariant::Norm);
  const auto* c = std::get_if<OverdampedCertificate>(&r);
  const double em = c ? std::abs(c->p_minus - (-5.9 - std::sqrt(30.81)) / 2) : 1.0;
  const double ep = c ? std::abs(c->p_plus - (-9.9 + std::sqrt(82.01)) / 2) : 1.0;
  return {failures == 0 && !certs.empty() && em <= 1e-12 && ep <= 1e-12,
          fmt("%zu certificates from %zu systems, %zu unsound, worst slack %.3e; "
              "endpoint errors %.1e, %.1e",
              certs.size(), tried, failures, worst, em, ep)};
}

Verdict interval_inclusion(const std::vector<Certified>& certs) {
  std::size_t eigenvalues = 0, exceptions = 0;
  for (const Certified& c : certs) {
    const IntervalBounds b =
        eigenvalue_intervals(c.form, modal_split(c.form, SplitMode::Diagonal), c.variant);
    for (double lambda : testing::real_spectrum(modal_system(c.form))) {
      ++eigenvalues;
      const double tol = 1e-9 * (1 + std::abs(lambda));
      // p₋ itself is an eigenvalue when D′ = 0; split the groups inside the gap
      if (lambda < 0.5 * (b.p_minus + b.p_plus)) {
        exceptions += !b.in_negative_group(lambda, tol) || lambda > b.p_minus + tol;
      } else {
        exceptions += !b.in_positive_group(lambda, tol) || lambda < b.p_plus - tol;
      }
    }
  }
  return {exceptions == 0 && eigenvalues > 0,
          fmt("%zu eigenvalues over %zu certified cases, %zu exceptions", eigenvalues,
              certs.size(), exceptions)};
}

// 6 ---------------------------------------------------------------------------

Matrix scaled_psd(std::mt19937_64& rng, Index n, double size) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Matrix p = random_psd(rng, n, 1 + static_cast<Index>(u(rng) * n) % n);
  return p * (u(rng) * size / spectral_norm(p));
}

// Symmetric S with −A ≤ S ≤ A, scaled by ε.
Matrix relative_perturbation(std::mt19937_64& rng, const Matrix& a, double eps) {
  const Index n = a.rows();
  const SymEig e = sym_eig(SymMatrix(a));
  const Matrix root = e.vectors * e.values.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                      e.vectors.transpose();
  const Matrix g = normal_matrix(rng, n, n);
  Matrix r = g + g.transpose();
  r /= spectral_norm(r);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return eps * u(rng) * root * r * root;
}

Verdict monotonicity() {
  std::mt19937_64 rng(1006);
  double worst = std::numeric_limits<double>::infinity();
  std::size_t checks = 0;
  for (int i = 0; i < 100; ++i) {
    const Index n = 1 + i % 6;
    const DampedSystem s = random_system(rng, {n, 1.0, true});
    const Matrix dm = scaled_psd(rng, n, 0.1 * sym_eigenvalues(s.mass()).minCoeff());
    const Matrix dc = scaled_psd(rng, n, 0.1 * spectral_norm(s.damping().matrix()));
    const Matrix dk = scaled_psd(rng, n, 0.1 * sym_eigenvalues(s.stiffness()).minCoeff());
    const DampedSystem hat(SymMatrix(Matrix(s.mass().matrix() - dm)),
                           SymMatrix(Matrix(s.damping().matrix() + dc)),
                           SymMatrix(Matrix(s.stiffness().matrix() - dk)));
    const std::vector<double> a = testing::real_spectrum(s);
    const std::vector<double> b = testing::real_spectrum(hat);
    for (Index k = 0; k < n; ++k) {
      const auto lo = static_cast<std::size_t>(k);
      const auto hi = static_cast<std::size_t>(n + k);
      // λ̂⁻ ≤ λ⁻ and λ⁺ ≤ λ̂⁺
      worst = std::min(worst, (a[lo] - b[lo]) / (1 + std::abs(a[lo])));
      worst = std::min(worst, (b[hi] - a[hi]) / (1 + std::abs(a[hi])));
      checks += 2;
    }
  }
  std::size_t envelope_checks = 0, envelope_misses = 0, inadmissible = 0;
  for (int i = 0; i < 100; ++i) {
    const Index n = 1 + i % 6;
    const ModalForm f = testing::modal_overdamped_form(rng, n);
    // d is the system's minimal damping ratio, which can sit below min θ_j
    const double d = min_damping_d(modal_system(f)).value;
    if (d <= 1.0) {
      ++inadmissible;
      continue;
    }
    const double eps = 0.9 * (d - 1) / (d + 1);
    const EtaEnvelope e = eta_envelope(f, eps);
    const Matrix m = Matrix::Identity(n, n);
    const Matrix c = f.damping.matrix();
    const Matrix k = f.omega.cwiseAbs2().asDiagonal();
    const DampedSystem hat(SymMatrix(Matrix(m + relative_perturbation(rng, m, eps))),
                           SymMatrix(Matrix(c + relative_perturbation(rng, c, eps))),
                           SymMatrix(Matrix(k + relative_perturbation(rng, k, eps))));
    const std::vector<double> ev = testing::real_spectrum(hat);
    for (Index j = 0; j < n; ++j) {
      const double minus = ev[static_cast<std::size_t>(j)];
      const double plus = ev[static_cast<std::size_t>(n + j)];
      const auto inside = [](double x, double lo, double hi) {
        const double tol = 1e-9 * (1 + std::abs(x));
        return x >= lo - tol && x <= hi + tol;
      };
      envelope_misses += !inside(minus, e.minus_lower(j), e.minus_upper(j));
      envelope_misses += !inside(plus, e.plus_lower(j), e.plus_upper(j));
      envelope_checks += 2;
    }
  }
  return {worst >= -1e-9 && envelope_misses == 0,
          fmt("%zu ordered pairs, worst slack %.3e; eta envelope %zu/%zu inside "
              "(%zu systems with d <= 1 skipped)",
              checks, worst, envelope_checks - envelope_misses, envelope_checks, inadmissible)};
}

// 7 ---------------------------------------------------------------------------

double fit_objective(const ModalForm& f, double a, double b) {
  Matrix r = f.damping.matrix();
  r.diagonal() -= (a + b * f.omega.cwiseAbs2().array()).matrix();
  return r.squaredNorm();
}

std::pair<double, double> grid_fit(const ModalForm& f) {
  double a = 0.0, b = 0.0;
  double step = 1.0 + f.damping.matrix().cwiseAbs().maxCoeff();
  for (int level = 0; level < 60; ++level) {
    double best = fit_objective(f, a, b);
    double ba = a, bb = b;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double v = fit_objective(f, a + i * step, b + j * step);
        if (v < best) {
          best = v;
          ba = a + i * step;
          bb = b + j * step;
        }
      }
    }
    a = ba;
    b = bb;
    step *= 0.5;
  }
  return {a, b};
}

Verdict proportional() {
  std::mt19937_64 rng(1007);
  int spectral_fail = 0, frobenius_fail = 0, grid_fail = 0;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const ModalForm f = testing::random_form(rng, 2 + i % 7);
    const ProportionalFit fit = proportional_fit(f);
    const ModalSplit s = modal_split(f, SplitMode::Diagonal);
    const double gap = fit.residual_norm - s.dprime_norm;
    worst_gap = std::min(worst_gap, gap / (1 + s.dprime_norm));
    spectral_fail += gap < -1e-12 * (1 + s.dprime_norm);
    frobenius_fail += fit.residual_frobenius < s.dprime.matrix().norm() * (1 - 1e-12);
    const auto [a, b] = grid_fit(f);
    grid_fail += std::abs(a - fit.alpha) > 1e-6 || std::abs(b - fit.beta) > 1e-6;
  }
  return {spectral_fail == 0 && grid_fail == 0,
          fmt("spectral-norm inequality fails in %d/200 (worst relative gap %.3e); "
              "Frobenius version fails in %d/200; grid oracle mismatches %d/200",
              spectral_fail, worst_gap, frobenius_fail, grid_fail)};
}

// 8 ---------------------------------------------------------------------------

Verdict spread() {
  std::mt19937_64 rng(1008);
  int exceptions = 0;
  for (int i = 0; i < 500; ++i) {
    const Index n = 2 + i % 9;
    Partition p;
    std::uniform_int_distribution<Index> width(1, n);
    for (Index b = 0; b < n;) {
      const Index w = std::min(width(rng), n - b);
      p.push_back({b, w});
      b += w;
    }
    const Matrix g = normal_matrix(rng, n, n);
    const SymMatrix h(Matrix(0.5 * (g + g.transpose())));
    const SpreadBounds sb = spread_bounds(h, p);
    const double tol = 1e-12 * (1 + sb.spread);
    for (Index k = 0; k < n; ++k) {
      exceptions += sb.offdiag_eigenvalues(k) < sb.lower(k) - tol;
      exceptions += sb.offdiag_eigenvalues(k) > sb.upper(k) + tol;
    }
    exceptions += sb.offdiag_norm > sb.spread + tol;
    const SymMatrix psd(random_psd(rng, n, 1 + i % n));
    exceptions +=
        spread_bounds(psd, p).offdiag_norm > spectral_norm(psd.matrix()) * (1 + 1e-12) + 1e-15;
  }
  return {exceptions == 0, fmt("500 partitioned matrices, %d exceptions", exceptions)};
}

// 9 ---------------------------------------------------------------------------

struct Panel {
  double d;
  double r;
  std::size_t golden;  // component count at the default resolution
};

Verdict figures() {
  const Panel panels[] = {{0.1, 0.3, 2}, {1.0, 0.3, 2}, {1.7, 0.3, 1}, {2.3, 0.3, 1}, {2.2, 0.1, 2}};
  std::string counts;
  bool ok = true;
  for (const Panel& p : panels) {
    const ModeFocus f = focus_for(p.d, 1.0);
    RegionUnion u;
    u.primitives.push_back(QuasiOval{f.plus, f.minus, p.r, 0.0});
    u.mode_labels.push_back({0});
    const std::size_t got = component_analysis(u).components.size();
    const std::string a = render_svg({u}, {f.plus, f.minus}, kDefaultResolution);
    const std::string b = render_svg({u}, {f.plus, f.minus}, kDefaultResolution);
    const bool drawn = a.find("<path") != std::string::npos;
    ok = ok && got == p.golden && a == b && drawn;
    counts += fmt("%s(d=%g r=%g: %zu)", counts.empty() ? "" : " ", p.d, p.r, got);
  }
  return {ok, counts + ", SVG byte-stable"};
}

// 10 --------------------------------------------------------------------------

Verdict component_law() {
  std::mt19937_64 rng(1010);
  int disjoint = 0, merged = 0, failures = 0, refined = 0;
  for (int i = 0; i < 100; ++i) {
    const Index n = 1 + i % 5;
    const ModalForm f = i % 2 == 0 ? testing::lightly_damped_form(rng, n)
                                   : testing::random_form(rng, n, 0.3);
    const RegionUnion u = regions_for(f, modal_split(f, SplitMode::Diagonal), Method::ModalOvalNorm);
    const Spectrum s = true_spectrum(f);
    bool holds = false;
    bool split = false;
    // a touching pair can be fused by a coarse raster; refine before judging
    for (int res : {512, 1024, 2048}) {
      const ComponentMap map = components(u, res);
      const ComponentCounts c = count_eigenvalues(map, s);
      holds = c.unassigned == 0;
      for (std::size_t k = 0; k < map.components.size(); ++k) {
        holds = holds && c.per_component[k] == map.components[k].focus_count;
      }
      split = map.components.size() == 2 * static_cast<std::size_t>(n);
      if (holds) {
        break;
      }
      ++refined;
    }
    (split ? disjoint : merged) += 1;
    failures += !holds;
  }
  return {failures == 0,
          fmt("%d fully split systems, %d with merged components, %d law failures, "
              "%d refinements",
              disjoint, merged, failures, refined)};
}

}  // namespace

int main() {
  std::size_t tried = 0;
  std::vector<Certified> certs;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"inclusion soundness", inclusion_sweep},
      {"Brauer refinement", brauer_refinement},
      {"tightness", tightness},
      {"certificate soundness",
       [&] {
         certs = certified_systems(tried);
         return certificate_soundness(certs, tried);
       }},
      {"interval inclusion", [&] { return interval_inclusion(certs); }},
      {"monotonicity", monotonicity},
      {"proportional comparison", proportional},
      {"spread estimates", spread},
      {"figure regression", figures},
      {"component-count law", component_law},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v{false, ""};
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("criterion %2zu %-24s %s  %s\n", i + 1, criteria[i].first, v.pass ? "PASS" : "FAIL",
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
