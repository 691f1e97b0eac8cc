#include "cassini/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cassini/contour.hpp"
#include "cassini/overdamped.hpp"
#include "cassini/random_systems.hpp"
#include "cassini/report.hpp"
#include "cassini/svg.hpp"
#include "cassini/system_io.hpp"
#include "cassini/verify.hpp"

namespace cassini {

namespace {

struct Config {
  std::string input;
  std::string mm_m;
  std::string mm_c;
  std::string mm_k;
  std::string output;
  std::vector<std::string> methods;
  std::string split = "diagonal";
  int resolution = kDefaultResolution;
  std::uint64_t seed = 1;
  bool json = false;
  std::optional<double> epsilon;
  std::optional<double> r_override;
  bool overdamped = false;
  double rtol = kDefaultRtol;
  double cluster_tol = kDefaultClusterTol;
  Index n = 3;
  double damping_scale = 1.0;
};

DampedSystem load(const Config& cfg) {
  const bool mm = !cfg.mm_m.empty() || !cfg.mm_c.empty() || !cfg.mm_k.empty();
  if (mm) {
    if (!cfg.input.empty() || cfg.mm_m.empty() || cfg.mm_c.empty() || cfg.mm_k.empty()) {
      throw Error(ErrorKind::InvalidInput,
                  "give either --input or all three of --mm-m, --mm-c, --mm-k");
    }
    return DampedSystem(read_matrix_market_file(cfg.mm_m), read_matrix_market_file(cfg.mm_c),
                        read_matrix_market_file(cfg.mm_k));
  }
  if (cfg.input.empty()) {
    throw Error(ErrorKind::InvalidInput, "no system given (use --input)");
  }
  return load_system(cfg.input);
}

std::vector<Method> selected_methods(const Config& cfg, std::vector<Method> fallback) {
  if (cfg.methods.empty()) {
    return fallback;
  }
  std::vector<Method> out;
  for (const std::string& name : cfg.methods) {
    const auto m = parse_method(name);
    if (!m) {
      throw Error(ErrorKind::InvalidInput, "unknown method " + name);
    }
    out.push_back(*m);
  }
  return out;
}

std::vector<Method> rigorous_methods() {
  std::vector<Method> out;
  for (Method m : kAllMethods) {
    if (is_rigorous(m)) {
      out.push_back(m);
    }
  }
  return out;
}

struct Analysis {
  ModalForm form;
  ModalSplit diagonal;
  ModalSplit maximal;
  std::vector<ModeFocus> diagonal_foci;
  std::vector<ModeFocus> maximal_foci;
};

Analysis analyze_system(const DampedSystem& sys, const Config& cfg) {
  Analysis a{to_modal(sys), {}, {}, {}, {}};
  a.diagonal = modal_split(a.form, SplitMode::Diagonal);
  a.maximal = modal_split(a.form, SplitMode::Maximal, cfg.cluster_tol);
  a.diagonal_foci = mode_foci(a.form, a.diagonal);
  a.maximal_foci = mode_foci(a.form, a.maximal);
  return a;
}

// MODIFIED_OVAL always lives on the maximal split; the rest follow --split.
RegionUnion build(const Analysis& a, Method method, const Config& cfg) {
  const bool maximal = method == Method::ModifiedOval || cfg.split == "maximal";
  BuildOptions options;
  options.extension_override = cfg.r_override;
  return maximal ? build_regions(a.form, a.maximal, a.maximal_foci, method, options)
                 : build_regions(a.form, a.diagonal, a.diagonal_foci, method, options);
}

// Doubles the resolution until every primitive is resolved.
ComponentMap components(const RegionUnion& u, int resolution) {
  for (int res = resolution;; res *= 2) {
    try {
      return component_analysis(u, res);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResolutionTooCoarse || res >= 4096) {
        throw;
      }
    }
  }
}

std::vector<double> reals(const Vector& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> complex_pair(Complex z) { return {z.real(), z.imag()}; }

void emit(const Report& report, const Config& cfg, std::ostream& out, bool to_file) {
  const std::string text = cfg.json ? report.json() : report.text();
  if (to_file && !cfg.output.empty()) {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) {
      throw Error(ErrorKind::Io, "cannot write " + cfg.output);
    }
    return;
  }
  out << text;
}

int cmd_analyze(const Config& cfg, std::ostream& out) {
  const DampedSystem sys = load(cfg);
  const Analysis a = analyze_system(sys, cfg);
  Report r;
  r.add("n", static_cast<std::int64_t>(a.form.order()));
  r.add("omega", reals(a.form.omega));
  r.add("modally_damped", is_modally_damped(sys, cfg.rtol));
  r.add("damping_norm", spectral_norm(a.form.damping.matrix()));
  r.add("diagonal.dprime_norm", a.diagonal.dprime_norm);
  r.add("diagonal.offdiag_sums", reals(a.diagonal.offdiag_sums));
  r.add("maximal.blocks", a.maximal.partition.size());
  r.add("maximal.dprime_norm", a.maximal.dprime_norm);
  r.add("maximal.z_norm", a.maximal.z_norm);
  std::size_t critical = 0;
  for (std::size_t j = 0; j < a.diagonal_foci.size(); ++j) {
    const ModeFocus& f = a.diagonal_foci[j];
    const std::string key = "mode." + std::to_string(j);
    r.add(key + ".plus", complex_pair(f.plus));
    r.add(key + ".minus", complex_pair(f.minus));
    r.add(key + ".theta", f.theta);
    r.add(key + ".kappa", f.kappa);
    critical += f.critical;
  }
  r.add("critical_modes", critical);
  try {
    const ProportionalFit fit = proportional_fit(a.form);
    r.add("proportional.alpha", fit.alpha);
    r.add("proportional.beta", fit.beta);
    r.add("proportional.residual_norm", fit.residual_norm);
    r.add("proportional.residual_frobenius", fit.residual_frobenius);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularFit) {
      throw;
    }
    r.add("proportional.status", "singular");
  }
  emit(r, cfg, out, true);
  return kExitOk;
}

int cmd_regions(const Config& cfg, std::ostream& out) {
  const Analysis a = analyze_system(load(cfg), cfg);
  Report r;
  for (Method m : selected_methods(cfg, {Method::ModalOvalNorm})) {
    const std::string key(method_name(m));
    try {
      const RegionUnion u = build(a, m, cfg);
      const ComponentMap map = components(u, cfg.resolution);
      const Box box = bounding_box(u);
      r.add(key + ".rigorous", u.rigorous);
      r.add(key + ".primitives", u.primitives.size());
      r.add(key + ".components", map.components.size());
      r.add(key + ".resolution", map.resolution);
      r.add(key + ".box", std::vector<double>{box.xmin, box.xmax, box.ymin, box.ymax});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CriticalModePresent) {
        throw;
      }
      r.add(key + ".status", std::string("skipped: ") + e.what());
    }
  }
  emit(r, cfg, out, true);
  return kExitOk;
}

int cmd_overdamped(const Config& cfg, std::ostream& out) {
  const DampedSystem sys = load(cfg);
  const Analysis a = analyze_system(sys, cfg);
  Report r;
  const DefinitenessInterval exact = exact_definiteness_interval(sys, cfg.rtol);
  r.add("exact.overdamped", !exact.empty);
  if (!exact.empty) {
    r.add("exact.lo", exact.lo);
    r.add("exact.hi", exact.hi);
  }
  const MinDamping d = min_damping_d(sys);
  r.add("min_damping_d", d.value);
  for (CertificateVariant v : {CertificateVariant::Norm, CertificateVariant::Gershgorin}) {
    const std::string key(variant_name(v));
    const CertificateResult cert = sufficient_certificate(a.form, a.diagonal, v);
    if (const auto* ok = std::get_if<OverdampedCertificate>(&cert)) {
      r.add(key + ".certified", true);
      r.add(key + ".deltas", reals(ok->deltas));
      r.add(key + ".p_minus", ok->p_minus);
      r.add(key + ".p_plus", ok->p_plus);
      const IntervalBounds b = eigenvalue_intervals(a.form, a.diagonal, v);
      std::vector<double> nlo, nhi, plo, phi;
      for (const ModeIntervals& m : b.modes) {
        nlo.push_back(m.neg_lo);
        nhi.push_back(m.neg_hi);
        plo.push_back(m.pos_lo);
        phi.push_back(m.pos_hi);
      }
      r.add(key + ".negative_lo", nlo);
      r.add(key + ".negative_hi", nhi);
      r.add(key + ".positive_lo", plo);
      r.add(key + ".positive_hi", phi);
    } else {
      const auto& no = std::get<CertificateRefusal>(cert);
      r.add(key + ".certified", false);
      r.add(key + ".deltas", reals(no.deltas));
      r.add(key + ".refusal", no.message);
    }
  }
  if (cfg.epsilon) {
    const EtaEnvelope env = eta_envelope(a.form, *cfg.epsilon);
    r.add("eta.epsilon", env.epsilon);
    r.add("eta.plus_lower", reals(env.plus_lower));
    r.add("eta.plus_upper", reals(env.plus_upper));
    r.add("eta.minus_lower", reals(env.minus_lower));
    r.add("eta.minus_upper", reals(env.minus_upper));
  }
  emit(r, cfg, out, true);
  return kExitOk;
}

int cmd_plot(const Config& cfg, std::ostream& out) {
  if (cfg.output.empty()) {
    throw Error(ErrorKind::InvalidInput, "plot needs --output");
  }
  const Analysis a = analyze_system(load(cfg), cfg);
  std::vector<RegionUnion> unions;
  Report r;
  for (Method m : selected_methods(cfg, {Method::ModalOvalNorm})) {
    unions.push_back(build(a, m, cfg));
    r.add(std::string(method_name(m)) + ".components",
          components(unions.back(), cfg.resolution).components.size());
  }
  const Spectrum s = true_spectrum(a.form);
  emit_svg(unions, s.values, cfg.output, cfg.resolution);
  r.add("svg", cfg.output);
  emit(r, cfg, out, false);
  return kExitOk;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  const Analysis a = analyze_system(load(cfg), cfg);
  const Spectrum s = true_spectrum(a.form);
  Report r;
  r.add("eigenvalues", s.values.size());
  r.add("residuals_ok", residuals_ok(s, a.form));
  bool violated = false;
  for (Method m : selected_methods(cfg, rigorous_methods())) {
    const std::string key(method_name(m));
    RegionUnion u;
    try {
      u = build(a, m, cfg);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CriticalModePresent) {
        throw;
      }
      r.add(key + ".status", std::string("skipped: ") + e.what());
      continue;
    }
    const InclusionReport rep = check_inclusion(s, u);
    r.add(key + ".rigorous", rep.rigorous);
    r.add(key + ".all_contained", rep.all_contained);
    r.add(key + ".worst_margin", rep.worst_margin);
    r.add(key + ".violations", rep.violations);
    violated = violated || (rep.rigorous && !rep.all_contained);
  }
  r.add("verdict", violated ? "violation" : "ok");
  emit(r, cfg, out, true);
  return violated ? kExitViolation : kExitOk;
}

int cmd_gen(const Config& cfg, std::ostream& out) {
  std::mt19937_64 rng(cfg.seed);
  const DampedSystem sys = random_system(rng, {cfg.n, cfg.damping_scale, cfg.overdamped});
  if (cfg.output.empty()) {
    out << system_to_json(sys);
  } else {
    save_system(sys, cfg.output);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Eigenvalue inclusion regions for damped systems", "cassini"};
  app.require_subcommand(1);

  const auto common = [&](CLI::App* sub, bool methods) {
    sub->add_option("--input", cfg.input, "system JSON file");
    sub->add_option("--mm-m", cfg.mm_m, "mass matrix (Matrix Market)");
    sub->add_option("--mm-c", cfg.mm_c, "damping matrix (Matrix Market)");
    sub->add_option("--mm-k", cfg.mm_k, "stiffness matrix (Matrix Market)");
    sub->add_option("--output", cfg.output, "output file");
    sub->add_flag("--json", cfg.json, "JSON report instead of text");
    sub->add_option("--rtol", cfg.rtol, "relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--cluster-tol", cfg.cluster_tol, "relative frequency gap for clusters")
        ->check(CLI::NonNegativeNumber);
    if (methods) {
      sub->add_option("--method", cfg.methods, "region method (repeatable)");
      sub->add_option("--split", cfg.split, "modal split")
          ->check(CLI::IsMember({"diagonal", "maximal"}));
      sub->add_option("--resolution", cfg.resolution, "grid resolution")
          ->check(CLI::Range(kMinResolution, 1 << 14));
      sub->add_option("--r-override", cfg.r_override, "fixed extension for every mode")
          ->check(CLI::NonNegativeNumber);
    }
  };

  auto* analyze = app.add_subcommand("analyze", "modal form, splits, proportional fit");
  common(analyze, false);
  auto* regions = app.add_subcommand("regions", "build inclusion regions");
  common(regions, true);
  auto* overdamped = app.add_subcommand("overdamped", "overdampedness certificates");
  common(overdamped, false);
  overdamped->add_option("--epsilon", cfg.epsilon, "relative perturbation size")
      ->check(CLI::Range(0.0, 1.0));
  auto* plot = app.add_subcommand("plot", "SVG figure of regions and eigenvalues");
  common(plot, true);
  auto* verify = app.add_subcommand("verify", "inclusion audit against the true spectrum");
  common(verify, true);
  auto* gen = app.add_subcommand("gen", "random system file");
  gen->add_option("--output", cfg.output, "output file (stdout if absent)");
  gen->add_option("--seed", cfg.seed, "random seed");
  gen->add_option("--n", cfg.n, "system order")->check(CLI::Range(1, 100000));
  gen->add_option("--damping-scale", cfg.damping_scale, "factor on C")
      ->check(CLI::NonNegativeNumber);
  gen->add_flag("--overdamped", cfg.overdamped, "scale C until overdamped");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*analyze) return cmd_analyze(cfg, out);
    if (*regions) return cmd_regions(cfg, out);
    if (*overdamped) return cmd_overdamped(cfg, out);
    if (*plot) return cmd_plot(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    return cmd_gen(cfg, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.is_input_error() ? kExitInput : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace cassini
