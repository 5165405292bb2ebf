#include "echcap/cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "echcap/capacity.hpp"
#include "echcap/io.hpp"
#include "echcap/isoperimetric.hpp"
#include "echcap/spectral.hpp"

namespace echcap {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v, int precision) {
  if (precision == 12) return format_double(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

Curve load_input_curve(const RunConfig& cfg) {
  if (cfg.curve_file.empty()) fail(ErrorCode::ConfigError, "--curve is required");
  Curve c = load_curve(cfg.curve_file);
  if (!c.complete()) fail(ErrorCode::ConfigError, "input curve does not span [0, pi/2]");
  return c;
}

Curve load_mode_curve(const RunConfig& cfg) {
  Curve c = load_input_curve(cfg);
  if (!c.matches_mode(cfg.mode))
    fail(ErrorCode::ModeMismatch, "curve shape class does not allow the requested mode");
  return c;
}

fs::path ensure_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create output directory '" + cfg.out_dir + "'");
  return dir;
}

EngineOptions engine_opts(const RunConfig& cfg) {
  EngineOptions opts;
  opts.jobs = cfg.jobs;
  return opts;
}

std::vector<CapacityResult> select_rows(const std::vector<CapacityResult>& all,
                                        const std::vector<int>& ks) {
  std::vector<CapacityResult> out;
  out.reserve(ks.size());
  for (int k : ks) out.push_back(all[k - 1]);
  return out;
}

const char* mode_name(Mode m) { return mode_is_convex(m) ? "convex" : "concave"; }

}  // namespace

int cmd_capacities(const RunConfig& cfg) {
  Curve c = load_mode_curve(cfg);
  std::vector<int> ks = parse_k_list(cfg.k_spec);
  int kmax = *std::max_element(ks.begin(), ks.end());
  auto all = capacities_range(c, kmax, cfg.mode, engine_opts(cfg));
  auto rows = select_rows(all, ks);

  CsvTable t = capacities_csv(rows);
  if (cfg.precision != 12)
    for (size_t i = 0; i < rows.size(); ++i)
      if (!rows[i].exact) t.rows[i][1] = fmt(rows[i].value, cfg.precision);

  fs::path dir = ensure_out_dir(cfg);
  write_text_file((dir / "capacities.csv").string(), t.to_string());
  for (const auto& r : rows)
    write_text_file((dir / ("path_k" + std::to_string(r.k) + ".csv")).string(),
                    path_csv(r.optimal_paths.front()).to_string());
  std::cout << "wrote " << (dir / "capacities.csv").string() << " (" << rows.size()
            << " rows) and " << rows.size() << " path files\n";
  return 0;
}

int cmd_weyl(const RunConfig& cfg) {
  Curve c = load_mode_curve(cfg);
  std::vector<int> ks = parse_k_list(cfg.k_spec);
  int kmax = *std::max_element(ks.begin(), ks.end());
  auto all = capacities_range(c, kmax, cfg.mode, engine_opts(cfg));

  CsvTable t;
  t.header = {"k", "value", "residual"};
  std::vector<double> residuals;
  for (int k : ks) {
    const auto& r = all[k - 1];
    double res = weyl_residual(c, k, r.value);
    residuals.push_back(res);
    t.rows.push_back({std::to_string(k),
                      r.exact ? format_rat(r.value_exact) : fmt(r.value, cfg.precision),
                      fmt(res, cfg.precision)});
  }
  fs::path dir = ensure_out_dir(cfg);
  write_text_file((dir / "weyl.csv").string(), t.to_string());
  write_text_file((dir / "weyl.svg").string(), svg_residual_plot(ks, residuals));
  std::cout << "wrote " << (dir / "weyl.csv").string() << " and weyl.svg\n";
  return 0;
}

int cmd_equidist(const RunConfig& cfg) {
  Curve c = load_mode_curve(cfg);
  std::vector<int> ks = parse_k_list(cfg.k_spec);
  std::vector<AngleInterval> arcs = parse_arc_list(cfg.arcs_spec);
  auto report = equidistribution_report(c, ks, arcs, cfg.mode, engine_opts(cfg));
  for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";

  CsvTable t = equidist_csv(report);
  if (cfg.precision != 12)
    for (size_t i = 0; i < report.rows.size(); ++i) {
      t.rows[i][2] = fmt(report.rows[i].err, cfg.precision);
      t.rows[i][3] = fmt(report.rows[i].hausdorff, cfg.precision);
    }
  fs::path dir = ensure_out_dir(cfg);
  write_text_file((dir / "equidist.csv").string(), t.to_string());
  if (!report.warnings.empty()) {
    std::string w;
    for (const auto& line : report.warnings) w += line + "\n";
    write_text_file((dir / "warnings.txt").string(), w);
  }

  // overlay figure: the smallest optimal path at each k, rescaled by 1/sqrt(k)
  int kmax = *std::max_element(ks.begin(), ks.end());
  auto all = capacities_range(c, kmax, cfg.mode, engine_opts(cfg));
  std::vector<IntegralPath> paths;
  std::vector<double> factors;
  for (int k : ks) {
    paths.push_back(all[k - 1].optimal_paths.front());
    factors.push_back(1.0 / std::sqrt(double(k)));
  }
  write_text_file((dir / "equidist.svg").string(), svg_curve_with_paths(c, paths, factors));
  std::cout << "wrote " << (dir / "equidist.csv").string() << " and equidist.svg\n";
  return 0;
}

int cmd_isoper(const RunConfig& cfg) {
  auto rows = inequality_trials(cfg.seed, cfg.trials, cfg.mode, cfg.jobs);
  CsvTable t;
  t.header = {"seed", "mode", "slack", "equality_flag", "base_fingerprint", "target_fingerprint"};
  int violations = 0;
  for (const auto& r : rows) {
    violations += !r.holds;
    t.rows.push_back({std::to_string(r.seed), mode_name(r.mode), fmt(r.slack, cfg.precision),
                      r.equality ? "1" : "0", r.base_fingerprint, r.target_fingerprint});
  }
  fs::path dir = ensure_out_dir(cfg);
  write_text_file((dir / "isoper.csv").string(), t.to_string());
  std::cout << "wrote " << (dir / "isoper.csv").string() << " (" << rows.size() << " trials, "
            << violations << " violations)\n";
  if (violations) {
    std::cerr << "isoperimetric inequality violated in " << violations << " trials\n";
    return 5;
  }
  return 0;
}

int cmd_nice(const RunConfig& cfg) {
  Curve c = load_input_curve(cfg);
  NiceResult res = nice_check(c, cfg.normal_bound, cfg.precision);
  std::cout << "verdict: "
            << (res.verdict == NiceVerdict::plausibly_nice ? "plausibly_nice" : "not_nice")
            << "\n";
  std::cout << "rational-normal points (entries <= " << cfg.normal_bound
            << "): " << res.points.size() << "\n";
  if (!res.witness.empty()) {
    std::cout << "integer relation:";
    for (long long a : res.witness) std::cout << ' ' << a;
    std::cout << "\n";
  }
  if (!res.summary.empty()) std::cout << res.summary << "\n";
  return 0;
}

int cmd_check(const RunConfig& cfg) {
  struct Item {
    std::string name;
    bool ok;
  };
  std::vector<Item> items;
  auto add = [&](const std::string& name, bool ok) {
    items.push_back({name, ok});
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
  };
  EngineOptions opts = engine_opts(cfg);

  {  // closed-form staircase agreement
    bool ok = true;
    const std::pair<int, int> legs[] = {{1, 1}, {1, 2}, {2, 3}};
    for (auto [a, b] : legs) {
      Curve tri = make_triangle(a, b);
      auto caps = capacities_range(tri, 30, Mode::convex, opts);
      auto oracle = ellipsoid_oracle(a, b, 30);
      for (int k = 1; k <= 30; ++k)
        ok = ok && caps[k - 1].exact && caps[k - 1].value_exact == oracle[k - 1];
    }
    add("triangle staircases match the closed-form oracle (k <= 30)", ok);
  }

  Curve T = make_triangle(1, 1);
  auto capsT = capacities_range(T, 12, Mode::convex, opts);

  {  // conformality: scaling the curve scales every capacity linearly
    bool ok = true;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long long> d(1, 9);
    for (int t = 0; t < 10; ++t) {
      Rat f(d(rng), d(rng));
      auto scaled = capacities_range(scale_curve(T, f), 10, Mode::convex, opts);
      for (int k = 1; k <= 10; ++k)
        ok = ok && scaled[k - 1].value_exact == f * capsT[k - 1].value_exact;
    }
    add("conformality: c_k(f * curve) = f * c_k (10 exact scalings)", ok);
  }

  {  // monotonicity under containment
    bool ok = true;
    for (int t = 0; t < 10 && ok; ++t) {
      Curve A = random_convex_curve(cfg.seed + 100 + t);
      Curve B = random_convex_curve(cfg.seed + 200 + t);
      Rat factor(0);
      for (const auto& v : A.vertices()) {
        Rat inv = 1 / radial_reach(B, v);
        factor = std::max(factor, inv);
      }
      Curve Bp = scale_curve(B, factor);  // smallest scaling of B containing A
      auto ca = capacities_range(A, 8, Mode::convex, opts);
      auto cb = capacities_range(Bp, 8, Mode::convex, opts);
      for (int k = 1; k <= 8; ++k) ok = ok && ca[k - 1].value_exact <= cb[k - 1].value_exact;
    }
    add("monotonicity: nested domains have ordered capacities (10 pairs)", ok);
  }

  {  // spectrality: the attached distribution recomposes the capacity
    bool ok = true;
    for (int k = 1; k <= 10; ++k) {
      auto d = spectral_distribution(T, k, Mode::convex, FacePolicy::allow, opts);
      ok = ok && d.exact && d.total_exact == capsT[k - 1].value_exact;
    }
    add("spectrality: atom weights sum back to c_k (triangle, k <= 10)", ok);
  }

  {  // first capacity vanishes, staircase nondecreasing
    bool ok = capsT.front().exact && capsT.front().value_exact == 0;
    for (size_t i = 1; i < capsT.size(); ++i)
      ok = ok && capsT[i - 1].value_exact <= capsT[i].value_exact;
    add("c_1 = 0 and c_k nondecreasing (triangle)", ok);
  }

  {  // engine vs exhaustive enumeration on random curves
    bool ok = true;
    for (int t = 0; t < 2 && ok; ++t) {
      Curve c = random_convex_curve(cfg.seed + 300 + t);
      for (int k = 1; k <= 6 && ok; ++k) {
        auto fast = capacity(c, k, Mode::convex, opts);
        auto slow = brute_force_capacity(c, k, Mode::convex, 8, opts);
        ok = fast.value_exact == slow.value_exact;
      }
    }
    Curve cc = random_concave_curve(cfg.seed + 310);
    for (int k = 1; k <= 6 && ok; ++k)
      ok = capacity(cc, k, Mode::concave, opts).value_exact ==
           brute_force_capacity(cc, k, Mode::concave, 8, opts).value_exact;
    add("branch-and-bound equals exhaustive search (k <= 6)", ok);
  }

  {  // generalized isoperimetric inequalities on random pairs
    auto conv = inequality_trials(cfg.seed, 24, Mode::convex, cfg.jobs);
    auto conc = inequality_trials(cfg.seed, 24, Mode::concave, cfg.jobs);
    bool ok = true;
    for (const auto& r : conv) ok = ok && r.holds;
    for (const auto& r : conc) ok = ok && r.holds;
    add("isoperimetric inequalities hold on 48 random pairs", ok);
  }

  if (!cfg.curve_file.empty()) {  // axioms for a user-provided curve
    Curve c = load_mode_curve(cfg);
    auto caps = capacities_range(c, 8, cfg.mode, opts);
    bool ok = caps.front().value <= 1e-12;
    for (size_t i = 1; i < caps.size(); ++i) ok = ok && caps[i - 1].value <= caps[i].value + 1e-12;
    double recomposed =
        spectral_distribution_for(c, caps.back(), FacePolicy::allow).total;
    ok = ok && std::fabs(recomposed - caps.back().value) <= 1e-9 * (1 + caps.back().value);
    add("axioms on the provided curve (c_1 = 0, monotone, spectral)", ok);
  }

  int failures = 0;
  for (const auto& it : items) failures += !it.ok;
  std::cout << (failures ? "CHECK FAILED" : "CHECK OK") << " (" << items.size() - failures << "/"
            << items.size() << ")\n";
  return failures ? 5 : 0;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"ECH spectral invariants of star-shaped toric domains"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string mode_str = "convex";

  auto add_common = [&](CLI::App* sub, bool needs_curve) {
    if (needs_curve) sub->add_option("--curve", cfg.curve_file, "curve JSON file")->required();
    sub->add_option("--mode", mode_str, "convex|concave")
        ->check(CLI::IsMember({"convex", "concave"}));
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--jobs", cfg.jobs, "worker threads (0 = all)");
    sub->add_option("--precision", cfg.precision, "float significant digits")
        ->check(CLI::Range(3, 17));
    sub->add_option("--seed", cfg.seed, "base RNG seed");
  };

  CLI::App* caps = app.add_subcommand("capacities", "capacity table and optimal paths");
  add_common(caps, true);
  caps->add_option("--k", cfg.k_spec, "k range, e.g. 1..60 or 20,50,200");

  CLI::App* equi = app.add_subcommand("equidist", "equidistribution report and figures");
  add_common(equi, true);
  equi->add_option("--k", cfg.k_spec, "k range");
  equi->add_option("--arcs", cfg.arcs_spec, "sub-arcs lo:hi[,lo:hi...]; pi accepted");

  CLI::App* weyl = app.add_subcommand("weyl", "asymptotic residual table and plot");
  add_common(weyl, true);
  weyl->add_option("--k", cfg.k_spec, "k range");

  CLI::App* iso = app.add_subcommand("isoper", "randomized isoperimetric inequality trials");
  add_common(iso, false);
  iso->add_option("--trials", cfg.trials, "number of random pairs");

  CLI::App* nice = app.add_subcommand("nice", "rational-normal weight independence probe");
  add_common(nice, true);
  nice->add_option("--normal-bound", cfg.normal_bound, "max entry of probed normals");

  CLI::App* check = app.add_subcommand("check", "built-in verification suite");
  check->add_option("--curve", cfg.curve_file, "optional extra curve to validate");
  check->add_option("--mode", mode_str, "convex|concave")
      ->check(CLI::IsMember({"convex", "concave"}));
  check->add_option("--jobs", cfg.jobs, "worker threads");
  check->add_option("--seed", cfg.seed, "base RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.mode = mode_str == "concave" ? Mode::concave : Mode::convex;
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (cfg.subcommand == "capacities") return cmd_capacities(cfg);
    if (cfg.subcommand == "equidist") return cmd_equidist(cfg);
    if (cfg.subcommand == "weyl") return cmd_weyl(cfg);
    if (cfg.subcommand == "isoper") return cmd_isoper(cfg);
    if (cfg.subcommand == "nice") return cmd_nice(cfg);
    if (cfg.subcommand == "check") return cmd_check(cfg);
    std::cerr << "unknown subcommand\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ConfigError:
      case ErrorCode::InvalidArgument:
      case ErrorCode::ModeMismatch:
      case ErrorCode::EmptyInput:
      case ErrorCode::NonMonotoneAngles:
      case ErrorCode::ShapeClassViolation:
      case ErrorCode::ArcOutOfRange:
      case ErrorCode::NonpositiveScale:
      case ErrorCode::ZeroVector:
      case ErrorCode::IncompleteCurve:
        return 2;
      case ErrorCode::IoError:
        return 3;
      default:
        return 4;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace echcap
