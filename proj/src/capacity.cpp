#include "echcap/capacity.hpp"

#include <algorithm>
#include <numeric>
#include <type_traits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace echcap {

namespace {

long long cross_ll(const IntVec& a, const IntVec& b) { return a.x * b.y - a.y * b.x; }

// lattice points strictly gained in the column sum when appending the run
// (a,-b) x m starting from accumulated drop D: new columns t = 1..a*m have
// first-visit drop D + ceil(b t / a); gcd(a,b) = 1 collapses the inner sum
long long delta_S(long long a, long long b, long long m, long long D) {
  if (a == 0) return 0;
  return a * m * D + a * b * m * (m - 1) / 2 + m * (a * b + a + b - 1) / 2;
}

template <class Num> Num num_from_ll(long long v) {
  if constexpr (std::is_same_v<Num, Rat>)
    return Rat(v);
  else
    return static_cast<double>(v);
}

template <class Num> double num_to_double(const Num& v) {
  if constexpr (std::is_same_v<Num, Rat>)
    return rat_to_double(v);
  else
    return v;
}

template <class Num> struct Candidate {
  Num act{};
  std::vector<PathEdge> runs;
};

template <class Num> struct Branch {
  std::vector<Candidate<Num>> cands;
  std::vector<PathEdge> stack;
  std::uint64_t nodes = 0;
  bool overflow = false;
};

// One capacity computation: immutable tables plus the two search phases. The
// value phase runs single-threaded with an improving incumbent; the collection
// phase re-explores against the fixed optimum so results and node counts do
// not depend on thread scheduling.
template <class Num> struct Searcher {
  const Curve& curve;
  Mode mode;
  const EngineOptions& opts;
  bool is_convex;
  double win;  // tie window; exact arithmetic uses 0

  int k = 0;
  long long Xmax = 0, Ymax = 0;
  std::vector<IntVec> dirs;
  std::vector<Num> stepH;
  std::vector<std::vector<Num>> H;  // H[v][u] = support of the vector (v, u)
  std::vector<double> stepHd;       // binary64 shadows; pruning only, padded
  std::vector<std::vector<double>> Hd;

  Num bound{};          // phase 1: improving incumbent; phase 2: frozen optimum
  double bound_pad = 0; // padded shadow of `bound`; shadow pruning tests only

  static double shadow(const Num& x) {
    if constexpr (std::is_same_v<Num, Rat>)
      return rat_to_double(x);
    else
      return x;
  }
  // The pad widens the admissible side so a shadow comparison never discards
  // a state the exact comparison would keep.
  void set_bound(const Num& b) {
    bound = b;
    double d = shadow(b), slack = win + 1e-7 * (1.0 + std::fabs(d));
    bound_pad = is_convex ? d + slack : d - slack;
  }

  Searcher(const Curve& c, Mode m, const EngineOptions& o)
      : curve(c), mode(m), opts(o), is_convex(mode_is_convex(m)),
        win(std::is_same_v<Num, Rat> ? 0.0 : o.tie_tolerance) {}

  Num support(long long v, long long u) const {
    if constexpr (std::is_same_v<Num, Rat>)
      return is_convex ? support_max_exact(curve, IntVec{v, u})
                       : support_min_exact(curve, IntVec{v, u});
    else
      return is_convex
                 ? support_max(curve, Vec2{static_cast<double>(v), static_cast<double>(u)})
                 : support_min(curve, Vec2{static_cast<double>(v), static_cast<double>(u)});
  }

  // worse-than comparisons with the tie window on the collectable side
  bool above(const Num& x, const Num& limit) const {  // x > limit (+ win)
    if constexpr (std::is_same_v<Num, Rat>)
      return x > limit;
    else
      return x > limit + win;
  }
  bool below(const Num& x, const Num& limit) const {  // x < limit (- win)
    if constexpr (std::is_same_v<Num, Rat>)
      return x < limit;
    else
      return x < limit - win;
  }

  void build_box(long long xm, long long ym) {
    Xmax = xm;
    Ymax = ym;
    if ((Xmax + 1) * (Ymax + 1) > 4'000'000)
      fail(ErrorCode::SearchBudgetExceeded, "certified search box is too large");
    H.assign(Ymax + 1, std::vector<Num>(Xmax + 1));
    Hd.assign(Ymax + 1, std::vector<double>(Xmax + 1));
    for (long long v = 0; v <= Ymax; ++v)
      for (long long u = 0; u <= Xmax; ++u) {
        H[v][u] = (u == 0 && v == 0) ? Num{} : support(v, u);
        Hd[v][u] = shadow(H[v][u]);
      }

    dirs.clear();
    if (is_convex) {
      if (Xmax >= 1) dirs.push_back({1, 0});
      if (Ymax >= 1) dirs.push_back({0, -1});
    }
    for (long long a = 1; a <= Xmax; ++a)
      for (long long b = 1; b <= Ymax; ++b)
        if (std::gcd(a, b) == 1) dirs.push_back({a, -b});
    std::sort(dirs.begin(), dirs.end(), [&](const IntVec& s, const IntVec& t) {
      long long c = cross_ll(s, t);
      return is_convex ? c < 0 : c > 0;
    });
    stepH.resize(dirs.size());
    stepHd.resize(dirs.size());
    for (size_t j = 0; j < dirs.size(); ++j) {
      stepH[j] = H[-dirs[j].y][dirs[j].x];
      stepHd[j] = Hd[-dirs[j].y][dirs[j].x];
    }
  }

  // Prune test: can any completion still lift L to k with total action within
  // the padded bound? Future action for width u / drop v is at least h((v, u))
  // (subadditivity of the support). Runs still available are at least as
  // steep as dirs[imin], which forces v >= u*bmin/amin and raises every new
  // column's first-visit drop, tightening the reachable count. Runs on the
  // padded binary64 shadow, so it never discards a within-bound state.
  bool convex_tail_exceeds(size_t imin, long long X, long long D, long long S,
                           double act_d) const {
    if (imin >= dirs.size()) return true;  // no extension exists and L < k
    long long amin = dirs[imin].x, bmin = -dirs[imin].y;
    long long extraS = 0;   // sum over new columns of their minimum ceil-drop
    long long vslope = 0;   // minimum total drop forced by the slope floor
    for (long long u = 0; u + X <= Xmax; ++u) {
      if (u > 0) {
        if (amin == 0) break;  // only the vertical run remains: no new columns
        vslope = (bmin * u + amin - 1) / amin;
        extraS += D + vslope;  // ceil(D + bmin*u/amin), D integral
      }
      long long den = X + u + 1;
      long long need = (k + S + extraS + den - 1) / den;  // ceil
      long long vmin = std::max(need - 1 - D, vslope);
      if (vmin < 0) vmin = 0;
      if (D + vmin > Ymax) continue;
      if (act_d + Hd[vmin][u] <= bound_pad) return false;
    }
    return true;
  }

  // ---- phase 1: optimum value, improving incumbent, always serial ----

  void value_convex(size_t imin, long long X, long long D, long long S, const Num& act,
                    Branch<Num>& br) {
    if (++br.nodes > opts.node_budget) {
      br.overflow = true;
      return;
    }
    long long L = (X + 1) * (D + 1) - S;
    if (L >= k) {
      if (act < bound) set_bound(act);
      return;
    }
    double act_d = shadow(act);
    if (convex_tail_exceeds(imin, X, D, S, act_d)) return;
    for (size_t j = imin; j < dirs.size() && !br.overflow; ++j) {
      long long a = dirs[j].x, b = -dirs[j].y;
      for (long long m = 1;; ++m) {
        long long X2 = X + m * a, D2 = D + m * b;
        if (X2 > Xmax || D2 > Ymax) break;
        if (act_d + double(m) * stepHd[j] > bound_pad) break;
        Num act2 = act + num_from_ll<Num>(m) * stepH[j];
        if (act2 > bound) break;
        value_convex(j + 1, X2, D2, S + delta_S(a, b, m, D), act2, br);
      }
    }
  }

  void value_concave(size_t imin, long long X, long long D, long long S, long long onpath,
                     const Num& act, Branch<Num>& br) {
    if (++br.nodes > opts.node_budget) {
      br.overflow = true;
      return;
    }
    long long Lp = (X + 1) * (D + 1) - S - onpath;
    if (Lp > k - 1) return;
    if (act > bound) set_bound(act);
    if (imin >= dirs.size()) return;
    long long budget = (k - 1) - Lp;
    long long ucap = std::min(Xmax - X, budget), vcap = std::min(Ymax - D, budget);
    if (ucap < 1 || vcap < 1) return;
    // runs still available are at most as steep as dirs[imin]: v <= u*bmin/amin
    vcap = std::min(vcap, ucap * (-dirs[imin].y) / dirs[imin].x);
    if (vcap < 1) return;
    if (shadow(act) + Hd[vcap][ucap] < bound_pad) return;  // cannot beat the incumbent
    for (size_t j = imin; j < dirs.size() && !br.overflow; ++j) {
      long long a = dirs[j].x, b = -dirs[j].y;
      for (long long m = 1;; ++m) {
        long long X2 = X + m * a, D2 = D + m * b;
        if (X2 > Xmax || D2 > Ymax || m * a > budget || m * b > budget) break;
        Num act2 = act + num_from_ll<Num>(m) * stepH[j];
        value_concave(j + 1, X2, D2, S + delta_S(a, b, m, D), onpath + m, act2, br);
      }
    }
  }

  // ---- phase 2: collect every optimum against the frozen bound ----

  void collect_convex(size_t imin, long long X, long long D, long long S, const Num& act,
                      Branch<Num>& br) {
    if (++br.nodes > opts.node_budget) {
      br.overflow = true;
      return;
    }
    long long L = (X + 1) * (D + 1) - S;
    if (L >= k) {
      if (!above(act, bound)) br.cands.push_back({act, br.stack});
      return;  // feasible; extensions only add strictly positive action
    }
    double act_d = shadow(act);
    if (convex_tail_exceeds(imin, X, D, S, act_d)) return;
    for (size_t j = imin; j < dirs.size() && !br.overflow; ++j) {
      long long a = dirs[j].x, b = -dirs[j].y;
      for (long long m = 1;; ++m) {
        long long X2 = X + m * a, D2 = D + m * b;
        if (X2 > Xmax || D2 > Ymax) break;
        if (act_d + double(m) * stepHd[j] > bound_pad) break;
        Num act2 = act + num_from_ll<Num>(m) * stepH[j];
        if (above(act2, bound)) break;
        br.stack.push_back({dirs[j], m});
        collect_convex(j + 1, X2, D2, S + delta_S(a, b, m, D), act2, br);
        br.stack.pop_back();
      }
    }
  }

  void collect_concave(size_t imin, long long X, long long D, long long S, long long onpath,
                       const Num& act, Branch<Num>& br) {
    if (++br.nodes > opts.node_budget) {
      br.overflow = true;
      return;
    }
    long long Lp = (X + 1) * (D + 1) - S - onpath;
    if (Lp > k - 1) return;
    if (!below(act, bound)) br.cands.push_back({act, br.stack});
    if (imin >= dirs.size()) return;
    long long budget = (k - 1) - Lp;
    long long ucap = std::min(Xmax - X, budget), vcap = std::min(Ymax - D, budget);
    if (ucap < 1 || vcap < 1) return;
    vcap = std::min(vcap, ucap * (-dirs[imin].y) / dirs[imin].x);
    if (vcap < 1) return;
    if (shadow(act) + Hd[vcap][ucap] < bound_pad) return;
    for (size_t j = imin; j < dirs.size() && !br.overflow; ++j) {
      long long a = dirs[j].x, b = -dirs[j].y;
      for (long long m = 1;; ++m) {
        long long X2 = X + m * a, D2 = D + m * b;
        if (X2 > Xmax || D2 > Ymax || m * a > budget || m * b > budget) break;
        Num act2 = act + num_from_ll<Num>(m) * stepH[j];
        br.stack.push_back({dirs[j], m});
        collect_concave(j + 1, X2, D2, S + delta_S(a, b, m, D), onpath + m, act2, br);
        br.stack.pop_back();
      }
    }
  }

  // expand one root branch (all multiplicities of a fixed first run direction)
  template <class Fn> void root_branch(size_t j0, Branch<Num>& br, Fn child) {
    long long a = dirs[j0].x, b = -dirs[j0].y;
    for (long long m = 1;; ++m) {
      long long X2 = m * a, D2 = m * b;
      if (X2 > Xmax || D2 > Ymax) break;
      if (!is_convex && (m * a > k - 1 || m * b > k - 1)) break;
      Num act2 = num_from_ll<Num>(m) * stepH[j0];
      if (is_convex && above(act2, bound)) break;
      br.stack.push_back({dirs[j0], m});
      child(j0 + 1, X2, D2, delta_S(a, b, m, 0), m, act2, br);
      br.stack.pop_back();
      if (br.overflow) break;
    }
  }

  std::uint64_t run_phase1() {
    std::uint64_t nodes = 0;
    bool overflow = false;
    for (size_t j0 = 0; j0 < dirs.size(); ++j0) {
      Branch<Num> br;
      root_branch(j0, br,
                  [&](size_t i, long long X, long long D, long long S, long long onpath,
                      const Num& act, Branch<Num>& b2) {
                    if (is_convex)
                      value_convex(i, X, D, S, act, b2);
                    else
                      value_concave(i, X, D, S, onpath + 1, act, b2);
                  });
      nodes += br.nodes;
      overflow |= br.overflow;
    }
    if (overflow) fail(ErrorCode::SearchBudgetExceeded, "node budget exhausted (value phase)");
    return nodes;
  }

  std::uint64_t run_phase2(bool parallel, std::vector<Candidate<Num>>& out) {
    const int n = static_cast<int>(dirs.size());
    std::vector<Branch<Num>> branches(n);
    auto task = [&](int j0) {
      root_branch(static_cast<size_t>(j0), branches[j0],
                  [&](size_t i, long long X, long long D, long long S, long long onpath,
                      const Num& act, Branch<Num>& b2) {
                    if (is_convex)
                      collect_convex(i, X, D, S, act, b2);
                    else
                      collect_concave(i, X, D, S, onpath + 1, act, b2);
                  });
    };
#ifdef _OPENMP
    if (parallel) {
      int jobs = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
      for (int j0 = 0; j0 < n; ++j0) task(j0);
    } else {
      for (int j0 = 0; j0 < n; ++j0) task(j0);
    }
#else
    (void)parallel;
    for (int j0 = 0; j0 < n; ++j0) task(j0);
#endif
    std::uint64_t nodes = 0;
    bool overflow = false;
    for (int j0 = 0; j0 < n; ++j0) {
      nodes += branches[j0].nodes;
      overflow |= branches[j0].overflow;
      for (auto& c : branches[j0].cands) out.push_back(std::move(c));
    }
    if (overflow)
      fail(ErrorCode::SearchBudgetExceeded, "node budget exhausted (collection phase)");
    return nodes;
  }
};

template <class Num>
CapacityResult assemble(int k, Mode mode, const Num& best, double win,
                        std::vector<Candidate<Num>>& cands, std::uint64_t nodes) {
  CapacityResult res;
  res.k = k;
  res.mode = mode;
  res.nodes_explored = nodes;
  res.value = num_to_double(best);
  if constexpr (std::is_same_v<Num, Rat>) {
    res.exact = true;
    res.value_exact = best;
  }
  bool approx = false;
  for (auto& c : cands) {
    bool keep;
    if constexpr (std::is_same_v<Num, Rat>)
      keep = c.act == best;
    else
      keep = c.act <= best + win;
    if (!keep) continue;
    if constexpr (!std::is_same_v<Num, Rat>) approx |= c.act != best;
    res.optimal_paths.push_back(IntegralPath::from_runs(c.runs, mode));
  }
  std::sort(res.optimal_paths.begin(), res.optimal_paths.end());
  res.optimal_paths.erase(std::unique(res.optimal_paths.begin(), res.optimal_paths.end()),
                          res.optimal_paths.end());
  res.approx_ties = approx;
  res.unique_optimum = res.optimal_paths.size() == 1;
  return res;
}

template <class Num>
std::vector<CapacityResult> run_range(const Curve& curve, int k_max, Mode mode,
                                      const EngineOptions& opts, bool parallel) {
  if (k_max < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  if (!curve.complete()) fail(ErrorCode::IncompleteCurve, "capacities need a complete curve");
  if (!curve.matches_mode(mode))
    fail(ErrorCode::ModeMismatch, "curve shape does not match the requested mode");

  const bool is_conv = mode_is_convex(mode);
  std::vector<CapacityResult> out;
  out.reserve(k_max);

  // endpoint radii bound the box: a path of width X has action >= X * rho(pi/2)
  // in convex mode, and height Y forces action >= Y * rho(0)
  Num rho0{}, rho1{};
  if constexpr (std::is_same_v<Num, Rat>) {
    rho0 = curve.x_endpoint_exact().x;
    rho1 = curve.y_endpoint_exact().y;
  } else {
    rho0 = curve.x_endpoint().x;
    rho1 = curve.y_endpoint().y;
  }
  Num min_step = std::min(rho0, rho1);

  Searcher<Num> s(curve, mode, opts);
  Num prev{};

  for (int k = 1; k <= k_max; ++k) {
    s.k = k;
    std::uint64_t nodes = 0;
    std::vector<Candidate<Num>> cands;
    Num warm = k == 1 ? Num{} : prev;  // concave: previous optimum stays feasible
    if (is_conv && k > 1) warm = prev + min_step;  // one extra axis step gains a point

    long long xm, ym;
    if (is_conv) {
      if constexpr (std::is_same_v<Num, Rat>) {
        xm = rat_floor(warm / rho1).template convert_to<long long>();
        ym = rat_floor(warm / rho0).template convert_to<long long>();
      } else {
        xm = static_cast<long long>(std::floor(warm / rho1 + 1e-9));
        ym = static_cast<long long>(std::floor(warm / rho0 + 1e-9));
      }
    } else {
      xm = ym = k - 1;
    }

    if (xm < 0) xm = 0;
    if (ym < 0) ym = 0;
    if (xm == 0 && ym == 0) {
      // only the degenerate path fits (k = 1): capacity 0 via the empty path
      if (k > 1) fail(ErrorCode::SearchBudgetExceeded, "empty certified box for k >= 2");
      Num zero{};
      std::vector<Candidate<Num>> trivial{{zero, {}}};
      out.push_back(assemble(k, mode, zero, s.win, trivial, 0));
      prev = zero;
      continue;
    }

    s.build_box(xm, ym);

    // phase 1: tighten the warm bound to the true optimum, serially; the warm
    // bound is achieved by a concrete path, so pruning against it is sound
    s.set_bound(warm);
    nodes += s.run_phase1();

    // phase 2: frozen bound, schedule-independent collection
    nodes += s.run_phase2(parallel, cands);

    // the degenerate path stays feasible in concave mode (L' = 0)
    if (!is_conv) cands.push_back({Num{}, {}});

    Num best{};
    bool have = false;
    for (const auto& c : cands) {
      if (!have || (is_conv ? c.act < best : c.act > best)) {
        best = c.act;
        have = true;
      }
    }
    if (!have) fail(ErrorCode::SearchBudgetExceeded, "no feasible path inside the box");
    out.push_back(assemble(k, mode, best, s.win, cands, nodes));
    prev = best;
  }
  return out;
}

std::vector<CapacityResult> dispatch_range(const Curve& curve, int k_max, Mode mode,
                                           const EngineOptions& opts, bool parallel) {
  if (curve.kind() == CurveKind::polygonal)
    return run_range<Rat>(curve, k_max, mode, opts, parallel);
  return run_range<double>(curve, k_max, mode, opts, parallel);
}

}  // namespace

CapacityResult capacity(const Curve& curve, int k, Mode mode, const EngineOptions& opts) {
  return dispatch_range(curve, k, mode, opts, true).back();
}

CapacityResult capacity_serial(const Curve& curve, int k, Mode mode,
                               const EngineOptions& opts) {
  return dispatch_range(curve, k, mode, opts, false).back();
}

std::vector<CapacityResult> capacities_range(const Curve& curve, int k_max, Mode mode,
                                             const EngineOptions& opts) {
  return dispatch_range(curve, k_max, mode, opts, true);
}

// ---- exhaustive oracle -----------------------------------------------------

namespace {

// path height over column x as an exact rational; pre: not single-vertex
Rat column_height(const IntegralPath& p, long long x) {
  const auto& vs = p.vertices();
  Rat best = -1;
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    long long x0 = vs[i].x, x1 = vs[i + 1].x;
    if (x < x0 || x > x1) continue;
    Rat f;
    if (x1 == x0)
      f = Rat(std::max(vs[i].y, vs[i + 1].y));
    else
      f = Rat(vs[i].y) + Rat(vs[i + 1].y - vs[i].y) * Rat(x - x0) / Rat(x1 - x0);
    best = std::max(best, f);
  }
  return best;
}

long long region_count(const IntegralPath& p) {
  if (p.is_single_vertex()) return 1;
  long long total = 0;
  for (long long x = 0; x <= p.width(); ++x)
    total += rat_floor(column_height(p, x)).convert_to<long long>() + 1;
  return total;
}

struct BruteState {
  const Curve& curve;
  Mode mode;
  long long box;
  int k;
  bool exact;
  double win;
  // candidate paths bucketed by the defining count
  std::vector<IntegralPath> paths;
  std::vector<Rat> acts_r;
  std::vector<double> acts_d;
};

void brute_record(BruteState& st, const std::vector<IntVec>& verts) {
  IntegralPath p = IntegralPath::from_vertices(verts, st.mode);
  long long cnt = mode_is_convex(st.mode) ? region_count(p)
                                          : region_count(p) - lattice_points_on_path(p);
  long long want = mode_is_convex(st.mode) ? st.k : st.k - 1;
  if (cnt != want) return;
  st.paths.push_back(p);
  if (st.exact)
    st.acts_r.push_back(path_action_exact(st.curve, p));
  else
    st.acts_d.push_back(path_action(st.curve, p));
}

void brute_walk(BruteState& st, std::vector<IntVec>& verts, IntVec prev_step, bool has_prev) {
  IntVec cur = verts.back();
  if (cur.y == 0) brute_record(st, verts);

  // monotone-region prune: the region of any extension contains the region
  // under the walk so far (columns up to the current x)
  long long partial = 0;
  for (long long x = 0; x <= cur.x && verts.size() > 1; ++x) {
    Rat best = -1;
    for (size_t i = 0; i + 1 < verts.size(); ++i) {
      long long x0 = verts[i].x, x1 = verts[i + 1].x;
      if (x < x0 || x > x1) continue;
      Rat f;
      if (x1 == x0)
        f = Rat(std::max(verts[i].y, verts[i + 1].y));
      else
        f = Rat(verts[i].y) + Rat(verts[i + 1].y - verts[i].y) * Rat(x - x0) / Rat(x1 - x0);
      best = std::max(best, f);
    }
    partial += rat_floor(best).convert_to<long long>() + 1;
  }
  long long onpath_partial = 1;
  for (size_t i = 0; i + 1 < verts.size(); ++i)
    onpath_partial +=
        std::gcd(std::llabs(verts[i + 1].x - verts[i].x), std::llabs(verts[i + 1].y - verts[i].y));
  if (mode_is_convex(st.mode)) {
    if (verts.size() > 1 && partial > st.k) return;
  } else {
    if (verts.size() > 1 && partial - onpath_partial > st.k - 1) return;
  }

  for (long long nx = cur.x; nx <= st.box; ++nx) {
    for (long long ny = cur.y; ny >= 0; --ny) {
      if (nx == cur.x && ny == cur.y) continue;
      long long dx = nx - cur.x, dy = ny - cur.y;
      long long g = std::gcd(std::llabs(dx), std::llabs(dy));
      IntVec step{dx / g, dy / g};
      if (!mode_is_convex(st.mode) && (step.x == 0 || step.y == 0)) continue;  // diagonals only
      if (has_prev) {
        if (step == prev_step) continue;  // not a corner
        long long c = cross_ll(prev_step, step);
        if (mode_is_convex(st.mode) ? c >= 0 : c <= 0) continue;
      }
      verts.push_back({nx, ny});
      brute_walk(st, verts, step, true);
      verts.pop_back();
    }
  }
}

}  // namespace

CapacityResult brute_force_capacity(const Curve& curve, int k, Mode mode, long long box_bound,
                                    const EngineOptions& opts) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  if (box_bound < 0) fail(ErrorCode::InvalidArgument, "box bound must be >= 0");
  if (!curve.complete()) fail(ErrorCode::IncompleteCurve, "capacities need a complete curve");
  if (!curve.matches_mode(mode))
    fail(ErrorCode::ModeMismatch, "curve shape does not match the requested mode");

  BruteState st{curve, mode,
                box_bound, k,
                curve.kind() == CurveKind::polygonal,
                opts.tie_tolerance,
                {}, {}, {}};

  // the degenerate path: region = the single point, L = 1, L' = 0
  if (k == 1) {
    st.paths.push_back(IntegralPath::single_vertex({0, 0}, mode));
    if (st.exact)
      st.acts_r.push_back(Rat(0));
    else
      st.acts_d.push_back(0.0);
  }

  for (long long y0 = 0; y0 <= box_bound; ++y0) {
    std::vector<IntVec> verts{{0, y0}};
    brute_walk(st, verts, {0, 0}, false);
  }

  if (st.paths.empty())
    fail(ErrorCode::BoxTooSmall, "no path with the requested count fits in the box");

  const bool minimize = mode_is_convex(mode);
  CapacityResult res;
  res.k = k;
  res.mode = mode;
  res.exact = st.exact;

  std::vector<size_t> keep;
  if (st.exact) {
    Rat best = st.acts_r[0];
    for (const auto& a : st.acts_r) best = minimize ? std::min(best, a) : std::max(best, a);
    for (size_t i = 0; i < st.acts_r.size(); ++i)
      if (st.acts_r[i] == best) keep.push_back(i);
    res.value_exact = best;
    res.value = rat_to_double(best);
  } else {
    double best = st.acts_d[0];
    for (double a : st.acts_d) best = minimize ? std::min(best, a) : std::max(best, a);
    for (size_t i = 0; i < st.acts_d.size(); ++i)
      if (minimize ? st.acts_d[i] <= best + st.win : st.acts_d[i] >= best - st.win) {
        keep.push_back(i);
        res.approx_ties |= st.acts_d[i] != best;
      }
    res.value = best;
  }
  for (size_t i : keep) {
    const auto& p = st.paths[i];
    if (p.width() >= box_bound || p.height() >= box_bound)
      fail(ErrorCode::BoxTooSmall, "an optimal path touches the enumeration box");
    res.optimal_paths.push_back(p);
  }
  std::sort(res.optimal_paths.begin(), res.optimal_paths.end());
  res.optimal_paths.erase(std::unique(res.optimal_paths.begin(), res.optimal_paths.end()),
                          res.optimal_paths.end());
  res.unique_optimum = res.optimal_paths.size() == 1;
  return res;
}

std::vector<Rat> ellipsoid_oracle(const Rat& a, const Rat& b, int k_max) {
  if (a <= 0 || b <= 0) fail(ErrorCode::InvalidArgument, "ellipsoid parameters must be positive");
  if (k_max < 1) fail(ErrorCode::InvalidArgument, "k_max must be >= 1");
  Rat cap = a + b;
  while (true) {
    std::vector<Rat> vals;
    for (long long m = 0; Rat(m) * a <= cap; ++m)
      for (long long n = 0; Rat(m) * a + Rat(n) * b <= cap; ++n)
        vals.push_back(Rat(m) * a + Rat(n) * b);
    if (static_cast<int>(vals.size()) >= k_max) {
      std::sort(vals.begin(), vals.end());
      vals.resize(k_max);
      return vals;
    }
    cap *= 2;
  }
}

}  // namespace echcap
