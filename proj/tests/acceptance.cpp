// Acceptance checks. `acceptance <k>` runs criterion k (1..14), `acceptance
// all` runs every one. Each prints one PASS/FAIL line; the exit status is 0
// only when every criterion run passed. `--n N` overrides the Monte Carlo
// sample size for quick smoke runs; such lines are marked "(reduced n)".
// When ACCEPTANCE_LOG names a file, the lines are appended to it as well.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "percolab/cli.hpp"
#include "percolab/conformal.hpp"
#include "percolab/estimate.hpp"
#include "percolab/fit.hpp"
#include "percolab/tables.hpp"

using namespace percolab;

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t g_n = 100000;
bool g_reduced = false;

struct Outcome {
  bool pass;
  std::string detail;
};

class Detail {
 public:
  template <class... A>
  Detail& add(const char* fmt, A... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    if (!text_.empty()) text_ += "; ";
    text_ += buf;
    return *this;
  }
  // Records a bound check and its verdict.
  Detail& check(bool ok, const char* fmt, double value, double bound) {
    pass_ = pass_ && ok;
    return add(fmt, value, bound);
  }
  Outcome done() const { return {pass_, text_}; }
  bool pass() const { return pass_; }
  void fail() { pass_ = false; }

 private:
  std::string text_;
  bool pass_ = true;
};

RunOptions mc_run(std::uint64_t seed, Sampling sampling = Sampling::Eager) {
  RunOptions run;
  run.n = g_n;
  run.seed = seed;
  run.sampling = sampling;
  return run;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome c1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0, worst_r = 0;
  for (const auto& row : rect_table()) {
    const double d = std::abs(cardy_rect(double(row.width) / row.height) - row.pi_h_cft);
    if (d > worst) {
      worst = d;
      worst_r = row.r;
    }
  }
  const double t = seconds_since(t0);
  Detail d;
  d.check(worst <= 5e-5, "max |cardy_rect - table| = %.3g (limit %.0e)", worst, 5e-5);
  d.add("worst row r = %.3f", worst_r);
  d.check(t < 1.0, "runtime %.3f s (limit %.0f s)", t, 1.0);
  return d.done();
}

Outcome c2() {
  const auto t0 = std::chrono::steady_clock::now();
  double sym = 0;
  for (int i = 0; i < 1000; ++i) {
    const double z = i / 999.0;
    sym = std::max(sym, std::abs(cardy(z) + cardy(1 - z) - 1));
  }
  // z(1-z) π'' + (2/3)(1-2z) π' = 0, with π' and π'' from central
  // differences of cardy scaled to the distance from the endpoints.
  double ode = 0;
  for (int k = 1; k <= 100; ++k) {
    const double z = k / 101.0;
    const double h = 1e-3 * std::min(z, 1 - z);
    const double fp = cardy(z + h), f0 = cardy(z), fm = cardy(z - h);
    const double d1 = (fp - fm) / (2 * h), d2 = (fp - 2 * f0 + fm) / (h * h);
    ode = std::max(ode, std::abs(z * (1 - z) * d2 + (2.0 / 3.0) * (1 - 2 * z) * d1));
  }
  const double t = seconds_since(t0);
  Detail d;
  d.check(sym <= 1e-12, "max |cardy(z)+cardy(1-z)-1| = %.3g (limit %.0e)", sym, 1e-12);
  d.check(ode <= 1e-6, "max ODE residual = %.3g (limit %.0e)", ode, 1e-6);
  d.check(t < 1.0, "runtime %.3f s (limit %.0f s)", t, 1.0);
  return d.done();
}

Outcome c3() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto e = rectangle_experiment(200, 200, 0.59273, mc_run(3));
  const auto& h = find_event(e, "h");
  const auto& hv = find_event(e, "hv");
  Detail d;
  d.add("pi_h = %.4f, pi_hv = %.4f, ci95 %.4f", h.p_hat, hv.p_hat, h.ci95);
  d.check(std::abs(h.p_hat - 0.5) <= 0.01, "|pi_h - 0.5| = %.4f (limit %.2f)", std::abs(h.p_hat - 0.5), 0.01);
  d.check(std::abs(hv.p_hat - 0.3223) <= 0.01, "|pi_hv - 0.3223| = %.4f (limit %.2f)", std::abs(hv.p_hat - 0.3223),
          0.01);
  d.add("%.0f s", seconds_since(t0));
  return d.done();
}

Outcome c4() {
  Detail d;
  for (double r : {1.488, 2.014, 3.017}) {
    const RectTableRow* row = nullptr;
    for (const auto& x : rect_table())
      if (std::abs(x.r - r) < 5e-4) row = &x;
    const double w = std::round(0.2 * row->width), h = std::round(0.2 * row->height);
    const auto e = rectangle_experiment(w, h, -1.0, mc_run(4));
    const double cft = cardy_rect(w / h);
    const double est = find_event(e, "h").p_hat;
    d.add("r=%.3f (%gx%g) pi_h = %.4f vs %.4f", r, w, h, est, cft);
    d.check(std::abs(est - cft) <= 0.012, "|diff| = %.4f (limit %.3f)", std::abs(est - cft), 0.012);
  }
  return d.done();
}

Outcome c5() {
  const DiscreteDomain dom = build_domain(RectangleRegion{64, 64}, LatticeKind::TriangularSite);
  int exceptions = 0, h_count = 0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    RandomSource src(RngKind::Default, 5, k);
    Configuration cfg = sample_configuration(dom, ConstantField{0.5}, src);
    const bool h = crossing_battery(dom, cfg).h;
    for (auto& o : cfg.open) o = !o;
    const bool v_closed = crossing_battery(dom, cfg).v;
    exceptions += !(h != v_closed);
    h_count += h;
  }
  Detail d;
  d.add("%d configurations, open h in %d", n, h_count);
  d.check(exceptions == 0, "exceptions to h XOR closed v: %g (limit %g)", exceptions, 0);
  return d.done();
}

Outcome c6() {
  Detail d;
  double worst = 0;
  for (const auto& row : striated_parallelogram_table())
    worst = std::max(worst, std::abs(parallelogram_to_rect(0.375, row.r) - row.r0));
  d.check(worst <= 0.005, "alpha=3/8 max |r0 - table| = %.4f (limit %.3f)", worst, 0.005);
  const std::vector<EventSpec> events{{"h", {{"left", "right"}}}};
  for (double r : {1.0, 1.6354}) {
    const double cft = cardy_rect(parallelogram_to_rect(0.25, r));
    double lo = 1, hi = 0;
    for (double deg : {0.0, 15.0, 30.0, 45.0}) {
      ParallelogramRegion reg;
      reg.vertices = make_parallelogram(0.25, r, 40000, 0.0);
      reg.rotation = -deg * kPi / 180;
      const DiscreteDomain dom = build_domain(reg);
      const auto e = estimate_on_domain(dom, ConstantField{default_pc(dom.size())}, events, mc_run(6));
      const double est = find_event(e, "h").p_hat;
      lo = std::min(lo, est);
      hi = std::max(hi, est);
      d.add("r=%.4f rot %g deg: %zu sites, pi_h = %.4f", r, deg, dom.size(), est);
      d.check(std::abs(est - cft) <= 0.012, "|pi_h - cft| = %.4f (limit %.3f)", std::abs(est - cft), 0.012);
    }
    d.add("r=%.4f cft %.4f", r, cft);
    d.check(hi - lo <= 0.012, "rotation spread %.4f (limit %.3f)", hi - lo, 0.012);
  }
  return d.done();
}

Outcome c7() {
  int mismatches = 0, full = 0, cyclic = 0;
  auto compare = [&](const DiscreteDomain& dom, const Configuration& cfg, int L) {
    std::vector<WrapVector> all;
    for (const auto& [root, v] : wrapping_vectors(dom, cfg)) all.insert(all.end(), v.begin(), v.end());
    const HomologySubgroup got = image_subgroup(all);
    mismatches += !(got == oracle::lifted_cycle_subgroup(L, L, cfg.open));
    full += got.kind == HomologySubgroup::Kind::Full;
    cyclic += got.kind == HomologySubgroup::Kind::Cyclic;
  };
  const DiscreteDomain t3 = build_torus(3, 3);
  for (unsigned mask = 0; mask < 512; ++mask) {
    Configuration cfg;
    for (int i = 0; i < 9; ++i) cfg.open.push_back((mask >> i) & 1);
    compare(t3, cfg, 3);
  }
  const DiscreteDomain t4 = build_torus(4, 4);
  for (int k = 0; k < 10000; ++k) {
    RandomSource src(RngKind::Default, 7, k);
    compare(t4, sample_configuration(t4, ConstantField{0.5}, src), 4);
  }
  Detail d;
  d.add("512 + 10000 configurations, %d full, %d cyclic", full, cyclic);
  d.check(mismatches == 0, "mismatches %g (limit %g)", mismatches, 0);
  return d.done();
}

Outcome c8() {
  const HomologyTally t = torus_homology_experiment(256, -1.0, mc_run(8));
  const double p10 = t.probability("(1,0)"), p01 = t.probability("(0,1)"), pH = t.probability("H");
  Detail d;
  d.add("pi(1,0) = %.4f, pi(0,1) = %.4f, pi(H) = %.4f, pi(0) = %.4f", p10, p01, pH, t.probability("0"));
  d.check(std::abs(p10 - p01) <= 0.01, "|pi(1,0) - pi(0,1)| = %.4f (limit %.2f)", std::abs(p10 - p01), 0.01);
  d.check(std::abs(p10 - 0.1693) <= 0.015, "|pi(1,0) - 0.1693| = %.4f (limit %.3f)", std::abs(p10 - 0.1693),
          0.015);
  d.check(std::abs(pH - 0.3101) <= 0.02, "|pi(H) - 0.3101| = %.4f (limit %.2f)", std::abs(pH - 0.3101), 0.02);
  return d.done();
}

Outcome c9() {
  Detail d;
  const auto a = annulus_experiment(100, 1000, -1.0, mc_run(9));
  const double hi = find_event(a, "h_int").p_hat, he = find_event(a, "h_ext").p_hat;
  d.add("annulus pi_h int = %.4f, ext = %.4f", hi, he);
  d.check(std::abs(hi - 0.4316) <= 0.012, "|pi_h_int - 0.4316| = %.4f (limit %.3f)", std::abs(hi - 0.4316), 0.012);
  d.check(std::abs(he - hi) <= 0.01, "|ext - int| = %.4f (limit %.2f)", std::abs(he - hi), 0.01);
  const auto c = cylinder_experiment(202, 240, -1.0, mc_run(90));
  const double lh = find_event(c, "lh").p_hat;
  d.add("cylinder lh = %.4f, lv = %.4f, lhv = %.4f", lh, find_event(c, "lv").p_hat, find_event(c, "lhv").p_hat);
  d.check(std::abs(lh - 0.5) <= 0.012, "|lh - 0.5| = %.4f (limit %.3f)", std::abs(lh - 0.5), 0.012);
  return d.done();
}

Outcome c10() {
  const auto e = exterior_glued_experiment(50, 300, -1.0, mc_run(10));
  const double h = find_event(e, "h").p_hat;
  Detail d;
  d.add("pi_h = %.4f, pi_v = %.4f, pi_hv = %.4f", h, find_event(e, "v").p_hat, find_event(e, "hv").p_hat);
  d.check(h >= 0.48, "pi_h = %.4f >= %.2f", h, 0.48);
  d.check(h <= 0.53, "pi_h = %.4f <= %.2f", h, 0.53);
  return d.done();
}

Outcome c11() {
  const double sites = 400000;
  const DiscreteDomain dom = build_branched_double_cover({0.5, 1.0, sites});
  const auto e = estimate_on_domain(dom, ConstantField{default_pc(dom.size())}, battery_events(), mc_run(11));
  const auto& h = find_event(e, "h");
  const auto& dd = find_event(e, "d");
  const auto& db = find_event(e, "dbar");
  // The two estimates come from the same replicas; their 95% half-widths
  // are combined in quadrature.
  const double ci = std::hypot(dd.ci95, db.ci95);
  const double off = std::abs(dd.p_hat + db.p_hat - 1);
  Detail d;
  d.add("%zu cover sites, pi_h = %.4f, pi_d = %.4f, pi_dbar = %.4f", dom.size(), h.p_hat, dd.p_hat, db.p_hat);
  d.check(std::abs(h.p_hat - 0.5) <= 0.012, "|pi_h - 0.5| = %.4f (limit %.3f)", std::abs(h.p_hat - 0.5), 0.012);
  d.check(off <= 3 * ci, "|pi_d + pi_dbar - 1| = %.4f (limit 3 CI = %.4f)", off, 3 * ci);
  return d.done();
}

Outcome c12() {
  std::vector<double> ratios;
  for (const auto& row : striated_table()) ratios.push_back(row.r);
  Detail d;
  for (auto [a, th] : {std::pair{0.8, 0.3}, {1.2, 0.45}, {0.7538, 0.2643}}) {
    const FitResult f = fit_shear(synthetic_striated_dataset({a, th * kPi}, ratios));
    const double err = std::max(std::abs(f.a - a), std::abs(f.theta - th * kPi));
    d.add("(%.4f, %.4fpi) -> (%.6f, %.6fpi)", a, th, f.a, f.theta / kPi);
    d.check(err <= 1e-3, "max error %.2e (limit %.0e)", err, 1e-3);
    const bool mirror = std::abs(f.theta + f.theta_mirror - kPi) < 1e-12 &&
                        std::abs(f.residual - f.residual_mirror) <= 1e-12 + 1e-9 * f.residual;
    d.check(mirror, "mirror residual diff %.2e (limit %.0e)", std::abs(f.residual - f.residual_mirror), 1e-12);
  }
  return d.done();
}

Outcome c13() {
  const std::vector<EventSpec> events{{"inner_outer", {{"inner", "outer"}}}};
  std::vector<ExponentPoint> pts;
  Detail d;
  for (double ratio : {2.0, 4.0, 8.0, 16.0}) {
    const DiscreteDomain dom = build_domain(AnnulusRegion{64, 64 * ratio, 4});
    const auto e = estimate_on_domain(dom, ConstantField{default_pc(dom.size())}, events,
                                      mc_run(13, Sampling::Lazy));
    const auto& res = find_event(e, "inner_outer");
    pts.push_back({ratio, res.p_hat});
    d.add("ratio %g: pi = %.4f +- %.4f", ratio, res.p_hat, res.ci95);
  }
  const ExponentFit fit = fit_annulus_exponent(pts);
  d.check(fit.exponent >= 0.07, "exponent %.4f >= %.2f", fit.exponent, 0.07);
  d.check(fit.exponent <= 0.14, "exponent %.4f <= %.2f", fit.exponent, 0.14);
  return d.done();
}

std::string cli_csv(std::vector<const char*> args) {
  args.insert(args.begin(), "percolab");
  std::ostringstream out, err;
  if (run_cli(static_cast<int>(args.size()), args.data(), out, err) != 0) return "error: " + err.str();
  return out.str();
}

// Everything after the config line, which records the worker count.
std::string tables_only(const std::string& csv) {
  const auto pos = csv.find("# table:");
  return pos == std::string::npos ? csv : csv.substr(pos);
}

Outcome c14() {
  const std::vector<std::vector<const char*>> commands{
      {"--n", "2000", "--seed", "14", "rect-table", "--only", "1,2.014"},
      {"--n", "2000", "--seed", "14", "--rng", "lcg48", "parallelogram", "--r", "1.2", "--sites", "5000"},
      {"--n", "2000", "--seed", "14", "annulus", "--r1", "8", "--ratios", "2,4"},
      {"--n", "2000", "--seed", "14", "--sampling", "lazy", "cylinder", "--width", "30", "--circumference", "36"},
      {"--n", "2000", "--seed", "14", "exterior", "--r1", "8", "--r2", "30"},
      {"--n", "1000", "--seed", "14", "branched", "--sites", "8000"},
      {"--n", "2000", "--seed", "14", "torus", "--L", "24"},
      {"--n", "500", "--seed", "14", "striated", "--r", "0.7,1,1.5", "--sites", "3000"}};
  int repeat_diffs = 0, worker_diffs = 0, errors = 0;
  Detail d;
  for (const auto& cmd : commands) {
    const std::string a = cli_csv(cmd), b = cli_csv(cmd);
    std::vector<const char*> eight = cmd;
    eight.insert(eight.begin(), {"--workers", "8"});
    const std::string c = cli_csv(eight);
    errors += a.rfind("error", 0) == 0 || c.rfind("error", 0) == 0;
    repeat_diffs += a != b;
    worker_diffs += tables_only(a) != tables_only(c);
  }
  d.add("%zu commands", commands.size());
  d.check(errors == 0, "command errors %g (limit %g)", errors, 0);
  d.check(repeat_diffs == 0, "repeat CSV differences %g (limit %g)", repeat_diffs, 0);
  d.check(worker_diffs == 0, "workers 1 vs 8 table differences %g (limit %g)", worker_diffs, 0);
  return d.done();
}

const std::vector<std::function<Outcome()>> kCriteria{c1, c2, c3, c4,  c5,  c6,  c7,
                                                      c8, c9, c10, c11, c12, c13, c14};
// Criteria whose verdict depends on the Monte Carlo sample size.
constexpr int kMonteCarlo[] = {3, 4, 6, 8, 9, 10, 11, 13};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--n") == 0 && i + 1 < argc) {
      g_n = std::stoull(argv[++i]);
      g_reduced = g_n != 100000;
    } else if (std::strcmp(argv[i], "all") == 0) {
      for (int k = 1; k <= 14; ++k) which.push_back(k);
    } else {
      which.push_back(std::atoi(argv[i]));
    }
  }
  if (which.empty()) {
    std::fprintf(stderr, "usage: acceptance [--n N] (all | 1..14)...\n");
    return 2;
  }
  bool all_pass = true;
  for (int k : which) {
    if (k < 1 || k > 14) {
      std::fprintf(stderr, "no criterion %d\n", k);
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = kCriteria[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool reduced = g_reduced && std::find(std::begin(kMonteCarlo), std::end(kMonteCarlo), k) != std::end(kMonteCarlo);
    char head[96];
    std::snprintf(head, sizeof head, "criterion %2d %s%s [%.1f s]: ", k, o.pass ? "PASS" : "FAIL",
                  reduced ? " (reduced n)" : "", seconds_since(t0));
    const std::string line = head + o.detail;
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    if (const char* log = std::getenv("ACCEPTANCE_LOG"); log && *log) std::ofstream(log, std::ios::app) << line << "\n";
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
