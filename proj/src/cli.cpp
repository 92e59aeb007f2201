#include "percolab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "percolab/conformal.hpp"
#include "percolab/errors.hpp"
#include "percolab/estimate.hpp"
#include "percolab/fit.hpp"
#include "percolab/report.hpp"
#include "percolab/tables.hpp"

namespace percolab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Common {
  std::uint64_t seed = 1;
  std::string rng = "default";
  int workers = 1;
  std::uint64_t n = 10000;
  std::string format;
  std::string output;
  double pc = -1.0;
  std::string sampling;
};

RunOptions run_options(const Common& c, Sampling fallback) {
  RunOptions run;
  run.n = c.n;
  run.seed = c.seed;
  run.rng = parse_rng_kind(c.rng);
  run.workers = c.workers;
  if (c.sampling.empty()) {
    run.sampling = fallback;
  } else if (c.sampling == "eager") {
    run.sampling = Sampling::Eager;
  } else if (c.sampling == "lazy") {
    run.sampling = Sampling::Lazy;
  } else {
    throw DomainError("unknown sampling mode '" + c.sampling + "' (eager or lazy)");
  }
  return run;
}

nlohmann::json common_json(const Common& c, const RunOptions& run) {
  nlohmann::json j;
  j["seed"] = c.seed;
  j["rng"] = std::string(to_string(run.rng));
  j["workers"] = c.workers;
  j["n"] = c.n;
  j["sampling"] = run.sampling == Sampling::Eager ? "eager" : "lazy";
  if (c.pc >= 0) {
    j["pc"] = c.pc;
  } else if (const char* env = std::getenv("PERCOLAB_PC"); env && *env) {
    j["pc_env"] = env;
  }
  return j;
}

double p_or_default(const Common& c, std::size_t sites) { return c.pc >= 0 ? c.pc : default_pc(sites); }

Value est(const EventEstimates& e, const std::string& name) { return find_event(e, name).p_hat; }
Value ci(const EventEstimates& e, const std::string& name) { return find_event(e, name).ci95; }

Column col(std::string name, ColumnKind kind) { return {std::move(name), kind}; }

DiagonalDefinition parse_definition(const std::string& s) {
  if (s == "first") return DiagonalDefinition::First;
  if (s == "second") return DiagonalDefinition::Second;
  throw DomainError("unknown diagonal definition '" + s + "' (first or second)");
}

LatticeKind parse_lattice(const std::string& s) {
  if (s == "square") return LatticeKind::SquareSite;
  if (s == "triangular") return LatticeKind::TriangularSite;
  throw DomainError("unknown lattice '" + s + "' (square or triangular)");
}

FitWeighting parse_weighting(const std::string& s) {
  if (s == "uniform") return FitWeighting::Uniform;
  if (s == "ci") return FitWeighting::ConfidenceInterval;
  throw DomainError("unknown weighting '" + s + "' (uniform or ci)");
}

// Command options.

struct CardyArgs {
  std::optional<double> r, z;
};

struct RectArgs {
  double scale = 0.2;
  std::vector<double> only;
  std::string lattice = "square";
};

struct ParallelogramArgs {
  double alpha = 0.25;
  std::vector<double> r;
  std::vector<double> rotations_deg{0, 15, 30, 45};
  double sites = 40000;
  std::string definition = "first";
};

struct StriatedArgs {
  std::vector<double> r;
  double sites = 40000;
  double p2 = 0.84928;
  std::string dataset;
  std::string weighting = "uniform";
};

struct AnnulusArgs {
  double r1 = 100;
  double r2 = 1000;
  std::vector<double> ratios;
};

struct CylinderArgs {
  int width = 122;
  int circumference = 332;
};

struct ExteriorArgs {
  double r1 = 50;
  double r2 = 300;
};

struct BranchedArgs {
  double alpha = 0.5;
  std::vector<double> r{1.0};
  double sites = 40000;
};

struct TorusArgs {
  int L = 128;
};

struct FitArgs {
  std::string dataset;
  std::string exponent;
  std::string weighting = "uniform";
  std::vector<double> predict;
  std::optional<double> a, theta_pi;
};

// Commands.

Report cmd_cardy(const CardyArgs& a) {
  if (a.r.has_value() == a.z.has_value()) throw CLI::ValidationError("cardy", "give exactly one of --r and --z");
  Report rep{"cardy", {}, {}};
  Table t{"cardy", {col("input", ColumnKind::Text), col("value", ColumnKind::Real), col("pi_h", ColumnKind::Cardy)},
          {}};
  if (a.r) {
    rep.config["r"] = *a.r;
    t.add_row({std::string("r"), *a.r, cardy_rect(*a.r)});
  } else {
    rep.config["z"] = *a.z;
    t.add_row({std::string("z"), *a.z, cardy(*a.z)});
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

Report cmd_rect_table(const RectArgs& a, const Common& c) {
  if (!(a.scale > 0)) throw DomainError("scale must be positive");
  const RunOptions run = run_options(c, Sampling::Eager);
  const LatticeKind lattice = parse_lattice(a.lattice);
  Report rep{"rect-table", common_json(c, run), {}};
  rep.config["scale"] = a.scale;
  rep.config["lattice"] = a.lattice;
  Table t{"rect",
          {col("width", ColumnKind::Integer), col("height", ColumnKind::Integer), col("r", ColumnKind::Real),
           col("pi_h_cft", ColumnKind::Cardy), col("pi_h", ColumnKind::Estimate), col("pi_v", ColumnKind::Estimate),
           col("pi_hv", ColumnKind::Estimate), col("ci95", ColumnKind::Estimate)},
          {}};
  for (const auto& row : rect_table()) {
    if (!a.only.empty() &&
        std::none_of(a.only.begin(), a.only.end(), [&](double r) { return std::abs(r - row.r) < 5e-4; }))
      continue;
    const auto w = static_cast<std::int64_t>(std::lround(row.width * a.scale));
    const auto h = static_cast<std::int64_t>(std::lround(row.height * a.scale));
    if (w < 1 || h < 1) throw DomainError("scale too small: a rectangle has no sites");
    const DiscreteDomain dom = build_domain(RectangleRegion{double(w), double(h)}, lattice);
    const std::vector<EventSpec> events{{"h", {{"left", "right"}}},
                                        {"v", {{"top", "bottom"}}},
                                        {"hv", {{"left", "right"}, {"top", "bottom"}}}};
    const auto e = estimate_on_domain(dom, ConstantField{p_or_default(c, dom.size())}, events, run);
    const double r = double(w) / double(h);
    t.add_row({w, h, r, cardy_rect(r), est(e, "h"), est(e, "v"), est(e, "hv"), ci(e, "h")});
  }
  if (t.rows.empty()) throw DomainError("--only matched no table rows");
  rep.tables.push_back(std::move(t));
  return rep;
}

Report cmd_parallelogram(const ParallelogramArgs& a, const Common& c) {
  if (!(a.alpha > 0 && a.alpha < 1)) throw DomainError("alpha must lie in (0,1)");
  if (!(a.sites >= 16)) throw DomainError("sites must be at least 16");
  std::vector<double> ratios = a.r;
  if (ratios.empty())
    for (const auto& row : parallelogram_table(a.alpha)) ratios.push_back(row.r);
  const DiagonalDefinition def = parse_definition(a.definition);
  const RunOptions run = run_options(c, Sampling::Eager);
  Report rep{"parallelogram", common_json(c, run), {}};
  rep.config["alpha"] = a.alpha;
  rep.config["r"] = ratios;
  rep.config["rotations_deg"] = a.rotations_deg;
  rep.config["sites"] = a.sites;
  rep.config["definition"] = a.definition;
  Table t{"parallelogram",
          {col("alpha", ColumnKind::Real), col("r", ColumnKind::Real), col("rotation_deg", ColumnKind::Real),
           col("sites", ColumnKind::Integer), col("r0", ColumnKind::Real), col("pi_h_cft", ColumnKind::Cardy),
           col("pi_h", ColumnKind::Estimate), col("pi_v", ColumnKind::Estimate), col("pi_hv", ColumnKind::Estimate),
           col("pi_d_cft", ColumnKind::Cardy), col("pi_d", ColumnKind::Estimate), col("ci95", ColumnKind::Estimate)},
          {}};
  for (double r : ratios) {
    if (!(r > 0)) throw DomainError("side ratios must be positive");
    const double r0 = parallelogram_to_rect(a.alpha, r);
    const double d_cft = cardy_diagonal(a.alpha, r, def);
    for (double deg : a.rotations_deg) {
      ParallelogramRegion reg;
      reg.vertices = make_parallelogram(a.alpha, r, a.sites, 0.0);
      // Rotations are clockwise.
      reg.rotation = -deg * kPi / 180.0;
      if (def == DiagonalDefinition::Second) {
        const auto split = diagonal_split(a.alpha, solve_parallelogram(a.alpha, r).z, def);
        reg.left_split = split.left_fraction;
        reg.bottom_split = split.bottom_fraction;
      }
      const DiscreteDomain dom = build_domain(reg);
      const auto e = estimate_on_domain(dom, ConstantField{p_or_default(c, dom.size())}, battery_events(), run);
      t.add_row({a.alpha, r, deg, static_cast<std::int64_t>(dom.size()), r0, cardy_rect(r0), est(e, "h"),
                 est(e, "v"), est(e, "hv"), d_cft, est(e, "d"), ci(e, "h")});
    }
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

Table fit_table(const FitResult& f) {
  Table t{"fit",
          {col("a", ColumnKind::Real), col("theta", ColumnKind::Real), col("theta_over_pi", ColumnKind::Real),
           col("residual", ColumnKind::Real), col("theta_mirror", ColumnKind::Real),
           col("theta_mirror_over_pi", ColumnKind::Real), col("residual_mirror", ColumnKind::Real),
           col("b_hat", ColumnKind::Real)},
          {}};
  t.add_row({f.a, f.theta, f.theta / kPi, f.residual, f.theta_mirror, f.theta_mirror / kPi, f.residual_mirror,
             side_ratio_scale({f.a, f.theta})});
  return t;
}

Table prediction_table(const StriatedDataset& data, const ShearMatrix& g) {
  Table t{"prediction",
          {col("r", ColumnKind::Real), col("r0", ColumnKind::Real), col("pi_h", ColumnKind::Estimate),
           col("pi_h_cft", ColumnKind::Cardy), col("pi_v", ColumnKind::Estimate), col("pi_v_cft", ColumnKind::Cardy)},
          {}};
  for (const auto& row : data) {
    const double r0 = shear_equivalent_rect(g, row.r);
    const double ph = cardy_rect(r0);
    t.add_row({row.r, r0, row.pi_h, ph, row.pi_v, 1.0 - ph});
  }
  return t;
}

StriatedDataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open dataset '" + path + "'");
  return read_striated_csv(in);
}

Report cmd_striated(const StriatedArgs& a, const Common& c) {
  const RunOptions run = run_options(c, Sampling::Eager);
  const FitWeighting weighting = parse_weighting(a.weighting);
  Report rep{"striated", common_json(c, run), {}};
  rep.config["weighting"] = a.weighting;
  StriatedDataset data;
  if (!a.dataset.empty()) {
    rep.config["dataset"] = a.dataset;
    data = load_dataset(a.dataset);
    Table t{"dataset",
            {col("r", ColumnKind::Real), col("pi_h", ColumnKind::Estimate), col("ci_h", ColumnKind::Estimate),
             col("pi_v", ColumnKind::Estimate), col("ci_v", ColumnKind::Estimate)},
            {}};
    for (const auto& row : data) t.add_row({row.r, row.pi_h, row.ci_h, row.pi_v, row.ci_v});
    rep.tables.push_back(std::move(t));
  } else {
    std::vector<double> ratios = a.r;
    if (ratios.empty())
      for (const auto& row : striated_table()) ratios.push_back(row.r);
    if (!(a.sites >= 4)) throw DomainError("sites must be at least 4");
    StriatedField field;
    field.p2 = a.p2;
    validate_field(field);
    rep.config["r"] = ratios;
    rep.config["sites"] = a.sites;
    rep.config["p2"] = a.p2;
    Table t{"dataset",
            {col("r", ColumnKind::Real), col("width", ColumnKind::Integer), col("height", ColumnKind::Integer),
             col("pi_h", ColumnKind::Estimate), col("ci_h", ColumnKind::Estimate), col("pi_v", ColumnKind::Estimate),
             col("ci_v", ColumnKind::Estimate), col("pi_hv", ColumnKind::Estimate)},
            {}};
    const std::vector<EventSpec> events{{"h", {{"left", "right"}}},
                                        {"v", {{"top", "bottom"}}},
                                        {"hv", {{"left", "right"}, {"top", "bottom"}}}};
    for (double r : ratios) {
      if (!(r > 0)) throw DomainError("side ratios must be positive");
      const auto w = std::max<std::int64_t>(1, std::lround(std::sqrt(a.sites * r)));
      const auto h = std::max<std::int64_t>(1, std::lround(std::sqrt(a.sites / r)));
      const DiscreteDomain dom = build_domain(RectangleRegion{double(w), double(h)});
      const auto e = estimate_on_domain(dom, field, events, run);
      const double ra = double(w) / double(h);
      data.push_back({ra, find_event(e, "h").p_hat, find_event(e, "v").p_hat, find_event(e, "h").ci95,
                      find_event(e, "v").ci95});
      t.add_row({ra, w, h, est(e, "h"), ci(e, "h"), est(e, "v"), ci(e, "v"), est(e, "hv")});
    }
    rep.tables.push_back(std::move(t));
  }
  FitOptions opts;
  opts.weighting = weighting;
  const FitResult f = fit_shear(data, opts);
  rep.tables.push_back(fit_table(f));
  rep.tables.push_back(prediction_table(data, {f.a, f.theta}));
  return rep;
}

Report cmd_annulus(const AnnulusArgs& a, const Common& c) {
  if (a.ratios.empty()) {
    if (!(a.r1 > 0 && a.r2 > a.r1)) throw DomainError("annulus needs 0 < r1 < r2");
    const RunOptions run = run_options(c, Sampling::Eager);
    Report rep{"annulus", common_json(c, run), {}};
    rep.config["r1"] = a.r1;
    rep.config["r2"] = a.r2;
    const DiscreteDomain dom = build_domain(AnnulusRegion{a.r1, a.r2, 4});
    std::vector<EventSpec> events;
    for (const char* side : {"inner", "outer"}) {
      const std::string s = side, suffix = s == "inner" ? "_int" : "_ext";
      const IntervalPair h{s + "_left", s + "_right"}, v{s + "_top", s + "_bottom"};
      events.push_back({"h" + suffix, {h}});
      events.push_back({"v" + suffix, {v}});
      events.push_back({"hv" + suffix, {h, v}});
    }
    const auto e = estimate_on_domain(dom, ConstantField{p_or_default(c, dom.size())}, events, run);
    Table t{"annulus",
            {col("arcs", ColumnKind::Text), col("pi_h", ColumnKind::Estimate), col("pi_v", ColumnKind::Estimate),
             col("pi_hv", ColumnKind::Estimate), col("ci95", ColumnKind::Estimate)},
            {}};
    t.add_row({std::string("interior"), est(e, "h_int"), est(e, "v_int"), est(e, "hv_int"), ci(e, "h_int")});
    t.add_row({std::string("exterior"), est(e, "h_ext"), est(e, "v_ext"), est(e, "hv_ext"), ci(e, "h_ext")});
    rep.tables.push_back(std::move(t));
    return rep;
  }
  // Exponent mode: inner/outer crossings at several radius ratios.
  if (!(a.r1 > 0)) throw DomainError("r1 must be positive");
  const RunOptions run = run_options(c, Sampling::Lazy);
  Report rep{"annulus", common_json(c, run), {}};
  rep.config["r1"] = a.r1;
  rep.config["ratios"] = a.ratios;
  Table t{"exponent_points",
          {col("ratio", ColumnKind::Real), col("r2", ColumnKind::Real), col("sites", ColumnKind::Integer),
           col("pi", ColumnKind::Estimate), col("ci95", ColumnKind::Estimate), col("power_law", ColumnKind::Real)},
          {}};
  std::vector<ExponentPoint> points;
  const std::vector<EventSpec> events{{"inner_outer", {{"inner", "outer"}}}};
  for (double ratio : a.ratios) {
    if (!(ratio > 1)) throw DomainError("annulus ratios must exceed 1");
    const DiscreteDomain dom = build_domain(AnnulusRegion{a.r1, a.r1 * ratio, 4});
    const auto e = estimate_on_domain(dom, ConstantField{p_or_default(c, dom.size())}, events, run);
    const auto& res = find_event(e, "inner_outer");
    points.push_back({ratio, res.p_hat});
    t.add_row({ratio, a.r1 * ratio, static_cast<std::int64_t>(dom.size()), res.p_hat, res.ci95,
               std::pow(ratio, -annulus_exponent_prediction())});
  }
  rep.tables.push_back(std::move(t));
  const ExponentFit fit = fit_annulus_exponent(points);
  for (const auto& w : fit.warnings) std::cerr << "warning: " << w << "\n";
  Table ft{"exponent_fit",
           {col("exponent", ColumnKind::Real), col("prediction", ColumnKind::Real), col("points", ColumnKind::Integer)},
           {}};
  ft.add_row({fit.exponent, annulus_exponent_prediction(), static_cast<std::int64_t>(fit.used)});
  rep.tables.push_back(std::move(ft));
  return rep;
}

Report cmd_cylinder(const CylinderArgs& a, const Common& c) {
  if (a.width < 1 || a.circumference < 4) throw DomainError("cylinder needs width >= 1 and circumference >= 4");
  const RunOptions run = run_options(c, Sampling::Eager);
  Report rep{"cylinder", common_json(c, run), {}};
  rep.config["width"] = a.width;
  rep.config["circumference"] = a.circumference;
  const DiscreteDomain dom = build_cylinder(a.width, a.circumference);
  std::vector<EventSpec> events;
  for (const char* side : {"left", "right"}) {
    const std::string s = side;
    const IntervalPair h{s + "_q0", s + "_q2"}, v{s + "_q1", s + "_q3"};
    events.push_back({s + "_h", {h}});
    events.push_back({s + "_v", {v}});
    events.push_back({s + "_hv", {h, v}});
  }
  const auto e = estimate_on_domain(dom, ConstantField{p_or_default(c, dom.size())}, events, run);
  Table t{"cylinder",
          {col("side", ColumnKind::Text), col("pi_h", ColumnKind::Estimate), col("pi_v", ColumnKind::Estimate),
           col("pi_hv", ColumnKind::Estimate), col("ci95", ColumnKind::Estimate),
           col("annulus_ratio", ColumnKind::Real)},
          {}};
  const double ratio = cylinder_to_annulus_ratio(a.width, a.circumference);
  for (const char* side : {"left", "right"}) {
    const std::string s = side;
    t.add_row({s, est(e, s + "_h"), est(e, s + "_v"), est(e, s + "_hv"), ci(e, s + "_h"), ratio});
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

Report cmd_exterior(const ExteriorArgs& a, const Common& c) {
  if (!(a.r1 > 0 && a.r2 > a.r1)) throw DomainError("exterior needs 0 < r1 < r2");
  const RunOptions run = run_options(c, Sampling::Eager);
  Report rep{"exterior", common_json(c, run), {}};
  rep.config["r1"] = a.r1;
  rep.config["r2"] = a.r2;
  const DiscreteDomain dom = build_glued_exterior(a.r1, a.r2);
  const IntervalPair h{"inner_left", "inner_right"}, v{"inner_top", "inner_bottom"};
  const std::vector<EventSpec> events{{"h", {h}}, {"v", {v}}, {"hv", {h, v}}};
  const auto e = estimate_on_domain(dom, ConstantField{p_or_default(c, dom.size())}, events, run);
  Table t{"exterior",
          {col("sites", ColumnKind::Integer), col("pi_h", ColumnKind::Estimate), col("pi_v", ColumnKind::Estimate),
           col("pi_hv", ColumnKind::Estimate), col("ci95", ColumnKind::Estimate)},
          {}};
  t.add_row({static_cast<std::int64_t>(dom.size()), est(e, "h"), est(e, "v"), est(e, "hv"), ci(e, "h")});
  rep.tables.push_back(std::move(t));
  return rep;
}

Report cmd_branched(const BranchedArgs& a, const Common& c) {
  if (!(a.alpha > 0 && a.alpha < 1)) throw DomainError("alpha must lie in (0,1)");
  if (!(a.sites >= 16)) throw DomainError("sites must be at least 16");
  const RunOptions run = run_options(c, Sampling::Eager);
  Report rep{"branched", common_json(c, run), {}};
  rep.config["alpha"] = a.alpha;
  rep.config["r"] = a.r;
  rep.config["sites"] = a.sites;
  Table t{"branched",
          {col("alpha", ColumnKind::Real), col("r", ColumnKind::Real), col("sites", ColumnKind::Integer),
           col("r0", ColumnKind::Real), col("pi_h_cft", ColumnKind::Cardy), col("pi_h", ColumnKind::Estimate),
           col("pi_v", ColumnKind::Estimate), col("pi_hv", ColumnKind::Estimate), col("pi_d_cft", ColumnKind::Cardy),
           col("pi_d", ColumnKind::Estimate), col("pi_dbar", ColumnKind::Estimate), col("ci95", ColumnKind::Estimate)},
          {}};
  for (double r : a.r) {
    if (!(r > 0)) throw DomainError("side ratios must be positive");
    const DiscreteDomain dom = build_branched_double_cover({a.alpha, r, a.sites});
    const auto e = estimate_on_domain(dom, ConstantField{p_or_default(c, dom.size())}, battery_events(), run);
    const double r0 = parallelogram_to_rect(a.alpha, r);
    t.add_row({a.alpha, r, static_cast<std::int64_t>(dom.size()), r0, cardy_rect(r0), est(e, "h"), est(e, "v"),
               est(e, "hv"), cardy_diagonal(a.alpha, r, DiagonalDefinition::Second), est(e, "d"), est(e, "dbar"),
               ci(e, "h")});
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

Report cmd_torus(const TorusArgs& a, const Common& c) {
  if (a.L < 2) throw DomainError("torus side must be at least 2");
  const RunOptions run = run_options(c, Sampling::Eager);
  Report rep{"torus", common_json(c, run), {}};
  rep.config["L"] = a.L;
  const double p = c.pc >= 0 ? c.pc : -1.0;
  const HomologyTally tally = torus_homology_experiment(a.L, p, run);
  Table t{"torus",
          {col("L", ColumnKind::Integer), col("trials", ColumnKind::Integer), col("pi_H", ColumnKind::Estimate),
           col("pi_1_0", ColumnKind::Estimate), col("pi_0_1", ColumnKind::Estimate),
           col("pi_1_1", ColumnKind::Estimate), col("pi_1_m1", ColumnKind::Estimate),
           col("pi_0", ColumnKind::Estimate), col("non_primitive", ColumnKind::Integer)},
          {}};
  t.add_row({static_cast<std::int64_t>(a.L), static_cast<std::int64_t>(tally.trials), tally.probability("H"),
             tally.probability("(1,0)"), tally.probability("(0,1)"), tally.probability("(1,1)"),
             tally.probability("(1,-1)"), tally.probability("0"), static_cast<std::int64_t>(tally.non_primitive)});
  rep.tables.push_back(std::move(t));
  Table classes{"classes",
                {col("subgroup", ColumnKind::Text), col("count", ColumnKind::Integer),
                 col("probability", ColumnKind::Estimate)},
                {}};
  for (const auto& [label, count] : tally.counts)
    classes.add_row({label, static_cast<std::int64_t>(count),
                     static_cast<double>(count) / static_cast<double>(tally.trials)});
  rep.tables.push_back(std::move(classes));
  return rep;
}

Report cmd_fit(const FitArgs& a) {
  const int modes = !a.dataset.empty() + !a.exponent.empty() + !a.predict.empty();
  if (modes == 0) throw CLI::ValidationError("fit", "give --dataset, --exponent or --predict");
  Report rep{"fit", {}, {}};
  std::optional<ShearMatrix> g;
  if (!a.dataset.empty()) {
    rep.config["dataset"] = a.dataset;
    rep.config["weighting"] = a.weighting;
    const StriatedDataset data = load_dataset(a.dataset);
    FitOptions opts;
    opts.weighting = parse_weighting(a.weighting);
    const FitResult f = fit_shear(data, opts);
    g = ShearMatrix{f.a, f.theta};
    rep.tables.push_back(fit_table(f));
    rep.tables.push_back(prediction_table(data, *g));
  }
  if (!a.exponent.empty()) {
    rep.config["exponent"] = a.exponent;
    std::ifstream in(a.exponent);
    if (!in) throw DomainError("cannot open '" + a.exponent + "'");
    std::vector<ExponentPoint> points;
    std::string line;
    std::vector<std::string> header;
    int cr = -1, cp = -1;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') {
        if (cr >= 0 && !points.empty()) break;
        continue;
      }
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      if (cr < 0) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
          if (cells[k] == "ratio") cr = static_cast<int>(k);
          if (cells[k] == "pi") cp = static_cast<int>(k);
        }
        if (cr < 0 || cp < 0) throw DomainError("exponent CSV needs columns ratio and pi");
        continue;
      }
      if (static_cast<int>(cells.size()) <= std::max(cr, cp)) throw DomainError("exponent CSV row is short");
      points.push_back({std::stod(cells[cr]), std::stod(cells[cp])});
    }
    const ExponentFit fit = fit_annulus_exponent(points);
    for (const auto& w : fit.warnings) std::cerr << "warning: " << w << "\n";
    Table t{"exponent_fit",
            {col("exponent", ColumnKind::Real), col("prediction", ColumnKind::Real),
             col("points", ColumnKind::Integer)},
            {}};
    t.add_row({fit.exponent, annulus_exponent_prediction(), static_cast<std::int64_t>(fit.used)});
    rep.tables.push_back(std::move(t));
  }
  if (!a.predict.empty()) {
    if (a.predict.size() % 3 != 0) throw CLI::ValidationError("--predict", "expects b,c,d triples");
    if (a.a && a.theta_pi) {
      g = ShearMatrix{*a.a, *a.theta_pi * kPi};
    } else if (!g) {
      throw CLI::ValidationError("--predict", "needs --a and --theta-pi or a --dataset to fit");
    }
    g->validate();
    rep.config["predict"] = a.predict;
    rep.config["a"] = g->a;
    rep.config["theta"] = g->theta;
    Table t{"parallelogram_prediction",
            {col("b", ColumnKind::Real), col("c", ColumnKind::Real), col("d", ColumnKind::Real),
             col("alpha", ColumnKind::Real), col("r", ColumnKind::Real), col("r0", ColumnKind::Real),
             col("pi_h_cft", ColumnKind::Cardy), col("pi_v_cft", ColumnKind::Cardy)},
            {}};
    for (std::size_t k = 0; k < a.predict.size(); k += 3) {
      const auto p = predict_parallelogram(*g, a.predict[k], a.predict[k + 1], a.predict[k + 2]);
      t.add_row({a.predict[k], a.predict[k + 1], a.predict[k + 2], p.alpha, p.r, p.r0, p.pi_h, p.pi_v});
    }
    rep.tables.push_back(std::move(t));
  }
  return rep;
}

std::string json_error(const std::string& type, const std::string& message, const std::string& diagnostics = "") {
  nlohmann::json j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  if (!diagnostics.empty()) j["error"]["diagnostics"] = diagnostics;
  return j.dump();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical site percolation: Cardy predictions and Monte Carlo crossing estimates", "percolab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML or INI file; sections are named after subcommands, flags win");

  Common c;
  app.add_option("--seed", c.seed, "Base seed")->capture_default_str();
  app.add_option("--rng", c.rng, "Generator: default or lcg48")->capture_default_str();
  app.add_option("--workers", c.workers, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--n", c.n, "Configurations per estimate")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", c.format, "Output format: csv, json or pretty");
  app.add_option("--output", c.output, "Write results to this file");
  app.add_option("--pc", c.pc, "Site probability (default: size-based p_c or PERCOLAB_PC)")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--sampling", c.sampling, "eager (one draw per site) or lazy (draw on first visit)");

  CardyArgs cardy_args;
  auto* cardy_cmd = app.add_subcommand("cardy", "Cardy's formula at an aspect ratio or cross-ratio");
  cardy_cmd->add_option("--r", cardy_args.r, "Rectangle aspect ratio width/height")->check(CLI::PositiveNumber);
  cardy_cmd->add_option("--z", cardy_args.z, "Cross-ratio in [0,1]")->check(CLI::Range(0.0, 1.0));

  RectArgs rect_args;
  auto* rect_cmd = app.add_subcommand("rect-table", "Crossing estimates on the 41 reference rectangles");
  rect_cmd->add_option("--scale", rect_args.scale, "Linear scale of the reference sizes")->capture_default_str();
  rect_cmd->add_option("--only", rect_args.only, "Keep only rows with these r values")->delimiter(',');
  rect_cmd->add_option("--lattice", rect_args.lattice, "square or triangular")->capture_default_str();

  ParallelogramArgs par_args;
  auto* par_cmd = app.add_subcommand("parallelogram", "Rotated parallelograms on the square lattice");
  par_cmd->add_option("--alpha", par_args.alpha, "Interior angle over π")->capture_default_str();
  par_cmd->add_option("--r", par_args.r, "Side ratios bottom/left (default: reference list)")->delimiter(',');
  par_cmd->add_option("--rotations", par_args.rotations_deg, "Clockwise rotations in degrees")
      ->delimiter(',')
      ->capture_default_str();
  par_cmd->add_option("--sites", par_args.sites, "Approximate number of sites")->capture_default_str();
  par_cmd->add_option("--definition", par_args.definition, "d intervals: first or second")->capture_default_str();

  StriatedArgs str_args;
  auto* str_cmd = app.add_subcommand("striated", "Striated-model rectangles and the shear fit");
  str_cmd->add_option("--r", str_args.r, "Side ratios (default: reference list)")->delimiter(',');
  str_cmd->add_option("--sites", str_args.sites, "Approximate sites per rectangle")->capture_default_str();
  str_cmd->add_option("--p2", str_args.p2, "Off-band probability")->capture_default_str();
  str_cmd->add_option("--dataset", str_args.dataset, "Fit this CSV instead of simulating");
  str_cmd->add_option("--weighting", str_args.weighting, "uniform or ci")->capture_default_str();

  AnnulusArgs ann_args;
  auto* ann_cmd = app.add_subcommand("annulus", "Annulus arc crossings, or the crossing exponent with --ratios");
  ann_cmd->add_option("--r1", ann_args.r1, "Inner radius")->capture_default_str();
  ann_cmd->add_option("--r2", ann_args.r2, "Outer radius")->capture_default_str();
  ann_cmd->add_option("--ratios", ann_args.ratios, "Radius ratios for the exponent fit")->delimiter(',');

  CylinderArgs cyl_args;
  auto* cyl_cmd = app.add_subcommand("cylinder", "Crossings between quarters of a periodic cylinder's sides");
  cyl_cmd->add_option("--width", cyl_args.width, "Sites across")->capture_default_str();
  cyl_cmd->add_option("--circumference", cyl_args.circumference, "Sites around")->capture_default_str();

  ExteriorArgs ext_args;
  auto* ext_cmd = app.add_subcommand("exterior", "Inner-arc crossings on an annulus glued to a disk");
  ext_cmd->add_option("--r1", ext_args.r1, "Inner radius")->capture_default_str();
  ext_cmd->add_option("--r2", ext_args.r2, "Outer radius and disk radius")->capture_default_str();

  BranchedArgs br_args;
  auto* br_cmd = app.add_subcommand("branched", "Parallelograms on the double cover branched at a site");
  br_cmd->add_option("--alpha", br_args.alpha, "Interior angle over π")->capture_default_str();
  br_cmd->add_option("--r", br_args.r, "Side ratios bottom/left")->delimiter(',')->capture_default_str();
  br_cmd->add_option("--sites", br_args.sites, "Approximate sites on the cover")->capture_default_str();

  TorusArgs tor_args;
  auto* tor_cmd = app.add_subcommand("torus", "Homology subgroups spanned by clusters on an L x L torus");
  tor_cmd->add_option("--L", tor_args.L, "Side length")->capture_default_str();

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Shear fit, exponent fit, or parallelogram predictions");
  fit_cmd->add_option("--dataset", fit_args.dataset, "CSV with r, pi_h, pi_v (ci_h, ci_v optional)");
  fit_cmd->add_option("--exponent", fit_args.exponent, "CSV with ratio and pi columns");
  fit_cmd->add_option("--weighting", fit_args.weighting, "uniform or ci")->capture_default_str();
  fit_cmd->add_option("--predict", fit_args.predict, "b,c,d triples of striated parallelograms")->delimiter(',');
  fit_cmd->add_option("--a", fit_args.a, "Shear parameter a for --predict");
  fit_cmd->add_option("--theta-pi", fit_args.theta_pi, "Shear angle over π for --predict");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << json_error("usage", e.what()) << "\n";
    return kExitUsage;
  }

  try {
    Report rep;
    bool cardy_plain = false;
    if (app.got_subcommand(cardy_cmd)) {
      rep = cmd_cardy(cardy_args);
      cardy_plain = c.format.empty() || c.format == "pretty";
    } else if (app.got_subcommand(rect_cmd)) {
      rep = cmd_rect_table(rect_args, c);
    } else if (app.got_subcommand(par_cmd)) {
      rep = cmd_parallelogram(par_args, c);
    } else if (app.got_subcommand(str_cmd)) {
      rep = cmd_striated(str_args, c);
    } else if (app.got_subcommand(ann_cmd)) {
      rep = cmd_annulus(ann_args, c);
    } else if (app.got_subcommand(cyl_cmd)) {
      rep = cmd_cylinder(cyl_args, c);
    } else if (app.got_subcommand(ext_cmd)) {
      rep = cmd_exterior(ext_args, c);
    } else if (app.got_subcommand(br_cmd)) {
      rep = cmd_branched(br_args, c);
    } else if (app.got_subcommand(tor_cmd)) {
      rep = cmd_torus(tor_args, c);
    } else {
      rep = cmd_fit(fit_args);
    }
    const OutputFormat format = parse_output_format(c.format.empty() ? "csv" : c.format);
    std::ofstream file;
    std::ostream* dest = &out;
    if (!c.output.empty()) {
      file.open(c.output);
      if (!file) throw DomainError("cannot write '" + c.output + "'");
      dest = &file;
    }
    if (cardy_plain) {
      const Table& t = rep.tables.front();
      *dest << format_cell(t.rows.front()[2], ColumnKind::Cardy) << "\n";
    } else {
      write_report(rep, format, *dest);
    }
    return kExitOk;
  } catch (const CLI::ValidationError& e) {
    err << json_error("usage", e.what()) << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << json_error("numeric_error", e.what(), e.diagnostics()) << "\n";
    return kExitNumeric;
  } catch (const DomainError& e) {
    err << json_error("domain_error", e.what()) << "\n";
    return kExitDomain;
  } catch (const ContractError& e) {
    err << json_error("contract_error", e.what()) << "\n";
    return kExitContract;
  } catch (const std::exception& e) {
    err << json_error("error", e.what()) << "\n";
    return kExitFailure;
  }
}

}  // namespace percolab
