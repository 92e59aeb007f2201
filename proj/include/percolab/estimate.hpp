#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "percolab/cluster.hpp"
#include "percolab/conformal.hpp"
#include "percolab/lattice.hpp"
#include "percolab/rng.hpp"

namespace percolab {

struct EstimateResult {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double p_hat = 0.0;
  double ci95 = 0.0;  // 1.96 sqrt(p(1-p)/n)

  static EstimateResult from_counts(std::uint64_t successes, std::uint64_t trials);
};

// An event holds when every listed interval pair is joined by an open
// cluster (pairs may use different clusters).
struct EventSpec {
  std::string name;
  std::vector<IntervalPair> all_of;
};

struct EventEstimate {
  std::string name;
  EstimateResult result;
};
using EventEstimates = std::vector<EventEstimate>;

const EstimateResult& find_event(const EventEstimates& est, const std::string& name);

// Lazy: a site's state is drawn when the exploration first reaches it, in
// exploration order. Eager: one draw per site in index order before
// exploring (the order of sample_configuration).
enum class Sampling { Lazy, Eager };

struct RunOptions {
  std::uint64_t n = 1000;
  std::uint64_t seed = 1;
  RngKind rng = RngKind::Default;
  int workers = 1;
  Sampling sampling = Sampling::Eager;
};

struct ExperimentSpec {
  RegionSpec region = RectangleRegion{};
  LatticeKind lattice = LatticeKind::SquareSite;
  double mesh = 1.0;
  ProbabilityField field = ConstantField{0.59273};
  std::vector<EventSpec> events;
  RunOptions run;
};

// h, v, hv, d, dbar on the standard interval names.
std::vector<EventSpec> battery_events();

// p_c for a lattice of the given size: 0.5927439 above 2·10⁵ sites,
// 0.59273 otherwise, unless PERCOLAB_PC is set.
double default_pc(std::size_t sites);

// Replica k uses RandomSource(run.rng, run.seed, k); results do not depend
// on run.workers.
EventEstimates estimate_on_domain(const DiscreteDomain& dom, const ProbabilityField& field,
                                  const std::vector<EventSpec>& events, const RunOptions& run);
EventEstimates estimate_events(const ExperimentSpec& spec);

// Event outcomes for a single replica (the same draws as estimate_on_domain).
std::vector<bool> replica_outcomes(const DiscreteDomain& dom, const ProbabilityField& field,
                                   const std::vector<EventSpec>& events, RngKind rng, std::uint64_t seed,
                                   std::uint64_t replica, Sampling sampling);

// Open/closed state of every site revealed by a lazy replica; unrevealed
// sites are reported as -1.
std::vector<int> replica_revealed(const DiscreteDomain& dom, const ProbabilityField& field,
                                  const std::vector<EventSpec>& events, RngKind rng, std::uint64_t seed,
                                  std::uint64_t replica);

// Named experiments. A negative p selects default_pc for the domain.
EventEstimates rectangle_experiment(double width, double height, double p, const RunOptions& run,
                                    LatticeKind lattice = LatticeKind::SquareSite);
// `area` is in lattice units, so roughly the number of sites. The d
// intervals follow the chosen definition.
EventEstimates parallelogram_experiment(double alpha, double r, double area, double rotation, double p,
                                        const RunOptions& run,
                                        DiagonalDefinition def = DiagonalDefinition::First);
// h_int, v_int, hv_int on the inner arcs and h_ext, v_ext, hv_ext on the
// outer arcs; `inner_outer` adds the crossing between the two circles.
EventEstimates annulus_experiment(double r1, double r2, double p, const RunOptions& run, bool inner_outer = false);
// lh, lv, lhv between quarters of the left side; rh, rv, rhv on the right.
EventEstimates cylinder_experiment(int width, int circumference, double p, const RunOptions& run);
EventEstimates exterior_glued_experiment(double r1, double r2, double p, const RunOptions& run);
EventEstimates branched_experiment(double alpha, double r, double sites, double p, const RunOptions& run);

struct HomologyTally {
  std::uint64_t trials = 0;
  std::map<std::string, std::uint64_t> counts;  // "H", "(m,n)", "0"
  // Configurations whose winding span is not saturated (e.g. only (2,0)).
  std::uint64_t non_primitive = 0;

  std::uint64_t count(const std::string& label) const;
  // Estimate for a class; "0" is 1 minus the sum of all other classes.
  double probability(const std::string& label) const;
};

HomologyTally torus_homology_experiment(int L, double p, const RunOptions& run);

}  // namespace percolab
