#include "percolab/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "percolab/errors.hpp"
#include "percolab/geometry.hpp"

namespace percolab {

EstimateResult EstimateResult::from_counts(std::uint64_t successes, std::uint64_t trials) {
  EstimateResult r;
  r.successes = successes;
  r.trials = trials;
  if (trials > 0) {
    r.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
    r.ci95 = 1.96 * std::sqrt(r.p_hat * (1.0 - r.p_hat) / static_cast<double>(trials));
  }
  return r;
}

const EstimateResult& find_event(const EventEstimates& est, const std::string& name) {
  for (const auto& e : est)
    if (e.name == name) return e.result;
  throw ContractError("no estimate for event '" + name + "'");
}

std::vector<EventSpec> battery_events() {
  const BatteryIntervals d;
  return {{"h", {d.h}}, {"v", {d.v}}, {"hv", {d.h, d.v}}, {"d", {d.d}}, {"dbar", {d.dbar}}};
}

double default_pc(std::size_t sites) {
  if (const char* env = std::getenv("PERCOLAB_PC"); env && *env) {
    char* end = nullptr;
    const double p = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(p >= 0.0 && p <= 1.0)) {
      throw DomainError(std::string("PERCOLAB_PC is not a probability: ") + env);
    }
    return p;
  }
  return sites > 200000 ? 0.5927439 : 0.59273;
}

namespace {

using Index = DiscreteDomain::Index;

// Per-worker exploration state. Site states and visit marks are tagged
// with counters so nothing is cleared between replicas. Everything a step
// touches for one site sits in a single 16-byte record.
class Explorer {
 public:
  Explorer(const DiscreteDomain& dom, const ProbabilityField& field, const std::vector<EventSpec>& events,
           Sampling sampling)
      : size_(dom.size()), field_(field), events_(events), sampling_(sampling) {
    validate_field(field);
    std::vector<std::string> names;
    for (const auto& e : events) {
      if (e.all_of.empty()) throw ContractError("event '" + e.name + "' lists no interval pair");
      for (const auto& p : e.all_of) {
        for (const std::string* s : {&p.from, &p.to}) {
          dom.interval(*s);
          if (std::find(names.begin(), names.end(), *s) == names.end()) names.push_back(*s);
        }
      }
    }
    if (names.size() > 32) throw ContractError("at most 32 distinct intervals per experiment");
    for (const auto& e : events) {
      std::vector<std::size_t> ids;
      for (const auto& p : e.all_of) {
        const auto pos = [&](const std::string& n) {
          return static_cast<int>(std::find(names.begin(), names.end(), n) - names.begin());
        };
        const std::pair<int, int> key{pos(p.from), pos(p.to)};
        auto it = std::find(pairs_.begin(), pairs_.end(), key);
        ids.push_back(static_cast<std::size_t>(it - pairs_.begin()));
        if (it == pairs_.end()) pairs_.push_back(key);
      }
      event_pairs_.push_back(std::move(ids));
    }
    nodes_.resize(size_ + 1);
    adj_.reserve(2 * dom.edge_count());
    for (std::size_t i = 0; i < size_; ++i) {
      nodes_[i].adj_begin = static_cast<std::uint32_t>(adj_.size());
      for (Index nb : dom.neighbors(static_cast<Index>(i))) adj_.push_back(nb);
    }
    nodes_[size_].adj_begin = static_cast<std::uint32_t>(adj_.size());
    for (std::size_t k = 0; k < names.size(); ++k) {
      seeds_.push_back(dom.interval(names[k]));
      for (Index s : seeds_.back()) nodes_[s].mask |= (1u << k);
    }
    if (const auto* s = std::get_if<StriatedField>(&field)) {
      for (std::size_t i = 0; i < size_; ++i)
        if (s->is_band(dom.cell(static_cast<Index>(i)))) nodes_[i].state |= kBand;
    }
  }

  template <class Engine>
  void run(Engine& eng, std::vector<bool>& outcome) {
    thresholds<Engine>();
    next_epoch();
    if (sampling_ == Sampling::Eager) sweep(eng);
    pair_state_.assign(pairs_.size(), -1);
    outcome.assign(events_.size(), false);
    for (std::size_t e = 0; e < events_.size(); ++e) {
      bool all = true;
      for (std::size_t id : event_pairs_[e]) {
        if (pair_state_[id] < 0) {
          const auto [a, b] = pairs_[id];
          pair_state_[id] = (sampling_ == Sampling::Eager ? swept_connected(a, b) : connected(eng, a, b)) ? 1 : 0;
        }
        if (!pair_state_[id]) {
          all = false;
          break;
        }
      }
      outcome[e] = all;
    }
  }

  // -1 unrevealed, 0 closed, 1 open (for the last run).
  int revealed(Index i) const {
    const std::uint32_t s = nodes_[i].state;
    if ((s >> 2) != epoch_) return -1;
    return static_cast<int>(s & kOpen);
  }

 private:
  static constexpr std::uint32_t kOpen = 1;
  static constexpr std::uint32_t kBand = 2;

  struct Node {
    std::uint32_t state = 0;  // epoch << 2 | band | open
    std::uint32_t visit = 0;
    std::uint32_t mask = 0;
    std::uint32_t adj_begin = 0;
  };

  template <class Engine>
  void thresholds() {
    if (const auto* c = std::get_if<ConstantField>(&field_)) {
      t_off_ = t_band_ = bernoulli_threshold(c->p, Engine::kBits);
    } else {
      const auto& s = std::get<StriatedField>(field_);
      t_off_ = bernoulli_threshold(s.p2, Engine::kBits);
      t_band_ = bernoulli_threshold(s.p2 * s.band_factor, Engine::kBits);
    }
  }

  void next_epoch() {
    if (++epoch_ >= (1u << 30)) {
      for (auto& n : nodes_) n.state &= kBand;
      epoch_ = 1;
    }
  }

  template <class Engine>
  bool reveal(Engine& eng, Index i) {
    std::uint32_t& s = nodes_[i].state;
    if ((s >> 2) == epoch_) return s & kOpen;
    const std::uint64_t t = (s & kBand) ? t_band_ : t_off_;
    const bool open = eng.next() < t;
    s = (epoch_ << 2) | (s & kBand) | static_cast<std::uint32_t>(open);
    return open;
  }

  // Draws every site in index order and joins each open site to its open
  // lower-index neighbours. Interval masks are accumulated at the roots.
  template <class Engine>
  void sweep(Engine& eng) {
    parent_.resize(size_);
    root_mask_.resize(size_);
    for (std::size_t i = 0; i < size_; ++i) {
      const Index si = static_cast<Index>(i);
      if (!reveal(eng, si)) {
        parent_[i] = -1;
        continue;
      }
      parent_[i] = si;
      std::uint32_t m = nodes_[i].mask;
      Index root = si;
      const std::uint32_t e = nodes_[i + 1].adj_begin;
      for (std::uint32_t k = nodes_[i].adj_begin; k < e; ++k) {
        const Index j = adj_[k];
        if (j >= si || parent_[j] < 0) continue;
        const Index rj = find(j);
        if (rj == root) continue;
        // Attach the current root under rj (older roots stay roots).
        parent_[root] = rj;
        m |= root_mask_[rj];
        root = rj;
      }
      root_mask_[root] = m;
    }
  }

  Index find(Index i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  bool swept_connected(int a, int b) {
    const std::uint32_t target = 1u << b;
    for (Index s : seeds_[a])
      if (parent_[s] >= 0 && (root_mask_[find(s)] & target)) return true;
    return false;
  }

  // Flood from the open sites of interval a until interval b is touched.
  template <class Engine>
  bool connected(Engine& eng, int a, int b) {
    if (++stamp_ == 0) {
      for (auto& n : nodes_) n.visit = 0;
      stamp_ = 1;
    }
    const std::uint32_t target = 1u << b;
    for (Index s : seeds_[a]) {
      if (nodes_[s].visit == stamp_ || !reveal(eng, s)) continue;
      if (nodes_[s].mask & target) return true;
      nodes_[s].visit = stamp_;
      stack_.clear();
      stack_.push_back(s);
      while (!stack_.empty()) {
        const Index u = stack_.back();
        stack_.pop_back();
        const std::uint32_t e = nodes_[u + 1].adj_begin;
        for (std::uint32_t k = nodes_[u].adj_begin; k < e; ++k) {
          const Index nb = adj_[k];
          Node& n = nodes_[nb];
          if (n.visit == stamp_ || !reveal(eng, nb)) continue;
          if (n.mask & target) return true;
          n.visit = stamp_;
          stack_.push_back(nb);
        }
      }
    }
    return false;
  }

  std::size_t size_;
  const ProbabilityField& field_;
  const std::vector<EventSpec>& events_;
  Sampling sampling_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::vector<std::size_t>> event_pairs_;
  std::vector<int> pair_state_;
  std::vector<Node> nodes_;
  std::vector<Index> adj_;
  std::vector<std::vector<Index>> seeds_;
  std::vector<Index> stack_;
  std::vector<Index> parent_;
  std::vector<std::uint32_t> root_mask_;
  std::uint32_t epoch_ = 0;
  std::uint32_t stamp_ = 0;
  std::uint64_t t_off_ = 0, t_band_ = 0;
};

template <class Work>
void parallel_replicas(std::uint64_t n, int workers, Work work) {
  workers = std::max(1, workers);
  if (static_cast<std::uint64_t>(workers) > n) workers = static_cast<int>(std::max<std::uint64_t>(n, 1));
  if (workers == 1) {
    work(0, 1);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr failure;
  std::mutex mu;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        work(w, workers);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

void check_run(const RunOptions& run) {
  if (run.n < 1) throw DomainError("sample count must be at least 1");
  if (run.workers < 1) throw DomainError("worker count must be at least 1");
}

}  // namespace

EventEstimates estimate_on_domain(const DiscreteDomain& dom, const ProbabilityField& field,
                                  const std::vector<EventSpec>& events, const RunOptions& run) {
  check_run(run);
  std::vector<std::vector<std::uint64_t>> tallies(std::max(1, run.workers),
                                                  std::vector<std::uint64_t>(events.size(), 0));
  parallel_replicas(run.n, run.workers, [&](int w, int stride) {
    Explorer ex(dom, field, events, run.sampling);
    std::vector<bool> outcome;
    auto& tally = tallies[w];
    for (std::uint64_t k = w; k < run.n; k += stride) {
      RandomSource src(run.rng, run.seed, k);
      src.visit([&](auto& eng) { ex.run(eng, outcome); });
      for (std::size_t e = 0; e < events.size(); ++e) tally[e] += outcome[e];
    }
  });
  EventEstimates out;
  for (std::size_t e = 0; e < events.size(); ++e) {
    std::uint64_t s = 0;
    for (const auto& t : tallies) s += t[e];
    out.push_back({events[e].name, EstimateResult::from_counts(s, run.n)});
  }
  return out;
}

std::vector<bool> replica_outcomes(const DiscreteDomain& dom, const ProbabilityField& field,
                                   const std::vector<EventSpec>& events, RngKind rng, std::uint64_t seed,
                                   std::uint64_t replica, Sampling sampling) {
  Explorer ex(dom, field, events, sampling);
  std::vector<bool> outcome;
  RandomSource src(rng, seed, replica);
  src.visit([&](auto& eng) { ex.run(eng, outcome); });
  return outcome;
}

std::vector<int> replica_revealed(const DiscreteDomain& dom, const ProbabilityField& field,
                                  const std::vector<EventSpec>& events, RngKind rng, std::uint64_t seed,
                                  std::uint64_t replica) {
  Explorer ex(dom, field, events, Sampling::Lazy);
  std::vector<bool> outcome;
  RandomSource src(rng, seed, replica);
  src.visit([&](auto& eng) { ex.run(eng, outcome); });
  std::vector<int> out(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) out[i] = ex.revealed(static_cast<Index>(i));
  return out;
}

EventEstimates estimate_events(const ExperimentSpec& spec) {
  const DiscreteDomain dom = build_domain(spec.region, spec.lattice, spec.mesh);
  const std::vector<EventSpec> events = spec.events.empty() ? battery_events() : spec.events;
  return estimate_on_domain(dom, spec.field, events, spec.run);
}

namespace {

ProbabilityField constant_or_default(double p, const DiscreteDomain& dom) {
  return ConstantField{p < 0 ? default_pc(dom.size()) : p};
}

std::vector<EventSpec> hv_triplet(const std::string& suffix, IntervalPair h, IntervalPair v) {
  return {{"h" + suffix, {h}}, {"v" + suffix, {v}}, {"hv" + suffix, {h, v}}};
}

}  // namespace

EventEstimates rectangle_experiment(double width, double height, double p, const RunOptions& run,
                                    LatticeKind lattice) {
  const DiscreteDomain dom = build_domain(RectangleRegion{width, height}, lattice);
  return estimate_on_domain(dom, constant_or_default(p, dom), battery_events(), run);
}

EventEstimates parallelogram_experiment(double alpha, double r, double area, double rotation, double p,
                                        const RunOptions& run, DiagonalDefinition def) {
  ParallelogramRegion reg;
  reg.vertices = make_parallelogram(alpha, r, area, 0.0);
  reg.rotation = rotation;
  if (def == DiagonalDefinition::Second) {
    const DiagonalSplit split = diagonal_split(alpha, solve_parallelogram(alpha, r).z, def);
    reg.left_split = split.left_fraction;
    reg.bottom_split = split.bottom_fraction;
  }
  const DiscreteDomain dom = build_domain(reg);
  return estimate_on_domain(dom, constant_or_default(p, dom), battery_events(), run);
}

EventEstimates annulus_experiment(double r1, double r2, double p, const RunOptions& run, bool inner_outer) {
  const DiscreteDomain dom = build_domain(AnnulusRegion{r1, r2, 4});
  auto events = hv_triplet("_int", {"inner_left", "inner_right"}, {"inner_top", "inner_bottom"});
  auto ext = hv_triplet("_ext", {"outer_left", "outer_right"}, {"outer_top", "outer_bottom"});
  events.insert(events.end(), ext.begin(), ext.end());
  if (inner_outer) events.push_back({"inner_outer", {{"inner", "outer"}}});
  return estimate_on_domain(dom, constant_or_default(p, dom), events, run);
}

EventEstimates cylinder_experiment(int width, int circumference, double p, const RunOptions& run) {
  const DiscreteDomain dom = build_cylinder(width, circumference);
  auto events = hv_triplet("", {"left_q0", "left_q2"}, {"left_q1", "left_q3"});
  for (auto& e : events) e.name = "l" + e.name;
  auto right = hv_triplet("", {"right_q0", "right_q2"}, {"right_q1", "right_q3"});
  for (auto& e : right) e.name = "r" + e.name;
  events.insert(events.end(), right.begin(), right.end());
  return estimate_on_domain(dom, constant_or_default(p, dom), events, run);
}

EventEstimates exterior_glued_experiment(double r1, double r2, double p, const RunOptions& run) {
  const DiscreteDomain dom = build_glued_exterior(r1, r2);
  return estimate_on_domain(dom, constant_or_default(p, dom),
                            hv_triplet("", {"inner_left", "inner_right"}, {"inner_top", "inner_bottom"}), run);
}

EventEstimates branched_experiment(double alpha, double r, double sites, double p, const RunOptions& run) {
  const DiscreteDomain dom = build_branched_double_cover({alpha, r, sites});
  return estimate_on_domain(dom, constant_or_default(p, dom), battery_events(), run);
}

std::uint64_t HomologyTally::count(const std::string& label) const {
  auto it = counts.find(label);
  return it == counts.end() ? 0 : it->second;
}

double HomologyTally::probability(const std::string& label) const {
  if (trials == 0) return 0.0;
  if (label != "0") return static_cast<double>(count(label)) / static_cast<double>(trials);
  double rest = 0.0;
  for (const auto& [k, c] : counts)
    if (k != "0") rest += static_cast<double>(c) / static_cast<double>(trials);
  return 1.0 - rest;
}

HomologyTally torus_homology_experiment(int L, double p, const RunOptions& run) {
  check_run(run);
  const DiscreteDomain dom = build_torus(L, L);
  const ProbabilityField field = constant_or_default(p, dom);
  std::vector<HomologyTally> parts(std::max(1, run.workers));
  parallel_replicas(run.n, run.workers, [&](int w, int stride) {
    HomologyTally& t = parts[w];
    for (std::uint64_t k = w; k < run.n; k += stride) {
      RandomSource src(run.rng, run.seed, k);
      const Configuration cfg = sample_configuration(dom, field, src);
      std::vector<WrapVector> all;
      for (const auto& [root, vecs] : wrapping_vectors(dom, cfg)) all.insert(all.end(), vecs.begin(), vecs.end());
      const SpanReduction span = reduce_span(all);
      if (span.index > 1) ++t.non_primitive;
      ++t.counts[image_subgroup(all).label()];
      ++t.trials;
    }
  });
  HomologyTally out;
  for (const auto& t : parts) {
    out.trials += t.trials;
    out.non_primitive += t.non_primitive;
    for (const auto& [k, c] : t.counts) out.counts[k] += c;
  }
  return out;
}

}  // namespace percolab
