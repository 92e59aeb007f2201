#include "percolab/rng.hpp"

#include <cmath>
#include <string>

#include "percolab/errors.hpp"

namespace percolab {

RngKind parse_rng_kind(std::string_view name) {
  if (name == "default") return RngKind::Default;
  if (name == "lcg48") return RngKind::Lcg48;
  throw DomainError("unknown generator kind '" + std::string(name) + "' (expected lcg48|default)");
}

std::string_view to_string(RngKind kind) noexcept {
  return kind == RngKind::Lcg48 ? "lcg48" : "default";
}

std::uint64_t bernoulli_threshold(double p, int bits) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("probability must lie in [0,1], got " + std::to_string(p));
  }
  // p * 2^bits is exact (scaling by a power of two).
  return static_cast<std::uint64_t>(std::ceil(std::ldexp(p, bits)));
}

namespace {

std::variant<DefaultEngine, Lcg48Engine> make_engine(RngKind kind, std::uint64_t seed) {
  if (kind == RngKind::Lcg48) return Lcg48Engine(Lcg48State{seed & kLcgMask});
  return DefaultEngine(seed);
}

}  // namespace

RandomSource::RandomSource(RngKind kind, std::uint64_t seed, std::uint64_t stream_id)
    : kind_(kind), stream_id_(stream_id), engine_(make_engine(kind, stream_seed(seed, stream_id))) {}

RandomSource::RandomSource(Lcg48State state)
    : kind_(RngKind::Lcg48), engine_(Lcg48Engine(Lcg48State{state.x & kLcgMask})) {}

RandomSource RandomSource::from_lcg_state(Lcg48State state) { return RandomSource(state); }

double RandomSource::uniform01() noexcept {
  return std::ldexp(static_cast<double>(next_bits()), -bits());
}

bool RandomSource::bernoulli(double p) {
  const std::uint64_t threshold = bernoulli_threshold(p, bits());
  return next_bits() < threshold;
}

}  // namespace percolab
