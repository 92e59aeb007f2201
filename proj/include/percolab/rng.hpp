#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <variant>

namespace percolab {

// 48-bit linear congruential generator x' = (a x + c) mod 2^48.
inline constexpr std::uint64_t kLcgMultiplier = 142412240584757ULL;
inline constexpr std::uint64_t kLcgIncrement = 11ULL;
inline constexpr std::uint64_t kLcgMask = (std::uint64_t{1} << 48) - 1;

struct Lcg48State {
  std::uint64_t x = 0;  // always < 2^48
  friend constexpr bool operator==(Lcg48State, Lcg48State) = default;
};

// The product a*x is formed modulo 2^64; since 2^48 divides 2^64 the
// masked result is exactly (a*x + c) mod 2^48.
constexpr Lcg48State lcg_step(Lcg48State s) noexcept {
  return {(kLcgMultiplier * s.x + kLcgIncrement) & kLcgMask};
}

// Stream derivation shared by every generator kind:
//
//   mix64(z)  = splitmix64 finaliser
//               z ^= z >> 30; z *= 0xbf58476d1ce4e5b9;
//               z ^= z >> 27; z *= 0x94d049bb133111eb;
//               z ^= z >> 31;
//   stream_seed(seed, id) = mix64(seed + 0x9e3779b97f4a7c15 * (id + 1))
//
// All arithmetic is modulo 2^64. The Lcg48 kind keeps the low 48 bits.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream_id) noexcept {
  return mix64(seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1));
}

enum class RngKind { Default, Lcg48 };

RngKind parse_rng_kind(std::string_view name);  // "default" | "lcg48"
std::string_view to_string(RngKind kind) noexcept;

// Engines expose integer draws of a fixed bit width; a draw d maps to the
// real d / 2^kBits in [0,1).
class Lcg48Engine {
 public:
  static constexpr int kBits = 48;

  explicit Lcg48Engine(Lcg48State s) noexcept : state_(s) {}

  std::uint64_t next() noexcept {
    state_ = lcg_step(state_);
    return state_.x;
  }
  Lcg48State state() const noexcept { return state_; }

 private:
  Lcg48State state_;
};

class DefaultEngine {
 public:
  static constexpr int kBits = 53;

  explicit DefaultEngine(std::uint64_t seed) : mt_(seed) {}

  std::uint64_t next() noexcept { return mt_() >> 11; }

 private:
  std::mt19937_64 mt_;
};

// Draw d is a success of Bernoulli(p) iff d / 2^bits < p, i.e. iff
// d < ceil(p * 2^bits). Throws DomainError unless 0 <= p <= 1.
std::uint64_t bernoulli_threshold(double p, int bits);

template <class Engine>
std::uint64_t bernoulli_threshold(double p) {
  return bernoulli_threshold(p, Engine::kBits);
}

// Single-owner random stream identified by (kind, seed, stream_id).
class RandomSource {
 public:
  RandomSource(RngKind kind, std::uint64_t seed, std::uint64_t stream_id = 0);

  // Lcg48 source starting from an explicit state (no seed mixing).
  static RandomSource from_lcg_state(Lcg48State state);

  RngKind kind() const noexcept { return kind_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_bits() noexcept {
    return std::visit([](auto& e) { return e.next(); }, engine_);
  }
  int bits() const noexcept { return kind_ == RngKind::Lcg48 ? Lcg48Engine::kBits : DefaultEngine::kBits; }

  double uniform01() noexcept;
  bool bernoulli(double p);

  // Hot loops dispatch once on the engine type.
  template <class F>
  decltype(auto) visit(F&& f) {
    return std::visit(std::forward<F>(f), engine_);
  }

 private:
  RandomSource(Lcg48State state);

  RngKind kind_;
  std::uint64_t stream_id_ = 0;
  std::variant<DefaultEngine, Lcg48Engine> engine_;
};

}  // namespace percolab
