#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace blockmonte {

struct MasterSeed {
  std::uint64_t value = 0;

  friend bool operator==(const MasterSeed&, const MasterSeed&) = default;
};

/// Names one stream within a run: an experiment label plus a trial index.
struct StreamId {
  std::string experiment_label;
  std::uint64_t trial_index = 0;

  friend bool operator==(const StreamId&, const StreamId&) = default;
};

/// Deterministic random stream keyed by (MasterSeed, StreamId).
///
/// The key is a hash of the seed, the label and the trial index; the state is
/// a xoshiro256** generator seeded from that key with SplitMix64. Streams are
/// plain values: copy one to fork it, move it to hand it to another worker.
/// A single stream must not be shared between threads.
///
/// Satisfies UniformRandomBitGenerator so it can drive <random> distributions.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(MasterSeed seed, StreamId id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit();

  /// Uniform double in (0, 1).
  double next_open_unit();

  /// Uniform integer in [0, n). Unbiased (multiply-and-reject). Throws
  /// InvalidArgument for n == 0.
  std::uint64_t next_int_below(std::uint64_t n);

  /// Number of Bernoulli(p) trials up to and including the first success.
  /// Throws InvalidArgument unless 0 < p <= 1.
  std::uint64_t geometric_trials(double p);

  /// True with probability p; p outside [0, 1] throws InvalidArgument.
  bool bernoulli(double p);

  const MasterSeed& seed() const noexcept { return seed_; }
  const StreamId& id() const noexcept { return id_; }

 private:
  friend class StreamFamily;
  RngStream(MasterSeed seed, StreamId id, std::uint64_t key);
  void init(std::uint64_t key);

  std::array<std::uint64_t, 4> state_{};
  MasterSeed seed_;
  StreamId id_;
};

RngStream derive_stream(MasterSeed seed, StreamId id);

/// Every stream of one experiment label under one seed. Hashes the label once,
/// so deriving a per-trial stream costs a few integer mixes.
class StreamFamily {
 public:
  StreamFamily(MasterSeed seed, std::string label);

  RngStream stream(std::uint64_t trial_index) const;

  const MasterSeed& seed() const noexcept { return seed_; }
  const std::string& label() const noexcept { return label_; }

 private:
  MasterSeed seed_;
  std::string label_;
  std::uint64_t label_hash_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view text) noexcept;

}  // namespace blockmonte
