#include "blockmonte/rng.hpp"

#include <bit>
#include <cmath>
#include <utility>

#include "blockmonte/errors.hpp"

namespace blockmonte {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t stream_key(MasterSeed seed, std::uint64_t label_hash, std::uint64_t index) {
  std::uint64_t h = mix64(seed.value + kGolden);
  h = mix64(h ^ label_hash);
  h = mix64(h ^ (index + kGolden));
  return h;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RngStream::RngStream(MasterSeed seed, StreamId id)
    : seed_(seed), id_(std::move(id)) {
  init(stream_key(seed_, fnv1a64(id_.experiment_label), id_.trial_index));
}

RngStream::RngStream(MasterSeed seed, StreamId id, std::uint64_t key)
    : seed_(seed), id_(std::move(id)) {
  init(key);
}

void RngStream::init(std::uint64_t key) {
  // SplitMix64 expansion of the key; never yields the all-zero state.
  std::uint64_t sm = key;
  for (auto& word : state_) {
    sm += kGolden;
    word = mix64(sm);
  }
}

std::uint64_t RngStream::next_u64() {
  // xoshiro256**
  const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_open_unit() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RngStream::next_int_below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("next_int_below: n must be >= 1");
  // Lemire: the low word of x*n is biased only when below 2^64 mod n.
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t RngStream::geometric_trials(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidArgument("geometric_trials: p must lie in (0, 1]");
  }
  if (p == 1.0) return 1;
  // Inversion: P(K > k) = P(U < (1-p)^k) = (1-p)^k.
  const double k = std::ceil(std::log(next_open_unit()) / std::log1p(-p));
  constexpr double kCap = 0x1.0p63;
  if (!(k < kCap)) return static_cast<std::uint64_t>(kCap);
  return k < 1.0 ? 1 : static_cast<std::uint64_t>(k);
}

bool RngStream::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("bernoulli: p must lie in [0, 1]");
  if (p == 1.0) return true;
  return next_unit() < p;
}

RngStream derive_stream(MasterSeed seed, StreamId id) {
  return RngStream(seed, std::move(id));
}

StreamFamily::StreamFamily(MasterSeed seed, std::string label)
    : seed_(seed), label_(std::move(label)), label_hash_(fnv1a64(label_)) {}

RngStream StreamFamily::stream(std::uint64_t trial_index) const {
  return RngStream(seed_, StreamId{label_, trial_index},
                   stream_key(seed_, label_hash_, trial_index));
}

}  // namespace blockmonte
