#include "blockmonte/combinatorics.hpp"

#include <algorithm>
#include <numeric>

#include "blockmonte/errors.hpp"

namespace blockmonte {

namespace {

constexpr int kMaxExact = 20;

void check_exact_range(int n, const char* what) {
  if (n < 0) throw InvalidArgument(std::string(what) + ": n must be >= 0");
  if (n > kMaxExact) throw OverflowError(std::string(what) + ": n > 20 overflows 64 bits");
}

}  // namespace

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
  std::vector<bool> seen(entries_.size() + 1, false);
  for (int v : entries_) {
    if (v < 1 || static_cast<std::size_t>(v) > entries_.size() || seen[static_cast<std::size_t>(v)]) {
      throw InvalidArgument("Permutation: entries must be exactly 1..n, each once");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::from_digits(std::string_view digits) {
  std::vector<int> entries;
  entries.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw InvalidArgument("Permutation::from_digits: expected digits only");
    entries.push_back(c - '0');
  }
  return Permutation(std::move(entries));
}

Permutation Permutation::identity(int n) {
  if (n < 0) throw InvalidArgument("Permutation::identity: n must be >= 0");
  std::vector<int> entries(static_cast<std::size_t>(n));
  std::iota(entries.begin(), entries.end(), 1);
  return Permutation(std::move(entries), Unchecked{});
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (size() > 9 && i > 0) out += ' ';
    out += std::to_string(entries_[i]);
  }
  return out;
}

bool is_derangement(std::span<const int> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] == static_cast<int>(i + 1)) return false;
  }
  return true;
}

bool is_derangement(const Permutation& p) { return is_derangement(p.entries()); }

bool is_alternating(std::span<const int> entries) {
  for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
    const bool rise = entries[i] < entries[i + 1];
    if (rise != (i % 2 == 0)) return false;
  }
  return true;
}

bool is_alternating(const Permutation& p) { return is_alternating(p.entries()); }

std::uint64_t factorial(int n) {
  check_exact_range(n, "factorial");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::uint64_t derangement_count(int n) {
  check_exact_range(n, "derangement_count");
  // n!/k! for k = n, n-1, ..., 0 builds up without ever dividing.
  __int128 sum = 0;
  std::uint64_t falling = 1;  // n!/k!
  for (int k = n; k >= 0; --k) {
    sum += (k % 2 == 0) ? static_cast<__int128>(falling) : -static_cast<__int128>(falling);
    if (k > 0) falling *= static_cast<std::uint64_t>(k);
  }
  return static_cast<std::uint64_t>(sum);
}

std::uint64_t zigzag_count(int n) {
  check_exact_range(n, "zigzag_count");
  // Row r of the boustrophedon: E(r,0) = 0 (r > 0), E(r,k) = E(r,k-1) + E(r-1,r-k).
  std::vector<std::uint64_t> row{1};
  for (int r = 1; r <= n; ++r) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(r + 1), 0);
    for (int k = 1; k <= r; ++k) {
      next[static_cast<std::size_t>(k)] =
          next[static_cast<std::size_t>(k - 1)] + row[static_cast<std::size_t>(r - k)];
    }
    row = std::move(next);
  }
  return row.back();
}

std::vector<Permutation> enumerate_permutations(int n) {
  if (n < 0) throw InvalidArgument("enumerate_permutations: n must be >= 0");
  if (n > 9) throw SizeError("enumerate_permutations: n > 9 is too large to enumerate");
  std::vector<int> current(static_cast<std::size_t>(n));
  std::iota(current.begin(), current.end(), 1);
  std::vector<Permutation> out;
  out.reserve(factorial(n));
  do {
    out.push_back(Permutation(current, Permutation::Unchecked{}));
  } while (std::next_permutation(current.begin(), current.end()));
  return out;
}

}  // namespace blockmonte
