#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blockmonte {

/// One-line arrangement of [n] = {1, ..., n}.
class Permutation {
 public:
  Permutation() = default;

  /// Throws InvalidArgument unless `entries` holds each of 1..n exactly once.
  explicit Permutation(std::vector<int> entries);

  /// Parses single-digit one-line notation such as "431562".
  static Permutation from_digits(std::string_view digits);

  static Permutation identity(int n);

  std::span<const int> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> entries, Unchecked) : entries_(std::move(entries)) {}
  friend std::vector<Permutation> enumerate_permutations(int n);

  std::vector<int> entries_;
};

/// No fixed points: p_i != i for every position i (1-based).
bool is_derangement(const Permutation& p);
bool is_derangement(std::span<const int> entries);

/// p1 < p2 > p3 < p4 ... over the whole length. Lengths 0 and 1 qualify.
bool is_alternating(const Permutation& p);
bool is_alternating(std::span<const int> entries);

/// D(n) = sum_k (-1)^k n!/k!, exact. Throws OverflowError for n > 20.
std::uint64_t derangement_count(int n);

/// A_n, the number of alternating permutations of [n], from the
/// boustrophedon (Entringer) triangle. A_0 = A_1 = 1. Throws OverflowError
/// for n > 20.
std::uint64_t zigzag_count(int n);

/// n! for n <= 20.
std::uint64_t factorial(int n);

/// All n! permutations of [n] in lexicographic order. Throws SizeError for
/// n > 9.
std::vector<Permutation> enumerate_permutations(int n);

}  // namespace blockmonte
