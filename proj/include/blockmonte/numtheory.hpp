#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/rational.hpp>

namespace blockmonte {

using Fraction = boost::rational<std::int64_t>;

/// gcd of every entry by iterated Euclid. Throws InvalidArgument for an empty
/// tuple or a zero entry. A tuple is (setwise) coprime iff this returns 1.
std::uint64_t gcd_tuple(std::span<const std::uint64_t> values);

/// sum_{n=1}^{terms} n^-s, accumulated smallest term first.
double zeta_partial(int s, std::uint64_t terms);

/// Primes <= bound (sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// prod_{p <= prime_bound} (1 - p^-s)^-1.
double euler_product_partial(int s, std::uint64_t prime_bound);

/// Fraction of m-tuples in [1, bound]^m whose gcd is 1, by exhaustive
/// enumeration. Throws SizeError when bound^m > 1e8.
Fraction coprime_probability_exact(int m, std::uint64_t bound);

/// c with zeta(m) = c * pi^m for even m in [2, 12]; 0 for any other m.
double zeta_even_rational_factor(int m);

/// zeta(m) for integer m >= 2 to double precision.
double zeta_value(int m);

}  // namespace blockmonte
