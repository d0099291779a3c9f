#include "blockmonte/numtheory.hpp"

#include <cmath>
#include <numeric>

#include "blockmonte/errors.hpp"

namespace blockmonte {

namespace {

void check_exponent(int s, const char* what) {
  if (s < 2) throw InvalidArgument(std::string(what) + ": s must be >= 2");
}

// Adds bound^(m - depth) for each completion once the running gcd hits 1.
std::uint64_t count_coprime(int depth, int m, std::uint64_t bound, std::uint64_t running,
                            const std::vector<std::uint64_t>& powers) {
  if (depth == m) return running == 1 ? 1 : 0;
  if (running == 1) return powers[static_cast<std::size_t>(m - depth)];
  std::uint64_t total = 0;
  for (std::uint64_t v = 1; v <= bound; ++v) {
    total += count_coprime(depth + 1, m, bound, std::gcd(running, v), powers);
  }
  return total;
}

}  // namespace

std::uint64_t gcd_tuple(std::span<const std::uint64_t> values) {
  if (values.empty()) throw InvalidArgument("gcd_tuple: empty tuple");
  std::uint64_t g = 0;
  for (std::uint64_t v : values) {
    if (v == 0) throw InvalidArgument("gcd_tuple: entries must be >= 1");
    g = std::gcd(g, v);
  }
  return g;
}

double zeta_partial(int s, std::uint64_t terms) {
  check_exponent(s, "zeta_partial");
  if (terms == 0) throw InvalidArgument("zeta_partial: terms must be >= 1");
  double sum = 0.0;
  for (std::uint64_t n = terms; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  return sum;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::uint64_t q = p * p; q <= bound; q += p) composite[q] = true;
  }
  return primes;
}

double euler_product_partial(int s, std::uint64_t prime_bound) {
  check_exponent(s, "euler_product_partial");
  double product = 1.0;
  for (std::uint64_t p : primes_up_to(prime_bound)) {
    product /= -std::expm1(-s * std::log(static_cast<double>(p)));
  }
  return product;
}

Fraction coprime_probability_exact(int m, std::uint64_t bound) {
  if (m < 2) throw InvalidArgument("coprime_probability_exact: m must be >= 2");
  if (bound == 0) throw InvalidArgument("coprime_probability_exact: bound must be >= 1");
  std::vector<std::uint64_t> powers{1};
  for (int k = 1; k <= m; ++k) {
    if (powers.back() > 100'000'000 / bound) {
      throw SizeError("coprime_probability_exact: bound^m exceeds 1e8");
    }
    powers.push_back(powers.back() * bound);
  }
  const std::uint64_t coprime = count_coprime(0, m, bound, 0, powers);
  return Fraction(static_cast<std::int64_t>(coprime), static_cast<std::int64_t>(powers.back()));
}

double zeta_even_rational_factor(int m) {
  switch (m) {
    case 2: return 1.0 / 6.0;
    case 4: return 1.0 / 90.0;
    case 6: return 1.0 / 945.0;
    case 8: return 1.0 / 9450.0;
    case 10: return 1.0 / 93555.0;
    case 12: return 691.0 / 638512875.0;
    default: return 0.0;
  }
}

double zeta_value(int m) {
  check_exponent(m, "zeta_value");
  switch (m) {
    case 2: return 1.6449340668482264365;
    case 3: return 1.2020569031595942854;
    case 4: return 1.0823232337111381915;
    case 5: return 1.0369277551433699263;
    case 6: return 1.0173430619844491397;
    case 7: return 1.0083492773819228268;
    case 8: return 1.0040773561979443394;
    default:
      // Tail beyond 64 terms is below 64^(1-m)/(m-1) < 5e-16 for m >= 9.
      return zeta_partial(m, 64);
  }
}

}  // namespace blockmonte
