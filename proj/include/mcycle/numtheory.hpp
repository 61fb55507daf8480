#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mcycle {

// Trial-division helpers, intended for x up to about 1e12.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t x);
std::vector<std::uint64_t> divisors(std::uint64_t x);  // ascending
std::uint64_t d_count(std::uint64_t x);
unsigned omega(std::uint64_t x);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

}  // namespace mcycle
