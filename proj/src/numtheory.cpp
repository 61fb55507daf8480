#include "mcycle/numtheory.hpp"

#include <algorithm>
#include <numeric>

#include "mcycle/numeric.hpp"

namespace mcycle {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t x) {
    if (x == 0) fail(ErrorCode::InvalidArgument, "factorize(0)");
    std::vector<std::pair<std::uint64_t, unsigned>> f;
    for (std::uint64_t p = 2; p * p <= x; p += (p == 2 ? 1 : 2)) {
        if (x % p) continue;
        unsigned e = 0;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (x > 1) f.emplace_back(x, 1);
    return f;
}

std::vector<std::uint64_t> divisors(std::uint64_t x) {
    std::vector<std::uint64_t> ds{1};
    for (auto [p, e] : factorize(x)) {
        const std::size_t base = ds.size();
        std::uint64_t pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::uint64_t d_count(std::uint64_t x) {
    std::uint64_t d = 1;
    for (auto [p, e] : factorize(x)) d *= e + 1;
    return d;
}

unsigned omega(std::uint64_t x) { return static_cast<unsigned>(factorize(x).size()); }

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<char> sieve(limit + 1, 1);
    std::vector<std::uint64_t> ps;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!sieve[i]) continue;
        ps.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) sieve[j] = 0;
    }
    return ps;
}

}  // namespace mcycle
