#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcycle/families.hpp"
#include "mcycle/kernels.hpp"
#include "mcycle/perm.hpp"

namespace mcycle {

// Strictly increasing k-subset of {0..n-1}.
class KSubset {
public:
    KSubset() = default;
    // Sorts; rejects duplicates and out-of-range points.
    KSubset(std::size_t n, std::vector<Point> points);

    std::size_t degree() const { return n_; }
    std::size_t size() const { return points_.size(); }
    std::span<const Point> points() const { return points_; }

    friend bool operator==(const KSubset&, const KSubset&) = default;

    static KSubset from_sorted_unchecked(std::size_t n, std::vector<Point> points);

private:
    std::size_t n_ = 0;
    std::vector<Point> points_;
};

KSubset image(const KSubset& gamma, const Permutation& g);

// Smallest t >= 1 with gamma^(g^t) = gamma, or nullopt when t > cap.
std::optional<std::uint64_t> cycle_length_trace(const KSubset& gamma, const Permutation& g, std::uint64_t cap);

// Smallest divisor d of t with positions + d = positions (mod t).
std::uint64_t rotation_period(std::uint64_t t, std::span<const std::uint64_t> positions);

// Per-cycle bookkeeping for the exact orbit-length engine.
class CycleIndex {
public:
    explicit CycleIndex(const Permutation& g);

    std::size_t degree() const { return cycle_of_.size(); }
    const std::vector<Cycle>& cycles() const { return cycles_; }

    // lcm over cycles C of the rotation period of the set restricted to C.
    BigInt orbit_length(std::span<const Point> points) const;
    // The orbit length when every per-cycle period divides t; nullopt otherwise.
    std::optional<std::uint64_t> orbit_length_dividing(std::span<const Point> points, std::uint64_t t) const;
    // The orbit length when it is at most cap; nullopt otherwise.
    std::optional<std::uint64_t> orbit_length_capped(std::span<const Point> points, std::uint64_t cap) const;

private:
    template <class F>
    bool for_each_period(std::span<const Point> points, F&& f) const;

    std::vector<std::uint32_t> cycle_of_, pos_;
    std::vector<Cycle> cycles_;
    std::vector<std::vector<std::uint64_t>> divisors_;  // per cycle
};

BigInt cycle_length_exact(const KSubset& gamma, const Permutation& g);

KSubset random_ksubset(std::size_t n, std::size_t k, Rng& rng);
KSubset parse_ksubset(std::string_view text, std::size_t n);
std::string to_string(const KSubset& gamma);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

struct BadCount {
    std::uint64_t bad = 0, total = 0;
    std::uint64_t good() const { return total - bad; }
};

// k-subsets whose orbit length under g is not r0*m for any r0 | r.
BadCount count_bad_ksubsets(const Permutation& g, const LineParams& p, std::size_t k, std::uint64_t budget = kDefaultEnumerationBudget,
                            kernels::Execution ex = kernels::Execution::Parallel);
BadCount count_bad_ksubsets(const CycleIndex& index, const LineParams& p, std::size_t k, std::uint64_t budget = kDefaultEnumerationBudget,
                            kernels::Execution ex = kernels::Execution::Parallel);

// Visits every k-subset of {0..n-1} whose smallest point lies in [first_lo, first_hi),
// in lexicographic order, as a span of sorted points.
template <class F>
void for_each_ksubset(std::size_t n, std::size_t k, std::size_t first_lo, std::size_t first_hi, F&& visit) {
    if (k == 0 || k > n) return;
    std::vector<Point> c(k);
    for (std::size_t f = first_lo; f < first_hi && f + k <= n; ++f) {
        c[0] = static_cast<Point>(f);
        for (std::size_t i = 1; i < k; ++i) c[i] = static_cast<Point>(f + i);
        while (true) {
            visit(std::span<const Point>(c));
            std::size_t i = k;
            while (i > 1 && c[i - 1] == n - k + i - 1) --i;
            if (i == 1) break;
            ++c[i - 1];
            for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
        }
    }
}

}  // namespace mcycle
