#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcycle/numeric.hpp"

namespace mcycle {

struct Verdict {
    std::string lemma_id;
    std::vector<std::pair<std::string, std::string>> args;
    std::string lhs, rhs;
    std::string relation;  // "<=", "<", "=="
    bool holds = false;

    std::string args_string() const;  // "a=2 c=3 l=1"
};

// binom(ca-1, a-1) * binom(c, l) <= binom(ca, la) for a > 1, 1 <= l < c.
Verdict check_binom_lemma(std::uint64_t a, std::uint64_t c, std::uint64_t l);

// Number of k0-subsets of the ground set that are unions of parts (parts distinguishable).
BigInt npk_count(std::span<const std::uint64_t> part_sizes, std::uint64_t k0);

struct NpkBounds {
    BigInt b1;
    std::optional<BigInt> b2;  // k0 odd and u even
    Rational b3;
};

NpkBounds npk_bounds(std::uint64_t u, std::uint64_t k0);

// k0-subsets of a t-cycle invariant under the shift by t/p.
BigInt sigma_cycle(std::uint64_t t, std::uint64_t k0, std::uint64_t p);
std::uint64_t sigma_cycle_enumerated(std::uint64_t t, std::uint64_t k0, std::uint64_t p);

// k0-subsets of the union of cycles with the given lengths whose orbit length
// divides rm. No length may divide rm.
std::uint64_t sigma_Sigma(std::span<const std::uint64_t> lengths, std::uint64_t rm, std::uint64_t k0, std::uint64_t budget = 10'000'000);

// lemma ids and argument order:
//   lem:Z-a        d n k
//   lem:Z-a-alpha  d n k alpha
//   lem:Z-b        n k
//   lem:ZZ         d k t a
//   lem:simple     s n r t
//   lem:ns-a       x
//   lem:ns-b       x
//   lem:eps        eps p
// Arguments outside a lemma's hypotheses raise ErrorCode::InvalidArgument.
Verdict check_inequality(std::string_view lemma_id, const std::vector<Rational>& args);

// Non-increasing partitions of u into parts >= min_part.
template <class F>
void for_each_partition(std::uint64_t u, std::uint64_t min_part, F&& visit) {
    std::vector<std::uint64_t> parts;
    auto rec = [&](auto&& self, std::uint64_t rest, std::uint64_t max_part) -> void {
        if (rest == 0) {
            visit(static_cast<const std::vector<std::uint64_t>&>(parts));
            return;
        }
        for (std::uint64_t p = std::min(rest, max_part); p >= min_part && p >= 1; --p) {
            parts.push_back(p);
            self(self, rest - p, p);
            parts.pop_back();
        }
    };
    if (u == 0) {
        visit(static_cast<const std::vector<std::uint64_t>&>(parts));
        return;
    }
    rec(rec, u, u);
}

// Sweeps behind `verify` and the acceptance suite.
std::vector<Verdict> suite_binom(std::uint64_t a_max = 6, std::uint64_t c_max = 8);
std::vector<Verdict> suite_npk(std::uint64_t u_max = 12);
std::vector<Verdict> suite_pc1(std::uint64_t t_max = 20);
std::vector<Verdict> suite_corpc(std::uint64_t structures = 1000, std::uint64_t u_max = 14, std::uint64_t seed = 1);
std::vector<Verdict> suite_divisor(std::uint64_t m_max = 10'000);
std::vector<Verdict> suite_inequalities();

}  // namespace mcycle
