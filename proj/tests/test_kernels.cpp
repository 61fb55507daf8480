#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "mcycle/kernels.hpp"

using namespace mcycle;
using kernels::Execution;

namespace {

// Non-commutative fold: the concatenation order exposes any block reordering.
struct Trace {
    std::vector<std::uint64_t> seen;
};

Trace trace_reduce(Execution ex, std::uint64_t count, kernels::ParallelOptions opt) {
    return kernels::block_reduce(
        ex, count, Trace{},
        [](std::uint64_t lo, std::uint64_t hi, Trace& t) {
            for (auto i = lo; i < hi; ++i) t.seen.push_back(i * i % 97);
        },
        [](Trace& a, const Trace& b) { a.seen.insert(a.seen.end(), b.seen.begin(), b.seen.end()); }, opt);
}

}  // namespace

TEST_CASE("block_reduce: serial and parallel agree for any worker and block count") {
    for (std::uint64_t count : {0ULL, 1ULL, 7ULL, 256ULL, 1000ULL, 4099ULL}) {
        const auto ref = trace_reduce(Execution::Serial, count, {});
        CHECK(ref.seen.size() == count);
        for (unsigned w : {1u, 2u, 5u, 16u})
            for (std::uint64_t b : {0ULL, 1ULL, 3ULL, 64ULL, 5000ULL}) CHECK(trace_reduce(Execution::Parallel, count, {w, b}).seen == ref.seen);
    }
}

TEST_CASE("block_reduce: exceptions propagate from workers") {
    auto body = [](std::uint64_t lo, std::uint64_t hi, std::uint64_t& acc) {
        for (auto i = lo; i < hi; ++i) {
            if (i == 777) throw std::runtime_error("boom");
            acc += i;
        }
    };
    auto add = [](std::uint64_t& a, std::uint64_t b) { a += b; };
    CHECK_THROWS_WITH(kernels::block_reduce(Execution::Parallel, 1000, std::uint64_t{0}, body, add, {4, 0}), "boom");
    CHECK_THROWS_WITH(kernels::block_reduce(Execution::Serial, 1000, std::uint64_t{0}, body, add), "boom");
    CHECK(kernels::block_reduce(Execution::Parallel, 700, std::uint64_t{0}, body, add, {4, 0}) == 699ULL * 700 / 2);
}

TEST_CASE("reduce_group visits every element once") {
    struct Acc {
        std::uint64_t count = 0, fixed = 0, even = 0;
    };
    auto visit = [](Acc& a, const Permutation& g) {
        ++a.count;
        for (Point i = 0; i < g.degree(); ++i) a.fixed += g(i) == i;
        a.even += parity(g) == Parity::Even;
    };
    auto merge = [](Acc& a, const Acc& b) {
        a.count += b.count;
        a.fixed += b.fixed;
        a.even += b.even;
    };
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto s = kernels::reduce_group(Execution::Parallel, GroupKind::Sym, n, Acc{}, visit, merge, {3, 0});
        const auto ser = kernels::reduce_group(Execution::Serial, GroupKind::Sym, n, Acc{}, visit, merge);
        CHECK(s.count == sym_order_u64(n));
        CHECK(ser.count == s.count);
        // Burnside: the mean number of fixed points is 1.
        CHECK(s.fixed == s.count);
        CHECK(s.fixed == ser.fixed);
        const auto a = kernels::reduce_group(Execution::Parallel, GroupKind::Alt, n, Acc{}, visit, merge);
        CHECK(BigInt(a.count) == group_order(GroupKind::Alt, n));
        CHECK(a.even == a.count);
        if (n >= 3) CHECK(a.fixed == a.count);
    }
    CHECK_THROWS_AS(kernels::reduce_group(Execution::Serial, GroupKind::Sym, 11, Acc{}, visit, merge), Error);
}
