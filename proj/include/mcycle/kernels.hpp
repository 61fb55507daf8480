#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <vector>

#include <omp.h>

#include "mcycle/perm.hpp"

// Block reductions behind every exhaustive or Monte Carlo sweep. The serial
// versions are the reference; the OpenMP versions split [0, count) into blocks,
// give each block its own accumulator and fold the blocks in index order, so
// both produce identical results for any associative fold.
namespace mcycle::kernels {

enum class Execution { Serial, Parallel };

struct ParallelOptions {
    unsigned workers = 0;      // 0: OpenMP default
    std::uint64_t blocks = 0;  // 0: min(count, 256)
};

template <class Acc, class Body, class Combine>
Acc block_reduce_serial(std::uint64_t count, const Acc& identity, Body&& body, Combine&& combine) {
    Acc acc = identity;
    if (count) body(std::uint64_t{0}, count, acc);
    (void)combine;
    return acc;
}

template <class Acc, class Body, class Combine>
Acc block_reduce_parallel(std::uint64_t count, const Acc& identity, Body&& body, Combine&& combine, ParallelOptions opt = {}) {
    const std::uint64_t nblocks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(count, opt.blocks ? opt.blocks : 256));
    std::vector<Acc> parts(nblocks, identity);
    std::exception_ptr err;
    const int threads = opt.workers ? static_cast<int>(opt.workers) : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        const std::uint64_t lo = count / nblocks * ub + std::min(ub, count % nblocks);
        const std::uint64_t hi = lo + count / nblocks + (ub < count % nblocks ? 1 : 0);
        try {
            if (lo < hi) body(lo, hi, parts[ub]);
        } catch (...) {
#pragma omp critical(mcycle_kernel_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    Acc acc = identity;
    for (auto& part : parts) combine(acc, part);
    return acc;
}

template <class Acc, class Body, class Combine>
Acc block_reduce(Execution ex, std::uint64_t count, const Acc& identity, Body&& body, Combine&& combine, ParallelOptions opt = {}) {
    if (ex == Execution::Serial) return block_reduce_serial(count, identity, body, combine);
    return block_reduce_parallel(count, identity, body, combine, opt);
}

// Fold visit(acc, g) over every element of G (n <= kMaxEnumerationDegree).
template <class Acc, class Visit, class Combine>
Acc reduce_group(Execution ex, GroupKind g, std::size_t n, const Acc& identity, Visit&& visit, Combine&& combine, ParallelOptions opt = {}) {
    if (n > kMaxEnumerationDegree) fail(ErrorCode::TooLarge, "group enumeration limited to n <= " + std::to_string(kMaxEnumerationDegree));
    auto body = [&](std::uint64_t lo, std::uint64_t hi, Acc& acc) {
        GroupEnumerator e(g, n, lo, hi);
        Permutation p;
        while (e.next(p)) visit(acc, p);
    };
    return block_reduce(ex, sym_order_u64(n), identity, body, combine, opt);
}

}  // namespace mcycle::kernels
