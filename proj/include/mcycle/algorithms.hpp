#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "mcycle/families.hpp"
#include "mcycle/kset.hpp"
#include "mcycle/perm.hpp"

namespace mcycle {

// Black-box access: uniform random elements, uniform random points and the
// action. Elements support nothing else; points only support equality.
template <class O>
concept GroupOracle = requires(O& o, Rng& rng, const typename O::Element& h, const typename O::Point& x) {
    { o.random_element(rng) } -> std::convertible_to<typename O::Element>;
    { o.random_point(rng) } -> std::convertible_to<typename O::Point>;
    { o.act(x, h) } -> std::convertible_to<typename O::Point>;
    { x == x } -> std::convertible_to<bool>;
};

struct PointTrace {
    std::optional<std::uint64_t> length;  // nullopt: orbit longer than rm
    std::optional<std::uint64_t> r0;
};

template <class P>
struct TraceOutcome {
    bool accepted = false;
    std::vector<P> points;
    std::vector<PointTrace> per_point;
    std::uint64_t images = 0;  // act() calls
};

// Orbit length by repeated action, giving up past the cap.
struct TracedOrbit {
    template <class O>
    std::optional<std::uint64_t> operator()(O& oracle, const typename O::Point& x, const typename O::Element& h, std::uint64_t cap,
                                            std::uint64_t& images) const {
        auto y = oracle.act(x, h);
        ++images;
        for (std::uint64_t t = 1;; ++t) {
            if (y == x) return t;
            if (t == cap) return std::nullopt;
            y = oracle.act(y, h);
            ++images;
        }
    }
};

// TraceCycle: draw M points (with replacement); accept iff each orbit length
// under <h> is r0*m for some r0 | r. Stops at the first failing point.
template <GroupOracle O, class OrbitFn = TracedOrbit>
TraceOutcome<typename O::Point> trace_cycle(const typename O::Element& h, const LineParams& p, unsigned M, O& oracle, Rng& rng, OrbitFn orbit = {}) {
    if (M < 1) fail(ErrorCode::InvalidArgument, "trace_cycle: M must be at least 1");
    TraceOutcome<typename O::Point> out;
    out.points.reserve(M);
    for (unsigned i = 0; i < M; ++i) out.points.push_back(oracle.random_point(rng));
    out.accepted = true;
    for (const auto& x : out.points) {
        PointTrace pt;
        pt.length = orbit(oracle, x, h, p.rm(), out.images);
        if (pt.length) pt.r0 = matched_r0(p, *pt.length);
        out.per_point.push_back(pt);
        if (!pt.r0) {
            out.accepted = false;
            break;
        }
    }
    return out;
}

struct TrialRecord {
    std::uint64_t index = 0;  // 1-based
    bool accepted = false;
    std::vector<std::optional<std::uint64_t>> lengths;
};

template <class E>
struct FindResult {
    std::optional<E> element;
    std::uint64_t budget = 0;
    std::vector<TrialRecord> transcript;
};

struct FindOptions {
    bool natural_log = true;  // false: log base 2
    bool record = true;
};

// ceil(5 n log(2/eps)).
std::uint64_t find_trials(std::size_t n, double eps, bool natural_log = true);

// FindMCycle: up to find_trials(n, eps) random elements, returning the first one
// TraceCycle accepts.
template <GroupOracle O, class OrbitFn = TracedOrbit>
FindResult<typename O::Element> find_m_cycle(const LineParams& p, double eps, unsigned M, O& oracle, Rng& rng, FindOptions opt = {}, OrbitFn orbit = {}) {
    if (!(eps > 0 && eps < 1)) fail(ErrorCode::InvalidArgument, "find_m_cycle: eps must lie in (0,1)");
    if (M < 4) fail(ErrorCode::InvalidArgument, "find_m_cycle: M must be at least 4");
    FindResult<typename O::Element> res;
    res.budget = find_trials(p.n, eps, opt.natural_log);
    for (std::uint64_t i = 1; i <= res.budget; ++i) {
        auto h = oracle.random_element(rng);
        auto t = trace_cycle(h, p, M, oracle, rng, orbit);
        if (opt.record) {
            TrialRecord rec{i, t.accepted, {}};
            for (const auto& pp : t.per_point) rec.lengths.push_back(pp.length);
            res.transcript.push_back(std::move(rec));
        }
        if (t.accepted) {
            res.element = std::move(h);
            break;
        }
    }
    return res;
}

// Explicit k-set action of Sym(n) or Alt(n). natural() is the inspection
// backdoor for labelling experiments; the algorithms above never call it.
class KSetTestbed {
public:
    using Element = Permutation;
    using Point = KSubset;

    KSetTestbed(const LineParams& p, std::size_t k, bool trivial_group = false);

    Permutation random_element(Rng& rng) const;
    KSubset random_point(Rng& rng) const { return random_ksubset(params_.n, k_, rng); }
    KSubset act(const KSubset& x, const Permutation& h) const { return image(x, h); }

    const Permutation& natural(const Permutation& h) const { return h; }
    const LineParams& params() const { return params_; }
    std::size_t k() const { return k_; }

private:
    LineParams params_;
    std::size_t k_;
    bool trivial_;
};

KSetTestbed make_testbed_oracle(const LineParams& p, std::size_t k, bool trivial_group = false);

// Exact orbit lengths through the natural permutation; same verdicts as
// TracedOrbit with the same cap, at O(k log k) per point.
struct ExactOrbit {
    const CycleIndex* index;
    std::optional<std::uint64_t> operator()(KSetTestbed&, const KSubset& x, const Permutation&, std::uint64_t cap, std::uint64_t&) const {
        return index->orbit_length_capped(x.points(), cap);
    }
};

enum class Outcome { Good, Bad, UglyStep };
std::string to_string(Outcome o);

// One line per trial: index, outcome, orbit lengths ('>cap' when capped).
// Rejected trials are ugly-step; the accepted one is good or bad per `accepted_good`.
void write_transcript(std::ostream& os, const std::vector<TrialRecord>& transcript, bool accepted_good);

}  // namespace mcycle
