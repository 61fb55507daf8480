#include "mcycle/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mcycle/algorithms.hpp"
#include "mcycle/combinatorics.hpp"
#include "mcycle/kset.hpp"

namespace mcycle {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::Conditional: return "conditional";
        case Mode::FindMCycle: return "findmcycle";
        case Mode::FamilyCensus: return "family-census";
        case Mode::ExactOracle: return "exact-oracle";
    }
    return "?";
}

std::string to_string(StreamKind s) { return s == StreamKind::Uniform ? "uniform" : "ngood"; }
std::string to_string(Engine e) { return e == Engine::Exact ? "exact" : "trace"; }

Mode parse_mode(std::string_view t) {
    if (t == "conditional") return Mode::Conditional;
    if (t == "findmcycle" || t == "find-mcycle") return Mode::FindMCycle;
    if (t == "family-census" || t == "census") return Mode::FamilyCensus;
    if (t == "exact-oracle" || t == "oracle") return Mode::ExactOracle;
    fail(ErrorCode::Parse, "unknown mode '" + std::string(t) + "' (conditional, findmcycle, family-census, exact-oracle)");
}

StreamKind parse_stream(std::string_view t) {
    if (t == "uniform") return StreamKind::Uniform;
    if (t == "ngood") return StreamKind::NGood;
    fail(ErrorCode::Parse, "unknown stream '" + std::string(t) + "' (uniform, ngood)");
}

Engine parse_engine(std::string_view t) {
    if (t == "exact") return Engine::Exact;
    if (t == "trace") return Engine::Trace;
    fail(ErrorCode::Parse, "unknown engine '" + std::string(t) + "' (exact, trace)");
}

void validate(const ExperimentConfig& c) {
    const std::size_t n = c.line.n;
    if (c.k < 2 || 2 * c.k > n) fail(ErrorCode::InvalidArgument, "k = " + std::to_string(c.k) + " outside 2 <= k <= n/2");
    if (c.trials < 1) fail(ErrorCode::InvalidArgument, "trials must be at least 1");
    if (c.M < 1) fail(ErrorCode::InvalidArgument, "M must be at least 1");
    if (c.mode == Mode::FindMCycle && c.M < 4) fail(ErrorCode::InvalidArgument, "find-mcycle needs M >= 4");
    if (!(c.s > Rational(1, 2) && c.s < 1)) fail(ErrorCode::InvalidArgument, "s must lie in (1/2, 1)");
    if (!(c.eps > 0 && c.eps < 1) && c.mode == Mode::FindMCycle) fail(ErrorCode::InvalidArgument, "eps must lie in (0, 1)");
}

Proportion wilson(std::uint64_t x, std::uint64_t n, double z) {
    Proportion p;
    p.successes = x;
    p.trials = n;
    if (n == 0) return p;
    const double nn = static_cast<double>(n);
    const double ph = static_cast<double>(x) / nn;
    const double z2 = z * z;
    const double centre = (ph + z2 / (2 * nn)) / (1 + z2 / nn);
    const double half = z / (1 + z2 / nn) * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn));
    p.estimate = ph;
    // The interval touches 0 or 1 exactly at the extremes.
    p.lo = x == 0 ? 0.0 : std::max(0.0, centre - half);
    p.hi = x == n ? 1.0 : std::min(1.0, centre + half);
    return p;
}

void ContingencyCounts::merge(const ContingencyCounts& o) {
    trials += o.trials;
    for (std::size_t i = 0; i < by_label.size(); ++i)
        for (int a = 0; a < 2; ++a) by_label[i][a] += o.by_label[i][a];
    ngood += o.ngood;
    ngood_accepted += o.ngood_accepted;
    images += o.images;
}

std::uint64_t ContingencyCounts::label_total(FamilyLabel f) const {
    const auto& row = by_label[static_cast<int>(f)];
    return row[0] + row[1];
}

std::uint64_t ContingencyCounts::accepted() const {
    std::uint64_t a = 0;
    for (const auto& row : by_label) a += row[1];
    return a;
}

void FindCounts::merge(const FindCounts& o) {
    runs += o.runs;
    good += o.good;
    bad += o.bad;
    ugly += o.ugly;
    elements += o.elements;
}

const Estimate& SummaryStats::estimate(std::string_view name) const {
    for (const auto& e : estimates)
        if (e.name == name) return e;
    fail(ErrorCode::InvalidArgument, "no estimate named '" + std::string(name) + "'");
}

namespace {

bool divides_all(const std::vector<std::size_t>& type, std::uint64_t rm) {
    return std::all_of(type.begin(), type.end(), [&](std::size_t len) { return rm % len == 0; });
}

bool ngood_type(const std::vector<std::size_t>& type, const LineParams& p) {
    return std::find(type.begin(), type.end(), p.m) != type.end() && divides_all(type, p.rm());
}

// Orbit lengths through a CycleIndex rebuilt for each element.
struct FreshIndexOrbit {
    std::optional<std::uint64_t> operator()(KSetTestbed&, const KSubset& x, const Permutation& h, std::uint64_t cap, std::uint64_t&) const {
        return CycleIndex(h).orbit_length_capped(x.points(), cap);
    }
};

std::optional<FamilyBoundReport> bound_report(const ExperimentConfig& c) {
    if (!validate_params(c.M, c.s, c.delta).ok) return std::nullopt;
    const auto bp = make_bound_params(c.M, c.s, c.delta, c.line.r, c.c_delta, c.a_delta, to_real(c.eps > 0 && c.eps <= 1 ? c.eps : Rational(1)));
    return family_bounds(c.line.n, c.k, bp, c.line);
}

Estimate make_estimate(std::string name, std::uint64_t x, std::uint64_t n) { return Estimate{std::move(name), wilson(x, n), std::nullopt, false, false}; }

Estimate with_bound(Estimate e, const Real& bound, bool asserted, bool floor = false) {
    e.bound = static_cast<double>(bound);
    e.bound_asserted = asserted;
    e.bound_is_floor = floor;
    return e;
}

void conditional_estimates(SummaryStats& st) {
    const auto& c = st.counts;
    const auto lab = [&](FamilyLabel f, int a) { return c.by_label[static_cast<int>(f)][a]; };
    const std::uint64_t acc = c.accepted();
    const std::uint64_t rej = c.trials - acc;
    const std::uint64_t not_good = c.trials - c.ngood;
    const std::uint64_t not_good_rej = rej - (c.ngood - c.ngood_accepted);
    std::uint64_t q = 0;
    for (auto f : kAllLabels)
        if (f != FamilyLabel::N) q += lab(f, 1);
    const auto rep = bound_report(st.config);

    auto& out = st.estimates;
    out.push_back(make_estimate("accept", acc, c.trials));
    out.push_back(make_estimate("p", rej, c.trials));
    out.push_back(make_estimate("p1", c.ngood - c.ngood_accepted, c.ngood));
    out.push_back(make_estimate("p2", not_good_rej, not_good));
    auto floor = make_estimate("accept|Ngood", c.ngood_accepted, c.ngood);
    out.push_back(rep ? with_bound(floor, rep->success_floor, rep->asserted_mcyc(), true) : floor);
    out.push_back(make_estimate("q", q, c.trials));
    for (auto f : kAllLabels) {
        if (f == FamilyLabel::N) continue;
        auto e = make_estimate("q(" + to_string(f) + ")", lab(f, 1), c.trials);
        if (rep) {
            if (f == FamilyLabel::S0) e = with_bound(e, rep->S0, rep->asserted_S0());
            if (f == FamilyLabel::S1Plus) e = with_bound(e, rep->S1plus, rep->asserted_S1plus());
            if (f == FamilyLabel::Sge2) e = with_bound(e, rep->Sge2, rep->asserted_Sge2());
        }
        out.push_back(e);
    }
    for (auto f : kAllLabels) {
        auto e = make_estimate("accept|" + to_string(f), lab(f, 1), lab(f, 0) + lab(f, 1));
        if (rep) {
            if (f == FamilyLabel::R) e = with_bound(e, rep->R, rep->asserted_R());
            if (f == FamilyLabel::S1Minus) e = with_bound(e, rep->S1minus, rep->asserted_S1minus());
        }
        out.push_back(e);
    }
    out.push_back(make_estimate("N|accept", lab(FamilyLabel::N, 1), acc));
}

}  // namespace

Permutation random_ngood(const LineParams& p, Rng& rng) {
    const std::size_t n = p.n;
    std::vector<Point> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<Point>(i);
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<Point> im(n);
    for (std::size_t i = 0; i < p.m; ++i) im[pts[i]] = pts[(i + 1) % p.m];
    const std::size_t rest = n - p.m;
    const bool m_odd_perm = (p.m - 1) % 2 == 1;
    std::vector<Point> sub(rest);
    while (true) {
        for (std::size_t i = 0; i < rest; ++i) sub[i] = static_cast<Point>(i);
        std::shuffle(sub.begin(), sub.end(), rng);
        const auto r = Permutation::from_images_unchecked(rest ? sub : std::vector<Point>{0});
        if (rest == 0) {
            if (p.group == GroupKind::Alt && m_odd_perm) fail(ErrorCode::InvalidArgument, "N_good is empty for this line");
            break;
        }
        if (!divides_all(cycle_type(r), p.rm())) continue;
        if (p.group == GroupKind::Alt && ((parity(r) == Parity::Odd) != m_odd_perm)) continue;
        for (std::size_t i = 0; i < rest; ++i) im[pts[p.m + i]] = pts[p.m + sub[i]];
        break;
    }
    return Permutation::from_images_unchecked(std::move(im));
}

SummaryStats run_conditional(const ExperimentConfig& c, kernels::Execution ex) {
    validate(c);
    const Classifier cls(c.line, c.s);
    auto body = [&](std::uint64_t lo, std::uint64_t hi, ContingencyCounts& acc) {
        KSetTestbed tb(c.line, c.k, c.trivial_group);
        for (std::uint64_t i = lo; i < hi; ++i) {
            Rng rng = stream(c.seed, i);
            const Permutation g = c.stream == StreamKind::NGood ? random_ngood(c.line, rng) : tb.random_element(rng);
            const auto type = cycle_type(tb.natural(g));
            const bool has_m = std::find(type.begin(), type.end(), c.line.m) != type.end();
            const FamilyLabel label = cls(type, has_m);
            const bool good = has_m && divides_all(type, c.line.rm());
            bool accepted;
            if (c.engine == Engine::Exact) {
                const CycleIndex index(g);
                auto t = trace_cycle(g, c.line, c.M, tb, rng, ExactOrbit{&index});
                accepted = t.accepted;
            } else {
                auto t = trace_cycle(g, c.line, c.M, tb, rng);
                accepted = t.accepted;
                acc.images += t.images;
            }
            ++acc.trials;
            ++acc.by_label[static_cast<int>(label)][accepted ? 1 : 0];
            if (good) {
                ++acc.ngood;
                if (accepted) ++acc.ngood_accepted;
            }
        }
    };
    SummaryStats st;
    st.config = c;
    st.counts = kernels::block_reduce(ex, c.trials, ContingencyCounts{}, body, [](ContingencyCounts& a, const ContingencyCounts& b) { a.merge(b); },
                                      {c.workers, 0});
    conditional_estimates(st);
    return st;
}

SummaryStats run_findmcycle(const ExperimentConfig& c, kernels::Execution ex) {
    validate(c);
    const double eps = to_double(c.eps);
    auto body = [&](std::uint64_t lo, std::uint64_t hi, FindCounts& acc) {
        KSetTestbed tb(c.line, c.k, c.trivial_group);
        for (std::uint64_t i = lo; i < hi; ++i) {
            Rng rng = stream(c.seed, i);
            FindOptions opt;
            opt.record = false;
            FindResult<Permutation> res = c.engine == Engine::Exact ? find_m_cycle(c.line, eps, c.M, tb, rng, opt, FreshIndexOrbit{})
                                                                    : find_m_cycle(c.line, eps, c.M, tb, rng, opt);
            ++acc.runs;
            if (!res.element) {
                ++acc.ugly;
                acc.elements += res.budget;
            } else {
                if (in_N(tb.natural(*res.element), c.line)) ++acc.good;
                else ++acc.bad;
            }
        }
    };
    SummaryStats st;
    st.config = c;
    st.find = kernels::block_reduce(ex, c.trials, FindCounts{}, body, [](FindCounts& a, const FindCounts& b) { a.merge(b); }, {c.workers, 0});
    const Real half_eps = to_real(c.eps) / 2;
    // The Fail bound needs (n/(n-2))^M <= 5 rho, checked exactly with the tabulated rho.
    const std::uint64_t n = c.line.n;
    const bool ugly_ok = n > 2 && ipow(Rational(n, n - 2), c.M) <= 5 * c.line.rho;
    const auto rep = bound_report(c);
    const bool all3 = rep && rep->flags.all();
    st.estimates.push_back(with_bound(make_estimate("good", st.find.good, st.find.runs), 1 - to_real(c.eps), all3, true));
    st.estimates.push_back(with_bound(make_estimate("bad", st.find.bad, st.find.runs), half_eps, all3));
    st.estimates.push_back(with_bound(make_estimate("ugly", st.find.ugly, st.find.runs), half_eps, ugly_ok));
    return st;
}

SummaryStats run_census(const ExperimentConfig& c, kernels::Execution ex) {
    validate(c);
    const Classifier cls(c.line, c.s);
    auto body = [&](std::uint64_t lo, std::uint64_t hi, ContingencyCounts& acc) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            Rng rng = stream(c.seed, i);
            const Permutation g = c.stream == StreamKind::NGood ? random_ngood(c.line, rng) : random_element(c.line.group, c.line.n, rng);
            const auto type = cycle_type(g);
            const bool has_m = std::find(type.begin(), type.end(), c.line.m) != type.end();
            ++acc.trials;
            ++acc.by_label[static_cast<int>(cls(type, has_m))][0];
            if (has_m && divides_all(type, c.line.rm())) ++acc.ngood;
        }
    };
    SummaryStats st;
    st.config = c;
    st.counts = kernels::block_reduce(ex, c.trials, ContingencyCounts{}, body, [](ContingencyCounts& a, const ContingencyCounts& b) { a.merge(b); },
                                      {c.workers, 0});
    const auto rep = bound_report(c);
    for (auto f : kAllLabels) {
        auto e = make_estimate(to_string(f), st.counts.label_total(f), st.counts.trials);
        if (rep && f == FamilyLabel::Sge2) e = with_bound(e, rep->Sge2, rep->asserted_Sge2());
        st.estimates.push_back(e);
    }
    st.estimates.push_back(make_estimate("Ngood", st.counts.ngood, st.counts.trials));
    return st;
}

SummaryStats run_experiment(const ExperimentConfig& c, kernels::Execution ex) {
    switch (c.mode) {
        case Mode::Conditional: return run_conditional(c, ex);
        case Mode::FindMCycle: return run_findmcycle(c, ex);
        case Mode::FamilyCensus: return run_census(c, ex);
        case Mode::ExactOracle: break;
    }
    fail(ErrorCode::InvalidArgument, "exact-oracle is not a sampling mode; use exact_conditional");
}

namespace {

// Sums over G of good^M (per label, and on N_good), before dividing by |G| total^M.
struct OracleAcc {
    std::array<BigInt, 7> accept_num{};
    std::array<BigInt, 7> count{};
    BigInt ngood_accept_num = 0, ngood = 0;

    void add(FamilyLabel f, bool good, const BigInt& weight, const BigInt& acc_num) {
        const int i = static_cast<int>(f);
        accept_num[i] += weight * acc_num;
        count[i] += weight;
        if (good) {
            ngood_accept_num += weight * acc_num;
            ngood += weight;
        }
    }
    void merge(const OracleAcc& o) {
        for (int i = 0; i < 7; ++i) {
            accept_num[i] += o.accept_num[i];
            count[i] += o.count[i];
        }
        ngood_accept_num += o.ngood_accept_num;
        ngood += o.ngood;
    }
};

BigInt class_size(std::uint64_t n, const std::vector<std::uint64_t>& type) {
    BigInt denom = 1;
    std::map<std::uint64_t, std::uint64_t> mult;
    for (auto len : type) ++mult[len];
    for (auto [len, a] : mult) denom *= ipow(BigInt(len), a) * factorial(a);
    return factorial(n) / denom;
}

Permutation from_type(std::size_t n, const std::vector<std::uint64_t>& type) {
    std::vector<Cycle> cycles;
    Point next = 0;
    for (auto len : type) {
        Cycle c;
        for (std::uint64_t i = 0; i < len; ++i) c.push_back(next++);
        cycles.push_back(std::move(c));
    }
    return Permutation::from_cycles(n, cycles);
}

}  // namespace

ExactConditional exact_conditional(const LineParams& p, std::size_t k, unsigned M, const Rational& s, OracleRoute route, std::uint64_t budget,
                                   kernels::Execution ex) {
    if (k < 2 || 2 * k > p.n) fail(ErrorCode::InvalidArgument, "exact_conditional: need 2 <= k <= n/2");
    if (M < 1) fail(ErrorCode::InvalidArgument, "exact_conditional: M must be at least 1");
    const Classifier cls(p, s);
    const BigInt subsets = binomial(p.n, k);
    OracleAcc acc;
    if (route == OracleRoute::Elements) {
        if (p.n > kMaxEnumerationDegree) fail(ErrorCode::TooLarge, "element route limited to n <= " + std::to_string(kMaxEnumerationDegree));
        if (subsets * group_order(p.group, p.n) > budget) fail(ErrorCode::BudgetExceeded, "exact_conditional: |G| binom(n,k) exceeds the budget");
        acc = kernels::reduce_group(
            ex, p.group, p.n, OracleAcc{},
            [&](OracleAcc& a, const Permutation& g) {
                const auto type = cycle_type(g);
                const bool has_m = std::find(type.begin(), type.end(), p.m) != type.end();
                const auto bc = count_bad_ksubsets(CycleIndex(g), p, k, budget, kernels::Execution::Serial);
                a.add(cls(type, has_m), ngood_type(type, p), 1, ipow(BigInt(bc.good()), M));
            },
            [](OracleAcc& a, const OracleAcc& b) { a.merge(b); });
    } else {
        std::vector<std::vector<std::uint64_t>> types;
        for_each_partition(p.n, 1, [&](const std::vector<std::uint64_t>& t) {
            std::uint64_t cycles = t.size();
            if (p.group == GroupKind::Alt && (p.n - cycles) % 2) return;
            types.push_back(t);
        });
        if (subsets * types.size() > budget) fail(ErrorCode::BudgetExceeded, "exact_conditional: classes x binom(n,k) exceeds the budget");
        acc = kernels::block_reduce(
            ex, types.size(), OracleAcc{},
            [&](std::uint64_t lo, std::uint64_t hi, OracleAcc& a) {
                for (std::uint64_t i = lo; i < hi; ++i) {
                    const auto& t = types[i];
                    const std::vector<std::size_t> type(t.begin(), t.end());
                    const bool has_m = std::find(type.begin(), type.end(), p.m) != type.end();
                    const auto bc = count_bad_ksubsets(CycleIndex(from_type(p.n, t)), p, k, budget, kernels::Execution::Serial);
                    a.add(cls(type, has_m), ngood_type(type, p), class_size(p.n, t), ipow(BigInt(bc.good()), M));
                }
            },
            [](OracleAcc& a, const OracleAcc& b) { a.merge(b); });
    }
    ExactConditional out;
    out.line = p;
    out.k = k;
    out.M = M;
    out.group_order = group_order(p.group, p.n);
    const BigInt denom = ipow(subsets, M);
    const BigInt& G = out.group_order;
    BigInt acc_total = 0;
    for (int i = 0; i < 7; ++i) {
        out.prob_label[i] = Rational(acc.count[i], G);
        out.accept_and_label[i] = Rational(acc.accept_num[i], G * denom);
        acc_total += acc.accept_num[i];
    }
    out.prob_ngood = Rational(acc.ngood, G);
    out.rho_true = out.prob_ngood * p.m;
    out.accept = Rational(acc_total, G * denom);
    out.p = 1 - out.accept;
    out.accept_given_ngood = acc.ngood == 0 ? Rational(0) : Rational(acc.ngood_accept_num, acc.ngood * denom);
    out.p1 = 1 - out.accept_given_ngood;
    const BigInt not_good = G - acc.ngood;
    out.p2 = not_good == 0 ? Rational(0) : 1 - Rational(acc_total - acc.ngood_accept_num, not_good * denom);
    out.q = out.accept - out.q_of(FamilyLabel::N);
    out.n_given_accept = acc_total == 0 ? Rational(0) : Rational(acc.accept_num[static_cast<int>(FamilyLabel::N)], acc_total);
    return out;
}

namespace {

struct SmallVCut {
    std::uint64_t v, rm, rn;
    Rational s;
    // d >= (rn)^s
    bool large(std::uint64_t d) const { return compare_scaled_power(Rational(d), Rational(1), BigInt(rn), s) >= 0; }
    // d < v - 3 (rn)^s
    bool below_cap(std::uint64_t d) const { return d < v && compare_scaled_power(Rational(v - d), Rational(3), BigInt(rn), s) > 0; }

    // 0: not counted, 1: P only, 2: P and P0, 3: P and P1plus
    int kind(const std::vector<std::uint64_t>& type) const {
        if (!std::all_of(type.begin(), type.end(), [&](std::uint64_t len) { return rm % len == 0; })) return 0;
        std::uint64_t nlarge = 0, d = 0;
        for (auto len : type)
            if (large(len)) {
                ++nlarge;
                d = len;
            }
        if (nlarge == 0) return 2;
        if (nlarge == 1 && below_cap(d)) return 3;
        return 1;
    }
};

SmallVCut make_cut(std::uint64_t v, std::uint64_t rm, std::uint64_t rn, const Rational& s) {
    if (rm < 1 || rn < 1) fail(ErrorCode::InvalidArgument, "small_v_proportions: rm and rn must be positive");
    if (!(s > 0 && s < 1)) fail(ErrorCode::InvalidArgument, "small_v_proportions: s must lie in (0,1)");
    return SmallVCut{v, rm, rn, s};
}

}  // namespace

SmallVProportions small_v_proportions(std::uint64_t v, std::uint64_t rm, std::uint64_t rn, const Rational& s) {
    if (v > 12) fail(ErrorCode::TooLarge, "small_v_proportions: v <= 12");
    const auto cut = make_cut(v, rm, rn, s);
    auto tally = [&](std::uint64_t w) {
        SmallVProportions r;
        if (w == 0) {
            r.P = r.P0 = 1;
            return r;
        }
        const SmallVCut c{w, rm, rn, s};
        BigInt P = 0, P0 = 0, P1 = 0;
        for_each_partition(w, 1, [&](const std::vector<std::uint64_t>& t) {
            const int kd = c.kind(t);
            if (!kd) return;
            const BigInt sz = class_size(w, t);
            P += sz;
            if (kd == 2) P0 += sz;
            if (kd == 3) P1 += sz;
        });
        const BigInt f = factorial(w);
        r.P = Rational(P, f);
        r.P0 = Rational(P0, f);
        r.P1plus = Rational(P1, f);
        return r;
    };
    SmallVProportions out = tally(v);
    out.P1plus_recursion = 0;
    for (auto d : divisors(rm))
        if (d <= v && cut.large(d) && cut.below_cap(d)) out.P1plus_recursion += Rational(1, d) * tally(v - d).P0;
    return out;
}

SmallVProportions small_v_proportions_enumerated(std::uint64_t v, std::uint64_t rm, std::uint64_t rn, const Rational& s) {
    if (v > kMaxEnumerationDegree) fail(ErrorCode::TooLarge, "small_v_proportions_enumerated: v <= " + std::to_string(kMaxEnumerationDegree));
    const auto cut = make_cut(v, rm, rn, s);
    SmallVProportions out;
    if (v == 0) {
        out.P = out.P0 = 1;
        out.P1plus = out.P1plus_recursion = 0;
        return out;
    }
    std::uint64_t P = 0, P0 = 0, P1 = 0;
    enumerate_group(GroupKind::Sym, v, [&](const Permutation& g) {
        const auto type = cycle_type(g);
        const int kd = cut.kind(std::vector<std::uint64_t>(type.begin(), type.end()));
        if (!kd) return;
        ++P;
        if (kd == 2) ++P0;
        if (kd == 3) ++P1;
    });
    const BigInt f = factorial(v);
    out.P = Rational(BigInt(P), f);
    out.P0 = Rational(BigInt(P0), f);
    out.P1plus = Rational(BigInt(P1), f);
    out.P1plus_recursion = small_v_proportions(v, rm, rn, s).P1plus_recursion;
    return out;
}

}  // namespace mcycle
