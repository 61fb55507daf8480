#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mcycle/montecarlo.hpp"
#include "mcycle/numtheory.hpp"

using namespace mcycle;

namespace {

struct Brute {
    Rational accept, n_given_accept, accept_given_ngood, prob_ngood;
};

std::vector<std::size_t> cycle_lengths(const std::vector<int>& img) {
    std::vector<std::size_t> out;
    std::vector<bool> seen(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(img[j])) {
            seen[j] = true;
            ++len;
        }
        out.push_back(len);
    }
    return out;
}

bool even(const std::vector<int>& img) {
    std::size_t t = 0;
    for (auto len : cycle_lengths(img)) t += len - 1;
    return t % 2 == 0;
}

// Walks G with next_permutation and every k-subset as a bitmask.
Brute brute_conditional(const LineParams& p, std::size_t k, unsigned M) {
    const std::size_t n = p.n;
    std::vector<std::uint64_t> targets;
    for (std::uint64_t r0 = 1; r0 <= p.r; ++r0)
        if (p.r % r0 == 0) targets.push_back(r0 * p.m);
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t s = 0; s < (1u << n); ++s)
        if (static_cast<std::size_t>(__builtin_popcount(s)) == k) subsets.push_back(s);
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    BigInt G = 0, acc = 0, acc_n = 0, ngood = 0, acc_ngood = 0;
    const BigInt denom = ipow(BigInt(subsets.size()), M);
    do {
        if (p.group == GroupKind::Alt && !even(img)) continue;
        ++G;
        std::uint64_t good = 0;
        for (auto s : subsets) {
            std::uint32_t cur = s;
            std::uint64_t len = 0;
            do {
                std::uint32_t next = 0;
                for (std::size_t x = 0; x < n; ++x)
                    if (cur >> x & 1) next |= 1u << img[x];
                cur = next;
                ++len;
            } while (cur != s);
            if (std::find(targets.begin(), targets.end(), len) != targets.end()) ++good;
        }
        const BigInt a = ipow(BigInt(good), M);
        acc += a;
        const auto type = cycle_lengths(img);
        const bool has_m = std::find(type.begin(), type.end(), p.m) != type.end();
        if (has_m) acc_n += a;
        if (has_m && std::all_of(type.begin(), type.end(), [&](std::size_t l) { return p.rm() % l == 0; })) {
            ++ngood;
            acc_ngood += a;
        }
    } while (std::next_permutation(img.begin(), img.end()));
    return {Rational(acc, G * denom), Rational(acc_n, acc), Rational(acc_ngood, ngood * denom), Rational(ngood, G)};
}

ExperimentConfig conditional_config(int line, std::size_t n, std::size_t k, std::uint64_t trials, std::uint64_t seed) {
    ExperimentConfig c;
    c.line = line_params_for_line(line, n);
    c.k = k;
    c.trials = trials;
    c.seed = seed;
    return c;
}

bool within(const Estimate& e, const Rational& exact, double widths) {
    return std::fabs(e.value.estimate - to_double(exact)) <= widths * e.value.half_width();
}

// Order of a permutation of {0..v-1}, independently of the library.
std::uint64_t order_of(const std::vector<int>& img) {
    std::uint64_t o = 1;
    for (auto len : cycle_lengths(img)) o = std::lcm(o, static_cast<std::uint64_t>(len));
    return o;
}

}  // namespace

TEST_CASE("Wilson interval") {
    const double z = kWilsonZ;
    auto w = wilson(0, 10);
    CHECK(w.lo == 0);
    CHECK(w.hi == doctest::Approx(z * z / (10 + z * z)).epsilon(1e-12));
    w = wilson(5, 10);
    CHECK(w.estimate == 0.5);
    const double hw = z * std::sqrt(0.25 / 10 + z * z / 400) / (1 + z * z / 10);
    CHECK(w.half_width() == doctest::Approx(hw).epsilon(1e-12));
    CHECK(wilson(10, 10).hi == 1.0);
    CHECK(wilson(0, 1983).lo == 0.0);
    for (std::uint64_t x = 0; x <= 50; ++x) {
        const auto e = wilson(x, 50);
        CHECK(e.lo <= e.estimate);
        CHECK(e.estimate <= e.hi);
        CHECK(e.lo >= 0);
        CHECK(e.hi <= 1);
    }
}

TEST_CASE("config validation") {
    auto c = conditional_config(1, 12, 2, 10, 1);
    CHECK_NOTHROW(validate(c));
    c.k = 1;
    CHECK_THROWS_AS(validate(c), Error);
    c.k = 7;
    CHECK_THROWS_AS(validate(c), Error);
    c.k = 2;
    c.trials = 0;
    CHECK_THROWS_AS(validate(c), Error);
    c.trials = 10;
    c.mode = Mode::FindMCycle;
    c.M = 3;
    CHECK_THROWS_AS(validate(c), Error);
    c.M = 4;
    c.mode = Mode::ExactOracle;
    CHECK_THROWS_AS(run_experiment(c), Error);
    CHECK(parse_mode(to_string(Mode::FamilyCensus)) == Mode::FamilyCensus);
    CHECK(parse_stream("ngood") == StreamKind::NGood);
    CHECK(parse_engine("trace") == Engine::Trace);
    CHECK_THROWS_AS(parse_mode("nope"), Error);
}

TEST_CASE("random_ngood lands in N_good on every line") {
    const std::pair<int, std::size_t> cases[] = {{1, 30}, {2, 31}, {3, 30}, {4, 31}, {5, 30}, {6, 32}, {7, 33}, {8, 30}, {9, 31}};
    for (auto [line, n] : cases) {
        const auto p = line_params_for_line(line, n);
        for (std::uint64_t i = 0; i < 200; ++i) {
            Rng rng = stream(3, i);
            const auto g = random_ngood(p, rng);
            CHECK(in_Ngood(g, p));
            CHECK(in_group(g, p.group));
        }
    }
}

TEST_CASE("random_ngood is uniform on small N_good") {
    // Line 3 at n = 8: a 5-cycle times the identity or one of 3 transpositions.
    const auto p3 = line_params_for_line(3, 8);
    const std::uint64_t N = 40000;
    std::uint64_t transp = 0, zero_in_cycle = 0;
    for (std::uint64_t i = 0; i < N; ++i) {
        Rng rng = stream(11, i);
        const auto g = random_ngood(p3, rng);
        const auto t = cycle_type(g);
        if (std::count(t.begin(), t.end(), 2)) ++transp;
        // Cycle through 0 has length 5 iff g^5 fixes 0 and g does not.
        if (g(0) != 0 && power(g, std::uint64_t{5})(0) == 0) ++zero_in_cycle;
    }
    auto z = [&](std::uint64_t x, double prob) { return std::fabs(x - N * prob) / std::sqrt(N * prob * (1 - prob)); };
    CHECK(z(transp, 0.75) < 5);
    CHECK(z(zero_in_cycle, 5.0 / 8) < 5);

    // Line 7 at n = 9: a 5-cycle times the identity or one of 8 three-cycles.
    const auto p7 = line_params_for_line(7, 9);
    std::uint64_t three = 0;
    for (std::uint64_t i = 0; i < N; ++i) {
        Rng rng = stream(12, i);
        const auto t = cycle_type(random_ngood(p7, rng));
        if (std::count(t.begin(), t.end(), 3)) ++three;
    }
    CHECK(z(three, 8.0 / 9) < 5);
}

TEST_CASE("exact oracle matches an independent brute force") {
    const std::tuple<int, std::size_t, std::size_t, unsigned> cases[] = {{2, 7, 2, 4}, {3, 8, 2, 4}, {1, 6, 3, 2}, {4, 7, 3, 4}, {6, 8, 2, 4}};
    for (auto [line, n, k, M] : cases) {
        CAPTURE(line);
        CAPTURE(n);
        const auto p = line_params_for_line(line, n);
        const auto b = brute_conditional(p, k, M);
        const auto e = exact_conditional(p, k, M, Rational(17, 24));
        CHECK(e.accept == b.accept);
        CHECK(e.n_given_accept == b.n_given_accept);
        CHECK(e.accept_given_ngood == b.accept_given_ngood);
        CHECK(e.prob_ngood == b.prob_ngood);
        const auto el = exact_conditional(p, k, M, Rational(17, 24), OracleRoute::Elements);
        CHECK(el.accept == e.accept);
        CHECK(el.p1 == e.p1);
        CHECK(el.p2 == e.p2);
        CHECK(el.accept_and_label == e.accept_and_label);
        CHECK(el.prob_label == e.prob_label);
    }
}

TEST_CASE("exact oracle identities") {
    const std::pair<int, std::size_t> cases[] = {{1, 9}, {2, 9}, {3, 10}, {4, 9}, {5, 10}, {6, 10}, {7, 9}, {8, 12}};
    for (auto [line, n] : cases) {
        CAPTURE(line);
        const auto p = line_params_for_line(line, n);
        for (std::size_t k : {std::size_t{2}, std::size_t{3}}) {
            const auto e = exact_conditional(p, k, 4, Rational(2, 3));
            const Rational m(p.m);
            CHECK(e.p == e.rho_true / m * e.p1 + (m - e.rho_true) / m * e.p2);
            Rational fam = 0;
            for (auto f : kFLabels) fam += e.q_of(f);
            CHECK(e.q_of(FamilyLabel::Other) == 0);
            CHECK(e.q == fam);
            Rational total = 0;
            for (auto x : e.prob_label) total += x;
            CHECK(total == 1);
            CHECK(e.rho_true == e.prob_ngood * m);
            CHECK(e.accept >= 0);
            CHECK(e.accept <= 1);
        }
    }
}

TEST_CASE("exact oracle guards") {
    CHECK_THROWS_AS(line_params_for_line(3, 6), Error);
    const auto p = line_params_for_line(3, 8);
    CHECK_THROWS_AS(exact_conditional(p, 2, 4, Rational(2, 3), OracleRoute::Elements, 1000), Error);
    CHECK_THROWS_AS(exact_conditional(p, 2, 4, Rational(2, 3), OracleRoute::Classes, 10), Error);
    CHECK_THROWS_AS(exact_conditional(p, 5, 4, Rational(2, 3)), Error);
    CHECK_THROWS_AS(exact_conditional(line_params_for_line(1, 12), 2, 4, Rational(2, 3), OracleRoute::Elements), Error);
}

TEST_CASE("small v proportions") {
    auto z = small_v_proportions(0, 6, 2, Rational(2, 3));
    CHECK(z.P == 1);
    CHECK(z.P0 == 1);
    CHECK(small_v_proportions(4, 4, 1, Rational(2, 3)).P == Rational(2, 3));
    CHECK(small_v_proportions(4, 4, 9, Rational(5, 8)).P == Rational(2, 3));
    CHECK_THROWS_AS(small_v_proportions(13, 4, 1, Rational(2, 3)), Error);
    CHECK_THROWS_AS(small_v_proportions_enumerated(11, 4, 1, Rational(2, 3)), Error);

    // P against orders counted without the library.
    for (std::uint64_t v = 1; v <= 7; ++v) {
        std::vector<int> img(v);
        std::iota(img.begin(), img.end(), 0);
        std::vector<std::uint64_t> orders;
        do orders.push_back(order_of(img));
        while (std::next_permutation(img.begin(), img.end()));
        for (std::uint64_t rm = 1; rm <= 30; ++rm) {
            const auto cnt = std::count_if(orders.begin(), orders.end(), [&](std::uint64_t o) { return rm % o == 0; });
            CHECK(small_v_proportions(v, rm, 3, Rational(2, 3)).P == Rational(BigInt(cnt), factorial(v)));
        }
    }

    const Rational grid[] = {Rational(5, 8), Rational(2, 3), Rational(7, 10)};
    for (std::uint64_t v = 0; v <= 8; ++v)
        for (std::uint64_t rm : {2, 4, 6, 12, 30, 60})
            for (std::uint64_t rn : {1, 2, 4, 6})
                for (const auto& s : grid) {
                    const auto a = small_v_proportions(v, rm, rn, s);
                    const auto b = small_v_proportions_enumerated(v, rm, rn, s);
                    CHECK(a.P == b.P);
                    CHECK(a.P0 == b.P0);
                    CHECK(a.P1plus == b.P1plus);
                }
    for (std::uint64_t v = 0; v <= 12; ++v)
        for (std::uint64_t rm = 1; rm <= 60; ++rm)
            for (std::uint64_t rn : {1, 2, 3, 5})
                for (const auto& s : grid) {
                    const auto a = small_v_proportions(v, rm, rn, s);
                    CHECK(a.P0 <= a.P);
                    CHECK(a.P0 + a.P1plus <= a.P);
                    CHECK(a.P1plus == a.P1plus_recursion);
                }
}

TEST_CASE("conditional runs are deterministic across execution modes") {
    auto c = conditional_config(1, 24, 3, 3000, 42);
    const auto serial = run_conditional(c, kernels::Execution::Serial);
    for (unsigned w : {1u, 3u, 8u}) {
        c.workers = w;
        CHECK(run_conditional(c).counts == serial.counts);
    }
    c.engine = Engine::Trace;
    const auto traced = run_conditional(c);
    auto counts = traced.counts;
    counts.images = 0;
    CHECK(counts == serial.counts);
    CHECK(traced.counts.images > 0);
}

TEST_CASE("conditional counts and estimates are consistent") {
    const auto st = run_conditional(conditional_config(3, 30, 3, 4000, 9));
    std::uint64_t total = 0;
    for (auto f : kAllLabels) total += st.counts.label_total(f);
    CHECK(total == st.counts.trials);
    CHECK(st.counts.trials == 4000);
    for (const auto& e : st.estimates) {
        CHECK(e.value.estimate >= 0);
        CHECK(e.value.estimate <= 1);
    }
    CHECK(st.estimate("accept").value.successes == st.counts.accepted());
    CHECK(st.estimate("q(Other)").value.successes == 0);
    CHECK(st.estimate("accept|Ngood").bound_is_floor);
    CHECK(st.estimate("q(Sge2)").bound.has_value());
    CHECK_THROWS_AS(st.estimate("missing"), Error);
}

TEST_CASE("Monte Carlo converges to the exact oracle") {
    const std::tuple<int, std::size_t, std::size_t> cases[] = {{2, 7, 2}, {3, 8, 2}, {1, 9, 3}};
    for (auto [line, n, k] : cases) {
        CAPTURE(line);
        const auto c = conditional_config(line, n, k, 100000, 2024);
        const auto st = run_conditional(c);
        const auto ex = exact_conditional(c.line, k, c.M, c.s);
        CHECK(within(st.estimate("accept"), ex.accept, 4));
        CHECK(within(st.estimate("N|accept"), ex.n_given_accept, 4));
        CHECK(within(st.estimate("p1"), ex.p1, 4));
        CHECK(within(st.estimate("p2"), ex.p2, 4));
        CHECK(within(st.estimate("q"), ex.q, 4));
    }
}

TEST_CASE("N_good stream meets the success floor; M = 1 accepts more") {
    auto c = conditional_config(1, 50, 3, 20000, 5);
    c.stream = StreamKind::NGood;
    const auto st = run_conditional(c);
    const auto& e = st.estimate("accept|Ngood");
    CHECK(st.counts.ngood == st.counts.trials);
    REQUIRE(e.bound.has_value());
    CHECK(*e.bound == doctest::Approx(std::pow(48.0 / 50, 4)));
    CHECK(e.value.estimate >= *e.bound - 3 * e.value.half_width());

    auto u = conditional_config(1, 12, 2, 20000, 6);
    const auto m4 = run_conditional(u);
    u.M = 1;
    const auto m1 = run_conditional(u);
    CHECK(m1.estimate("accept").value.estimate > m4.estimate("accept").value.estimate);
}

TEST_CASE("find-mcycle runs") {
    ExperimentConfig c = conditional_config(1, 20, 2, 40, 8);
    c.mode = Mode::FindMCycle;
    c.trivial_group = true;
    auto st = run_experiment(c);
    CHECK(st.find.runs == 40);
    CHECK(st.find.ugly == 40);
    CHECK(st.estimate("ugly").value.estimate == 1);

    c.trivial_group = false;
    c.trials = 60;
    st = run_experiment(c);
    CHECK(st.find.good + st.find.bad + st.find.ugly == 60);
    CHECK(st.find.good >= 55);
    c.workers = 2;
    CHECK(run_experiment(c, kernels::Execution::Serial).find == st.find);
    CHECK(st.estimate("good").bound_is_floor);
    CHECK_FALSE(st.estimate("bad").bound_asserted);
}

TEST_CASE("family census") {
    ExperimentConfig c = conditional_config(3, 8, 2, 50000, 13);
    c.mode = Mode::FamilyCensus;
    const auto st = run_experiment(c);
    std::uint64_t total = 0;
    for (auto f : kAllLabels) total += st.counts.label_total(f);
    CHECK(total == 50000);
    const auto ex = exact_conditional(c.line, 2, 4, c.s);
    CHECK(within(st.estimate("Ngood"), ex.prob_ngood, 4));
    for (auto f : kAllLabels) CHECK(within(st.estimate(to_string(f)), ex.prob_label[static_cast<int>(f)], 4));
    c.stream = StreamKind::NGood;
    c.trials = 500;
    CHECK(run_experiment(c).counts.ngood == 500);
}
