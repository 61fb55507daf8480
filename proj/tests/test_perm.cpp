#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "mcycle/perm.hpp"

using namespace mcycle;

namespace {

Permutation P(std::vector<Point> im) { return Permutation(std::move(im)); }

std::uint64_t naive_order(const Permutation& p) {
    Permutation q = p;
    std::uint64_t e = 1;
    while (!q.is_identity()) {
        q = compose(q, p);
        ++e;
    }
    return e;
}

}  // namespace

TEST_CASE("constructor rejects non-bijections") {
    CHECK_THROWS_AS(P({0, 0, 1}), Error);
    CHECK_THROWS_AS(P({0, 3, 1}), Error);
    CHECK_THROWS_AS(P({}), Error);
}

TEST_CASE("compose examples") {
    const Permutation p = P({1, 2, 0});
    const Permutation q = P({1, 0, 2});
    CHECK(compose(p, q) == P({0, 2, 1}));
    CHECK(compose(Permutation::identity(3), p) == p);
    CHECK(compose(p, p.inverse()).is_identity());
    CHECK_THROWS_AS(compose(p, Permutation::identity(4)), Error);
    try {
        compose(p, Permutation::identity(4));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegreeMismatch);
    }
}

TEST_CASE("power examples") {
    const Permutation six = Permutation::from_cycles(6, {{0, 1, 2, 3, 4, 5}});
    CHECK(power(six, 0).is_identity());
    CHECK(power(six, 6).is_identity());
    const Permutation g = Permutation::from_cycles(7, {{0, 1, 2, 3, 4}, {5, 6}});
    CHECK(power(g, 5) == Permutation::from_cycles(7, {{5, 6}}));
    CHECK(power(g, BigInt(1) << 200) == power(g, static_cast<std::uint64_t>((BigInt(1) << 200) % 10)));
}

TEST_CASE("cycle decomposition examples") {
    CHECK(cycle_decomposition(Permutation::identity(4)).size() == 4);
    CHECK(cycle_decomposition(Permutation::from_cycles(6, {{0, 1, 2, 3, 4, 5}})).size() == 1);
    const auto cyc = cycle_decomposition(P({1, 0, 3, 4, 2}));
    REQUIRE(cyc.size() == 2);
    CHECK(cyc[0] == Cycle{0, 1});
    CHECK(cyc[1] == Cycle{2, 3, 4});
}

TEST_CASE("order, order_divides and parity examples") {
    CHECK(order(Permutation::identity(5)) == 1);
    const auto t643 = Permutation::from_cycles(13, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9}, {10, 11, 12}});
    CHECK(order(t643) == 12);
    const auto t52 = Permutation::from_cycles(7, {{0, 1, 2, 3, 4}, {5, 6}});
    CHECK(order(t52) == 10);
    CHECK(order_divides(Permutation::identity(3), std::uint64_t{7}));
    CHECK(order_divides(t52, std::uint64_t{10}));
    CHECK_FALSE(order_divides(Permutation::from_cycles(8, {{0, 1, 2, 3, 4}, {5, 6, 7}}), std::uint64_t{10}));
    CHECK(parity(Permutation::identity(4)) == Parity::Even);
    CHECK(parity(Permutation::from_cycles(4, {{0, 1}})) == Parity::Odd);
    CHECK(parity(Permutation::from_cycles(4, {{0, 1, 2}})) == Parity::Even);
    CHECK(cycle_type(t643) == std::vector<std::size_t>{6, 4, 3});
}

TEST_CASE("random permutations satisfy the group laws") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng = stream(11, i);
        const std::size_t n = 1 + i % 30;
        const Permutation p = random_element(GroupKind::Sym, n, rng);
        CHECK(compose(p, p.inverse()).is_identity());
        CHECK(p.inverse().inverse() == p);
        const std::uint64_t e1 = rng() % 50, e2 = rng() % 50;
        CHECK(power(p, e1 + e2) == compose(power(p, e1), power(p, e2)));
        const BigInt o = order(p);
        CHECK(power(p, o).is_identity());
        for (std::uint64_t q = 2; q <= 30; ++q) {
            bool prime = true;
            for (std::uint64_t d = 2; d * d <= q; ++d) prime = prime && q % d;
            if (prime && o % q == 0) CHECK_FALSE(power(p, BigInt(o / q)).is_identity());
        }
        if (n <= 12) CHECK(o == naive_order(p));
        for (std::uint64_t t = 1; t <= 60; ++t) CHECK(order_divides(p, t) == (BigInt(t) % o == 0));
    }
}

TEST_CASE("Sym(4) sampling is uniform (chi-square within 4 sigma)") {
    Rng rng = stream(2024, 0);
    std::map<std::vector<Point>, int> counts;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const auto p = random_element(GroupKind::Sym, 4, rng);
        ++counts[std::vector<Point>(p.images().begin(), p.images().end())];
    }
    CHECK(counts.size() == 24);
    double chi = 0;
    const double expect = draws / 24.0;
    for (auto& [k, c] : counts) chi += (c - expect) * (c - expect) / expect;
    // 23 degrees of freedom: mean 23, sd sqrt(46).
    CHECK(chi < 23 + 4 * std::sqrt(46.0));
}

TEST_CASE("Alt sampling is even, uniform and reproducible") {
    Rng rng = stream(5, 1);
    std::map<std::vector<Point>, int> counts;
    for (int i = 0; i < 60000; ++i) {
        const auto p = random_element(GroupKind::Alt, 4, rng);
        CHECK(parity(p) == Parity::Even);
        ++counts[std::vector<Point>(p.images().begin(), p.images().end())];
    }
    CHECK(counts.size() == 12);
    double chi = 0;
    for (auto& [k, c] : counts) chi += (c - 5000.0) * (c - 5000.0) / 5000.0;
    CHECK(chi < 11 + 4 * std::sqrt(22.0));
    Rng a = stream(9, 3), b = stream(9, 3);
    for (int i = 0; i < 10; ++i) CHECK(random_element(GroupKind::Sym, 20, a) == random_element(GroupKind::Sym, 20, b));
}

TEST_CASE("group enumeration") {
    std::size_t c = 0;
    enumerate_group(GroupKind::Sym, 3, [&](const Permutation&) { ++c; });
    CHECK(c == 6);
    c = 0;
    enumerate_group(GroupKind::Alt, 4, [&](const Permutation&) { ++c; });
    CHECK(c == 12);
    for (std::size_t n = 1; n <= 7; ++n) {
        std::set<std::vector<Point>> seen;
        enumerate_group(GroupKind::Sym, n, [&](const Permutation& p) { seen.insert(std::vector<Point>(p.images().begin(), p.images().end())); });
        CHECK(BigInt(seen.size()) == group_order(GroupKind::Sym, n));
        std::size_t alt = 0;
        enumerate_group(GroupKind::Alt, n, [&](const Permutation& p) {
            CHECK(parity(p) == Parity::Even);
            ++alt;
        });
        CHECK(BigInt(alt) == group_order(GroupKind::Alt, n));
    }
    CHECK_THROWS_AS(GroupEnumerator(GroupKind::Sym, 11), Error);
    for (std::uint64_t r = 0; r < 120; ++r) {
        GroupEnumerator e(GroupKind::Sym, 5, r, r + 1);
        Permutation p;
        REQUIRE(e.next(p));
        CHECK(p == unrank(5, r));
    }
}

TEST_CASE("text forms round-trip") {
    const auto p = parse_permutation("[2,3,1]");
    CHECK(p == P({1, 2, 0}));
    CHECK(to_image_string(p) == "[2,3,1]");
    CHECK(to_cycle_string(p) == "(1 2 3)");
    CHECK(to_cycle_string(Permutation::from_cycles(4, {{0, 1, 2}})) == "(1 2 3)(4)");
    CHECK(parse_permutation("(1 2 3)(4)") == Permutation::from_cycles(4, {{0, 1, 2}}));
    CHECK(parse_permutation("(1 2)", 5).degree() == 5);
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng = stream(3, i);
        const auto q = random_element(GroupKind::Sym, 1 + i % 15, rng);
        CHECK(parse_permutation(to_cycle_string(q), q.degree()) == q);
        CHECK(parse_permutation(to_image_string(q)) == q);
    }
    CHECK_THROWS_AS(parse_permutation("(1 2"), Error);
    CHECK_THROWS_AS(parse_permutation("(1 1 2)"), Error);
    CHECK_THROWS_AS(parse_permutation("[1,1]"), Error);
    try {
        parse_permutation("(1 2 3)(4 5 6 7 8 9 10 11 12 13)", 12);
        FAIL("expected a degree mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegreeMismatch);
    }
}
