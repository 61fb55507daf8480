#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mcycle/bounds.hpp"
#include "mcycle/numtheory.hpp"

using namespace mcycle;

namespace {

double b_M_double(unsigned M, double s, double d, double r, double c, double a) {
    return std::pow(33.0 / 8, M) + 72 * a * c * c * std::pow(r, 2 * s + 2 * d) + 6.24 * a * c * c * c * std::pow(r, 3 * d) +
           c * c / std::pow(r, 2 * s - 2 * d) + std::pow(31 / std::pow(r, 1 - s), M);
}

BoundParams remark_params(std::uint64_t r, const Real& eps = Real(1)) {
    return make_bound_params(4, Rational(17, 24), Rational(1, 6), r, Real("138.32"), Real(25) / 4, eps);
}

double rel_err(const Real& got, double want) { return std::fabs(static_cast<double>(got) / want - 1); }

}  // namespace

TEST_CASE("validate_params") {
    auto pc = validate_params(4, Rational(5, 8), Rational(1, 24));
    CHECK(pc.ok);
    CHECK(pc.ell == Rational(7, 6));
    pc = validate_params(4, Rational(17, 24), Rational(1, 6));
    CHECK(pc.ok);
    CHECK(pc.ell == Rational(13, 12));
    pc = validate_params(4, Rational(1, 2), Rational(1, 24));
    CHECK_FALSE(pc.ok);
    CHECK_FALSE(pc.violations.empty());
    CHECK_FALSE(validate_params(3, Rational(5, 8), Rational(1, 24)).ok);
    CHECK_FALSE(validate_params(4, Rational(3, 4), Rational(1, 24)).ok);
    CHECK_FALSE(validate_params(4, Rational(5, 8), Rational(1, 8)).ok);
    CHECK_FALSE(validate_params(4, Rational(5, 8), Rational(0)).ok);
}

TEST_CASE("ell is the minimum of its four terms") {
    for (unsigned M = 4; M <= 8; ++M)
        for (int sn = 13; sn < 24; ++sn)
            for (int dn = 1; dn < 12; ++dn) {
                const Rational s(sn, 24), d(dn, 48);
                const Rational terms[] = {Rational(M) * (1 - s), 3 - 2 * s - 2 * d, 1 + s - 3 * d, 2 * s - 2 * d};
                Rational lo = terms[0];
                for (auto& t : terms)
                    if (t < lo) lo = t;
                CHECK(ell_of(M, s, d) == lo);
                const auto pc = validate_params(M, s, d);
                if (pc.ok) CHECK(pc.ell > 1);
            }
}

TEST_CASE("M upper bound") {
    // M <= ln(9/8)(n-2)/2 means n >= 2 + 8/ln(9/8) = 69.92 for M = 4.
    CHECK_FALSE(M_within_upper(4, 69));
    CHECK(M_within_upper(4, 70));
}

TEST_CASE("c_delta search") {
    const auto one = c_delta_search(Rational(1), 1000);
    CHECK(one.value >= Real("0.999"));
    CHECK(one.value <= 2);
    const auto sixth = c_delta_search(Rational(1, 6), 1'000'000'000ULL);
    CHECK(sixth.value > 40);
    CHECK(sixth.value <= Real("138.32"));
    const Real direct = Real(d_count(sixth.argmax)) / pow(Real(sixth.argmax), Real(1) / 6);
    CHECK(sixth.value <= direct);
    CHECK(sixth.value >= direct * (1 - Real("1e-30")));
    const auto small = c_delta_search(Rational(1, 24), 1'000'000'000ULL);
    CHECK(small.value >= sixth.value);
    Real prev = 0;
    for (int den = 24; den >= 2; den -= 2) {
        const auto v = c_delta_search(Rational(1, den), 1'000'000);
        if (den < 24) CHECK(v.value <= prev);
        prev = v.value;
    }
    // Every x up to the limit, not only the candidate products.
    for (int den : {2, 6, 24}) {
        const std::uint64_t limit = 200'000;
        double best = 0;
        for (std::uint64_t x = 1; x <= limit; ++x) best = std::max(best, static_cast<double>(d_count(x)) / std::pow(static_cast<double>(x), 1.0 / den));
        CHECK(std::fabs(static_cast<double>(c_delta_search(Rational(1, den), limit).value) / best - 1) < 1e-12);
    }
    CHECK_THROWS_AS(c_delta_search(Rational(0), 10), Error);
    CHECK_THROWS_AS(c_delta_search(Rational(3, 2), 10), Error);
    CHECK_THROWS_AS(c_delta_search(Rational(1, 2), 2'000'000'000ULL), Error);
}

TEST_CASE("a_delta") {
    const Rational s(17, 24), d(1, 6);
    CHECK(a_delta_eval(Real(0), s, d, ADeltaVariant::At150).value == Real(5) / 4);
    const double q = std::pow(150.0, 13.0 / 24);
    const double want = 1.25 * (1 + 3 * 138.32 / q + (138.32 / q) * (138.32 / q));
    CHECK(rel_err(a_delta_eval(Real("138.32"), s, d, ADeltaVariant::At150).value, want) < 1e-12);
    const auto t = a_delta_eval(Real("138.32"), s, d, ADeltaVariant::Table, 150);
    CHECK(t.value == Real(25) / 4);
    REQUIRE(t.condition.has_value());
    CHECK_FALSE(*t.condition);
    CHECK(*a_delta_eval(Real(2), s, d, ADeltaVariant::Table, 150).condition);
    CHECK_THROWS_AS(a_delta_eval(Real(1), Rational(1, 6), Rational(1, 6), ADeltaVariant::At150), Error);
}

TEST_CASE("b_M") {
    const Rational s(17, 24), d(1, 6);
    const Real c("138.32"), a = Real(25) / 4;
    const Real r1 = b_M_eval(4, s, d, 1, c, a);
    CHECK(rel_err(r1, b_M_double(4, 17.0 / 24, 1.0 / 6, 1, 138.32, 6.25)) < 1e-12);
    CHECK(rel_err(r1, 1.1276e8) < 1e-3);
    const Real r3 = b_M_eval(4, s, d, 3, c, a);
    CHECK(rel_err(r3, b_M_double(4, 17.0 / 24, 1.0 / 6, 3, 138.32, 6.25)) < 1e-12);
    CHECK(r3 > 2e8);
    CHECK(b_M_eval(4, s, d, 1, Real(0), Real(5) / 4) == pow(Real(33) / 8, 4) + pow(Real(31), 4));
    CHECK(b_M_eval(4, s, d, 1, Real(140), a) > r1);
    CHECK_THROWS_AS(make_bound_params(4, Rational(1, 2), d, 1, c, a, Real(1)), Error);
}

TEST_CASE("n threshold") {
    const auto t3 = n_threshold(remark_params(3));
    CHECK(t3.binding == 2);
    CHECK(std::fabs(static_cast<double>(t3.log10_n) - 112.517) < 0.01);
    const auto t1 = n_threshold(remark_params(1));
    CHECK(std::fabs(static_cast<double>(t1.log10_n) - 108.63) < 0.01);
    const auto half = n_threshold(remark_params(1, Real("0.5")));
    CHECK(std::fabs(static_cast<double>(half.log10_parts[2] - t1.log10_parts[2]) - 12 * std::log10(2.0)) < 1e-9);

    const auto p58 = make_bound_params(4, Rational(5, 8), Rational(1, 24), 1, Real("138.32"), Real(25) / 4, Real(1));
    const auto f = n_constraints(p58, BigInt(156));
    CHECK_FALSE(f.first);
    CHECK_FALSE(f.third);
    CHECK_FALSE(n_satisfies(p58, BigInt(156)));
}

TEST_CASE("n_satisfies is monotone and matches the threshold") {
    const auto bp = remark_params(1);
    bool prev1 = false, prev2 = false;
    for (std::uint64_t n = 7; n <= 20000; ++n) {
        const auto f = n_constraints(bp, BigInt(n));
        if (prev1) CHECK(f.first);
        if (prev2 && n > 100) CHECK(f.second);
        prev1 = f.first;
        prev2 = f.second;
    }
    const auto t = n_threshold(bp);
    const int e = static_cast<int>(floor(t.log10_n));
    CHECK_FALSE(n_satisfies(bp, ipow(BigInt(10), e)));
    CHECK(n_satisfies(bp, ipow(BigInt(10), e + 1)));
    bool prev = false;
    for (int tenths = 10 * e - 5; tenths <= 10 * e + 15; ++tenths) {
        const BigInt n = BigInt(static_cast<std::uint64_t>(std::pow(10.0, (tenths % 10) / 10.0) * 1e6)) * ipow(BigInt(10), tenths / 10 - 6);
        const bool now = n_satisfies(bp, n);
        if (prev) CHECK(now);
        prev = now;
    }
}

TEST_CASE("family bounds") {
    const auto bp = make_bound_params(4, Rational(5, 8), Rational(1, 24), 1, Real("138.32"), Real(25) / 4, Real(1));
    const auto rep = family_bounds(10000, 2, bp, line_params_for_line(1, 10000));
    CHECK(d_count(10000) == 25);
    CHECK(rel_err(rep.Sge2, 625.0 / 1e5) < 1e-12);
    const auto rep100 = family_bounds(100, 2, bp, line_params_for_line(1, 100));
    CHECK(rel_err(rep100.success_floor, 0.92236816) < 1e-12);
    const auto rep150 = family_bounds(150, 2, bp, line_params_for_line(1, 150));
    CHECK(rel_err(rep150.mcyc_ceiling, 0.04) < 1e-12);
    // k = 3 uses the exponent ceil(3/2) = 2.
    const auto k3 = family_bounds(150, 3, bp, line_params_for_line(1, 150));
    CHECK(rel_err(k3.mcyc_ceiling, std::sqrt(24.0) * std::pow(9.0 / 600, 2)) < 1e-12);
}

TEST_CASE("family bounds are positive and decrease in n at fixed d(rm)") {
    const auto bp = remark_params(1);
    FamilyBoundReport prev;
    bool first = true;
    for (auto n : primes_up_to(3000)) {
        if (n < 11) continue;
        const auto rep = family_bounds(n, 2, bp, line_params_for_line(1, n));
        for (const Real* v : {&rep.R, &rep.S0, &rep.S1plus, &rep.Sge2, &rep.S1minus}) CHECK(*v > 0);
        if (!first) {
            CHECK(rep.R < prev.R);
            CHECK(rep.S0 < prev.S0);
            CHECK(rep.S1plus < prev.S1plus);
            CHECK(rep.Sge2 < prev.Sge2);
            CHECK(rep.S1minus < prev.S1minus);
        }
        prev = rep;
        first = false;
    }
}

TEST_CASE("trial counts") {
    CHECK(trial_count(std::exp(-1.0), 0.5) == 2);
    CHECK(trial_count(0.05, 0.01) == 300);
    CHECK(trial_count(0.1, 0.01) == 231);
    CHECK(trial_count_certified(Rational(1, 20), Rational(1, 100)) == 300);
    CHECK_THROWS_AS(trial_count(0, 0.5), Error);
    CHECK_THROWS_AS(trial_count(0.5, 1), Error);
    Rng rng = stream(5, 0);
    for (int i = 0; i < 200; ++i) {
        const Rational eps(1 + rng() % 98, 100), p(1 + rng() % 199, 200);
        const std::uint64_t N = trial_count_certified(eps, p);
        CHECK(ipow(1 - p, N) <= eps);
        const double x = std::log(1 / to_double(eps)) / to_double(p);
        CHECK(static_cast<double>(N) >= x - 1e-9);
        CHECK(static_cast<double>(N - 1) < x + 1e-9);
    }
    // find-mcycle's N: eps -> eps/2, p -> 1/(5n).
    const std::uint64_t n = 50;
    CHECK(trial_count(0.05, 1.0 / (5 * n)) == static_cast<std::uint64_t>(std::ceil(5 * n * std::log(2 / 0.1))));
}
