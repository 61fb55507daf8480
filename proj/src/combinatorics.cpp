#include "mcycle/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mcycle/bounds.hpp"
#include "mcycle/families.hpp"
#include "mcycle/kset.hpp"
#include "mcycle/numtheory.hpp"

namespace mcycle {

std::string Verdict::args_string() const {
    std::string out;
    for (const auto& [k, v] : args) out += (out.empty() ? "" : " ") + k + "=" + v;
    return out;
}

namespace {

Verdict make_verdict(std::string id, std::vector<std::pair<std::string, std::string>> args, const Rational& lhs, const Rational& rhs, std::string rel) {
    Verdict v{std::move(id), std::move(args), to_string(lhs), to_string(rhs), rel, false};
    if (rel == "<=") v.holds = lhs <= rhs;
    else if (rel == "<") v.holds = lhs < rhs;
    else v.holds = lhs == rhs;
    return v;
}

std::uint64_t as_u64(const Rational& x, const char* name) {
    if (denominator(x) != 1 || x < 0) fail(ErrorCode::InvalidArgument, std::string(name) + " must be a non-negative integer");
    return static_cast<std::uint64_t>(numerator(x));
}

std::string real_str(const Real& x) { return to_string(x, 20); }

}  // namespace

Verdict check_binom_lemma(std::uint64_t a, std::uint64_t c, std::uint64_t l) {
    if (a < 2 || l < 1 || l >= c) fail(ErrorCode::InvalidArgument, "binomial lemma needs a > 1 and 1 <= l < c");
    const BigInt lhs = binomial(c * a - 1, a - 1) * binomial(c, l);
    const BigInt rhs = binomial(c * a, l * a);
    return make_verdict("lem:binom", {{"a", std::to_string(a)}, {"c", std::to_string(c)}, {"l", std::to_string(l)}}, Rational(lhs), Rational(rhs), "<=");
}

BigInt npk_count(std::span<const std::uint64_t> part_sizes, std::uint64_t k0) {
    std::uint64_t u = 0;
    for (auto p : part_sizes) u += p;
    std::vector<BigInt> coef(u + 1, 0);
    coef[0] = 1;
    std::uint64_t reach = 0;
    for (auto p : part_sizes) {
        reach += p;
        for (std::uint64_t j = reach; j >= p; --j) {
            coef[j] += coef[j - p];
            if (j == p) break;
        }
    }
    return k0 <= u ? coef[k0] : BigInt(0);
}

NpkBounds npk_bounds(std::uint64_t u, std::uint64_t k0) {
    if (k0 < 2 || k0 > u) fail(ErrorCode::InvalidArgument, "npk_bounds needs 2 <= k0 <= u");
    NpkBounds b;
    b.b1 = binomial(u / 2, k0 / 2);
    if (k0 % 2 == 1 && u % 2 == 0) b.b2 = binomial((u - 2) / 2, (k0 - 1) / 2);
    b.b3 = k0 == u ? Rational(1) : Rational(binomial(u, k0), BigInt(u - 1));
    return b;
}

BigInt sigma_cycle(std::uint64_t t, std::uint64_t k0, std::uint64_t p) {
    if (p < 2 || t % p) fail(ErrorCode::InvalidArgument, "sigma_cycle needs p | t");
    if (k0 > t) fail(ErrorCode::InvalidArgument, "sigma_cycle needs k0 <= t");
    return k0 % p ? BigInt(0) : binomial(t / p, k0 / p);
}

std::uint64_t sigma_cycle_enumerated(std::uint64_t t, std::uint64_t k0, std::uint64_t p) {
    if (p < 2 || t % p) fail(ErrorCode::InvalidArgument, "sigma_cycle needs p | t");
    if (k0 > t) fail(ErrorCode::InvalidArgument, "sigma_cycle needs k0 <= t");
    if (k0 == 0) return 1;
    // t_p is the p-part of t; count subsets whose period is not a multiple of it.
    std::uint64_t tp = 1;
    for (std::uint64_t x = t; x % p == 0; x /= p) tp *= p;
    std::uint64_t count = 0;
    std::vector<std::uint64_t> pos(k0);
    for_each_ksubset(t, k0, 0, t, [&](std::span<const Point> pts) {
        for (std::size_t i = 0; i < k0; ++i) pos[i] = pts[i];
        if (rotation_period(t, pos) % tp != 0) ++count;
    });
    return count;
}

std::uint64_t sigma_Sigma(std::span<const std::uint64_t> lengths, std::uint64_t rm, std::uint64_t k0, std::uint64_t budget) {
    std::uint64_t u = 0;
    std::vector<Cycle> cycles;
    for (auto len : lengths) {
        if (len == 0 || rm % len == 0) fail(ErrorCode::InvalidArgument, "sigma_Sigma: cycle length " + std::to_string(len) + " divides rm");
        Cycle c(len);
        for (std::uint64_t i = 0; i < len; ++i) c[i] = static_cast<Point>(u + i);
        u += len;
        cycles.push_back(std::move(c));
    }
    if (k0 < 1 || k0 > u) fail(ErrorCode::InvalidArgument, "sigma_Sigma needs 1 <= k0 <= u");
    if (binomial(u, k0) > budget) fail(ErrorCode::BudgetExceeded, "sigma_Sigma: enumeration exceeds budget");
    const CycleIndex index(Permutation::from_cycles(u, cycles));
    std::uint64_t count = 0;
    for_each_ksubset(u, k0, 0, u, [&](std::span<const Point> pts) {
        if (index.orbit_length_dividing(pts, rm)) ++count;
    });
    return count;
}

Verdict check_inequality(std::string_view id, const std::vector<Rational>& a) {
    auto need = [&](std::size_t k) {
        if (a.size() != k) fail(ErrorCode::InvalidArgument, std::string(id) + " takes " + std::to_string(k) + " arguments");
    };
    auto hyp = [&](bool ok, const std::string& what) {
        if (!ok) fail(ErrorCode::InvalidArgument, std::string(id) + ": hypothesis violated: " + what);
    };
    if (id == "lem:Z-a" || id == "lem:Z-a-alpha") {
        need(id == "lem:Z-a" ? 3 : 4);
        const auto d = as_u64(a[0], "d"), n = as_u64(a[1], "n"), k = as_u64(a[2], "k");
        hyp(2 <= k && k <= d && d < n, "2 <= k <= d < n");
        const Rational ratio(binomial(d, k), binomial(n, k));
        std::vector<std::pair<std::string, std::string>> args{{"d", std::to_string(d)}, {"n", std::to_string(n)}, {"k", std::to_string(k)}};
        if (id == "lem:Z-a") return make_verdict(std::string(id), args, ratio, ipow(Rational(d, n), k), "<=");
        const Rational& alpha = a[3];
        hyp(alpha < 1 && Rational(d) <= alpha * n, "d <= alpha n with alpha < 1");
        args.emplace_back("alpha", to_string(alpha));
        const Rational mid = ipow(alpha, k - 1) * Rational(d - k + 1, n - k + 1);
        auto v = make_verdict(std::string(id), args, ratio, mid, "<=");
        v.holds = v.holds && mid <= ipow(alpha, k);
        return v;
    }
    if (id == "lem:Z-b") {
        need(2);
        const auto n = as_u64(a[0], "n"), k = as_u64(a[1], "k");
        hyp(2 <= k && 3 * k <= 2 * n, "2 <= k <= 2n/3");
        const Rational lhs(binomial(n / 2, k / 2));
        const Rational rhs = 2 * Rational(binomial(n, k)) * ipow(Rational(3 * k, 4 * n), (k + 1) / 2);
        return make_verdict(std::string(id), {{"n", std::to_string(n)}, {"k", std::to_string(k)}}, lhs, rhs, "<");
    }
    if (id == "lem:ZZ") {
        need(4);
        const auto d = as_u64(a[0], "d"), k = as_u64(a[1], "k"), t = as_u64(a[2], "t");
        const Rational& al = a[3];
        hyp(d >= 1 && k >= 1 && t >= 1 && k <= d && al > 0 && Rational(t, d - k + 1) <= al, "positive d, k, t, a with k <= d and t/(d-k+1) <= a");
        BigInt lhs = 1, fall = 1;
        for (std::uint64_t i = 0; i < k; ++i) {
            lhs *= d + t - i;
            fall *= d - i;
        }
        const Rational rhs = Rational(fall) * (1 + ipow(1 + al, k) * t / (al * (d - k + 1)));
        return make_verdict(std::string(id), {{"d", std::to_string(d)}, {"k", std::to_string(k)}, {"t", std::to_string(t)}, {"a", to_string(al)}},
                            Rational(lhs), rhs, "<");
    }
    if (id == "lem:simple") {
        need(4);
        const Rational& s = a[0];
        const auto n = as_u64(a[1], "n"), r = as_u64(a[2], "r"), t = as_u64(a[3], "t");
        hyp(s > Rational(1, 2) && s < 1 && n >= 1 && r >= 1 && t >= 1, "1/2 < s < 1 and positive n, r, t");
        hyp(n > 6 && compare_scaled_power(Rational(n - 6), Rational(12), BigInt(r * n), s) >= 0, "12 (rn)^s + 6 <= n");
        const bool i = compare_scaled_power(Rational(n, 12), Rational(1), BigInt(r * n), s) > 0;  // (rn)^s < n/12
        const bool iii = compare_scaled_power(Rational(12), Rational(1), BigInt(r * n), s) < 0;   // (rn)^s > 12
        const std::uint64_t floor_n = s == Rational(2, 3) ? 1746 : 156;
        auto v = make_verdict(std::string(id), {{"s", to_string(s)}, {"n", std::to_string(n)}, {"r", std::to_string(r)}, {"t", std::to_string(t)}},
                              Rational(floor_n), Rational(n), "<=");
        v.holds = v.holds && i && iii;
        return v;
    }
    if (id == "lem:ns-a" || id == "lem:ns-b") {
        need(1);
        hyp(a[0] > 12, "x > 12");
        const Interval x = Interval::exact(a[0]);
        Interval lhs, rhs;
        if (id == "lem:ns-a") {
            lhs = x * pow(Interval::exact(Rational(1, 2)), x);
            rhs = Interval::exact(Rational(1)) / (Interval::exact(Rational(4)) * x);
        } else {
            lhs = pow(Interval::exact(Rational(11, 12)), x);
            rhs = Interval::exact(Rational(5)) / x;
        }
        return Verdict{std::string(id), {{"x", to_string(a[0])}}, real_str(lhs.mid()), real_str(rhs.mid()), "<", lhs.certainly_less(rhs)};
    }
    if (id == "lem:eps") {
        need(2);
        const Rational& eps = a[0];
        const Rational& p = a[1];
        hyp(eps > 0 && eps < 1 && p > 0 && p < 1, "0 < eps < 1 and 0 < p < 1");
        const std::uint64_t N = trial_count_certified(eps, p);
        auto v = make_verdict(std::string(id), {{"eps", to_string(eps)}, {"p", to_string(p)}, {"N", std::to_string(N)}}, ipow(1 - p, N), eps, "<=");
        v.lhs = real_str(to_real(ipow(1 - p, N)));
        return v;
    }
    fail(ErrorCode::InvalidArgument, "unknown lemma id '" + std::string(id) + "'");
}

std::vector<Verdict> suite_binom(std::uint64_t a_max, std::uint64_t c_max) {
    std::vector<Verdict> out;
    for (std::uint64_t a = 2; a <= a_max; ++a)
        for (std::uint64_t c = 2; c <= c_max; ++c)
            for (std::uint64_t l = 1; l < c; ++l) out.push_back(check_binom_lemma(a, c, l));
    return out;
}

std::vector<Verdict> suite_npk(std::uint64_t u_max) {
    std::vector<Verdict> out;
    for (std::uint64_t u = 2; u <= u_max; ++u) {
        for_each_partition(u, 2, [&](const std::vector<std::uint64_t>& parts) {
            std::string ps;
            for (auto p : parts) ps += (ps.empty() ? "" : "+") + std::to_string(p);
            for (std::uint64_t k0 = 2; k0 <= u; ++k0) {
                const BigInt c = npk_count(parts, k0);
                const auto b = npk_bounds(u, k0);
                std::vector<std::pair<std::string, std::string>> args{{"parts", ps}, {"k0", std::to_string(k0)}};
                out.push_back(make_verdict("npk:b1", args, Rational(c), Rational(b.b1), "<="));
                if (b.b2) out.push_back(make_verdict("npk:b2", args, Rational(c), Rational(*b.b2), "<="));
                out.push_back(make_verdict("npk:b3", args, Rational(c), b.b3, "<="));
            }
        });
    }
    return out;
}

std::vector<Verdict> suite_pc1(std::uint64_t t_max) {
    std::vector<Verdict> out;
    for (std::uint64_t t = 2; t <= t_max; ++t) {
        for (auto [p, e] : factorize(t)) {
            (void)e;
            for (std::uint64_t k0 = 1; k0 <= t; ++k0) {
                const BigInt formula = sigma_cycle(t, k0, p);
                const std::uint64_t counted = sigma_cycle_enumerated(t, k0, p);
                std::vector<std::pair<std::string, std::string>> args{{"t", std::to_string(t)}, {"k0", std::to_string(k0)}, {"p", std::to_string(p)}};
                out.push_back(make_verdict("pc1:formula", args, Rational(formula), Rational(counted), "=="));
                out.push_back(make_verdict("pc1:half", args, Rational(counted), Rational(binomial(t / 2, k0 / 2)), "<="));
                if (k0 < t) out.push_back(make_verdict("pc1:share", args, Rational(counted), Rational(binomial(t, k0), BigInt(t - 1)), "<="));
            }
        }
    }
    return out;
}

std::vector<Verdict> suite_corpc(std::uint64_t structures, std::uint64_t u_max, std::uint64_t seed) {
    std::vector<Verdict> out;
    for (std::uint64_t i = 0; i < structures; ++i) {
        Rng rng = stream(seed, i);
        std::uniform_int_distribution<std::uint64_t> pick_rm(2, 60);
        const std::uint64_t rm = pick_rm(rng);
        std::vector<std::uint64_t> allowed;
        for (std::uint64_t len = 2; len <= u_max; ++len)
            if (rm % len) allowed.push_back(len);
        std::vector<std::uint64_t> lengths;
        std::uint64_t u = 0;
        while (true) {
            std::vector<std::uint64_t> fit;
            for (auto len : allowed)
                if (u + len <= u_max) fit.push_back(len);
            if (fit.empty()) break;
            lengths.push_back(fit[std::uniform_int_distribution<std::size_t>(0, fit.size() - 1)(rng)]);
            u += lengths.back();
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) break;
        }
        if (lengths.empty()) continue;
        std::string ls;
        for (auto l : lengths) ls += (ls.empty() ? "" : "+") + std::to_string(l);
        for (std::uint64_t k0 = 1; k0 <= u; ++k0) {
            const std::uint64_t sigma = sigma_Sigma(lengths, rm, k0);
            std::vector<std::pair<std::string, std::string>> args{{"lengths", ls}, {"rm", std::to_string(rm)}, {"k0", std::to_string(k0)}};
            if (k0 == 1) out.push_back(make_verdict("corpc:single", args, Rational(sigma), Rational(0), "=="));
            else if (k0 == u) out.push_back(make_verdict("corpc:full", args, Rational(sigma), Rational(1), "<="));
            else out.push_back(make_verdict("corpc:share", args, Rational(sigma), Rational(binomial(u, k0), BigInt(u - 1)), "<="));
        }
    }
    return out;
}

std::vector<Verdict> suite_divisor(std::uint64_t m_max) {
    std::vector<Verdict> out;
    for (int line = 1; line <= 9; ++line) {
        for (std::size_t n = 2; n <= m_max + 6; ++n) {
            LineParams p;
            try {
                p = line_params_for_line(line, n);
            } catch (const Error&) {
                continue;
            }
            if (p.m > m_max) continue;
            const auto prof = divisor_profile(p);
            Verdict v{"lem:divisor", {{"line", std::to_string(line)}, {"n", std::to_string(n)}, {"m", std::to_string(p.m)}, {"r", std::to_string(p.r)}},
                      std::to_string(prof.violations.size()), "0", "==", prof.violations.empty()};
            out.push_back(std::move(v));
        }
    }
    return out;
}

std::vector<Verdict> suite_inequalities() {
    std::vector<Verdict> out;
    auto R = [](std::uint64_t x) { return Rational(x); };
    for (std::uint64_t d = 2; d <= 24; ++d)
        for (std::uint64_t n = d + 1; n <= 30; ++n)
            for (std::uint64_t k = 2; k <= d; ++k) {
                out.push_back(check_inequality("lem:Z-a", {R(d), R(n), R(k)}));
                out.push_back(check_inequality("lem:Z-a-alpha", {R(d), R(n), R(k), Rational(d, n)}));
            }
    for (std::uint64_t n = 3; n <= 60; ++n)
        for (std::uint64_t k = 2; 3 * k <= 2 * n; ++k) out.push_back(check_inequality("lem:Z-b", {R(n), R(k)}));
    for (std::uint64_t d = 1; d <= 15; ++d)
        for (std::uint64_t k = 1; k <= d; ++k)
            for (std::uint64_t t = 1; t <= 15; ++t)
                for (const Rational& al : {Rational(t, d - k + 1), Rational(1), Rational(2)})
                    if (Rational(t, d - k + 1) <= al) out.push_back(check_inequality("lem:ZZ", {R(d), R(k), R(t), al}));
    for (const Rational& s : {Rational(5, 8), Rational(2, 3), Rational(7, 10), Rational(17, 24), Rational(3, 4)})
        for (std::uint64_t r = 1; r <= 3; ++r)
            for (std::uint64_t n = 7; n <= 20000; n += 13)
                if (compare_scaled_power(Rational(n - 6), Rational(12), BigInt(r * n), s) >= 0)
                    for (std::uint64_t t : {1, 12, 30}) out.push_back(check_inequality("lem:simple", {s, R(n), R(r), R(t)}));
    for (std::uint64_t j = 1; j <= 400; ++j) {
        out.push_back(check_inequality("lem:ns-a", {Rational(48 + j, 4)}));
        out.push_back(check_inequality("lem:ns-b", {Rational(48 + j, 4)}));
    }
    for (const Rational& e : {Rational(1, 100), Rational(1, 20), Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(9, 10)})
        for (const Rational& p : {Rational(1, 1000), Rational(1, 100), Rational(1, 20), Rational(1, 5), Rational(1, 2), Rational(9, 10)})
            out.push_back(check_inequality("lem:eps", {e, p}));
    return out;
}

}  // namespace mcycle
