#include "mcycle/bounds.hpp"

#include <algorithm>

#include "mcycle/numtheory.hpp"

namespace mcycle {

Rational ell_of(unsigned M, const Rational& s, const Rational& delta) {
    return std::min<Rational>({Rational(M) * (1 - s), 3 - 2 * s - 2 * delta, 1 + s - 3 * delta, 2 * s - 2 * delta});
}

ParamCheck validate_params(unsigned M, const Rational& s, const Rational& delta) {
    ParamCheck pc;
    if (M < 4) pc.violations.push_back("M = " + std::to_string(M) + " < 4");
    if (s <= Rational(1, 2)) pc.violations.push_back("s = " + to_string(s) + " <= 1/2");
    if (M >= 1 && s >= Rational(M - 1, M)) pc.violations.push_back("s = " + to_string(s) + " >= (M-1)/M");
    if (delta <= 0) pc.violations.push_back("delta <= 0");
    const Rational cap = std::min<Rational>({1 - s, s / 3, s - Rational(1, 2)});
    if (delta >= cap) pc.violations.push_back("delta = " + to_string(delta) + " >= min(1-s, s/3, s-1/2) = " + to_string(cap));
    pc.ell = ell_of(M, s, delta);
    if (pc.ell <= 1) pc.violations.push_back("ell = " + to_string(pc.ell) + " <= 1");
    pc.ok = pc.violations.empty();
    return pc;
}

bool M_within_upper(unsigned M, std::uint64_t n) {
    if (n < 2) return false;
    const Interval rhs = log(Interval::exact(Rational(9, 8))) * Interval::exact(Rational(n - 2, 2));
    return Interval::exact(Rational(M)).certainly_le(rhs);
}

CDeltaSearch c_delta_search(const Rational& delta, std::uint64_t x_limit) {
    if (delta <= 0 || delta > 1) fail(ErrorCode::InvalidArgument, "c_delta_search: delta must lie in (0,1]");
    if (x_limit < 1 || x_limit > 1'000'000'000ULL) fail(ErrorCode::InvalidArgument, "c_delta_search: x_limit must lie in [1, 1e9]");
    const auto primes = primes_up_to(100);
    const Real d = to_real(delta);
    CDeltaSearch best{Real(1), 1, 0};
    // x = prod p_i^e_i with e_1 >= e_2 >= ...; divisor count carried along.
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t x, std::uint64_t dx, unsigned max_e) -> void {
        ++best.candidates;
        const Real ratio = Real(dx) / pow(Real(x), d);
        if (ratio > best.value) {
            best.value = ratio;
            best.argmax = x;
        }
        if (i >= primes.size()) return;
        std::uint64_t y = x;
        for (unsigned e = 1; e <= max_e; ++e) {
            if (y > x_limit / primes[i]) break;
            y *= primes[i];
            self(self, i + 1, y, dx * (e + 1), e);
        }
    };
    rec(rec, 0, 1, 1, 64);
    best.value *= 1 - Real("1e-40");
    return best;
}

ADelta a_delta_eval(const Real& c_delta, const Rational& s, const Rational& delta, ADeltaVariant variant, std::uint64_t rm) {
    if (s <= delta) fail(ErrorCode::InvalidArgument, "a_delta_eval: needs s > delta");
    ADelta out;
    if (variant == ADeltaVariant::Table) {
        out.value = Real(25) / 4;
        out.condition = Real(rm) >= pow(c_delta, 1 / to_real(s - delta));
        return out;
    }
    const std::uint64_t base = variant == ADeltaVariant::At150 ? 150 : rm;
    const Real q = pow_real(Real(base), s - delta);
    const Real cq = c_delta / q;
    out.value = Real(5) / 4 * (1 + 3 * cq + cq * cq);
    return out;
}

Real b_M_eval(unsigned M, const Rational& s, const Rational& delta, std::uint64_t r, const Real& c, const Real& a) {
    const Real rr(r);
    return pow(Real(33) / 8, M) + 72 * a * c * c * pow_real(rr, 2 * s + 2 * delta) + Real("6.24") * a * c * c * c * pow_real(rr, 3 * delta) +
           c * c / pow_real(rr, 2 * s - 2 * delta) + pow(Real(31) / pow_real(rr, 1 - s), M);
}

BoundParams make_bound_params(unsigned M, const Rational& s, const Rational& delta, std::uint64_t r, const Real& c_delta, const Real& a_delta,
                              const Real& eps) {
    auto pc = validate_params(M, s, delta);
    if (!pc.ok) {
        std::string msg = "parameters rejected:";
        for (auto& v : pc.violations) msg += " " + v + ";";
        fail(ErrorCode::InvalidArgument, msg);
    }
    if (!(eps > 0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
    BoundParams bp;
    bp.M = M;
    bp.s = s;
    bp.delta = delta;
    bp.r = r;
    bp.c_delta = c_delta;
    bp.a_delta = a_delta;
    bp.eps = eps;
    bp.ell = pc.ell;
    bp.b_M = b_M_eval(M, s, delta, r, c_delta, a_delta);
    return bp;
}

namespace {

bool first_constraint(const Rational& s, std::uint64_t r, const BigInt& n) {
    if (n <= 6) return false;
    // 12 (rn)^s <= n - 6
    return compare_scaled_power(Rational(n - 6), Rational(12), BigInt(r * n), s) >= 0;
}

bool second_constraint(const Rational& s, std::uint64_t r, const BigInt& n) {
    if (n <= 1) return true;
    // s log(rn) + log log n <= log n
    const Interval ln_n = log(Interval::exact(Rational(n)));
    const Interval lhs = Interval::exact(s) * log(Interval::exact(Rational(BigInt(r) * n))) + log(ln_n);
    return lhs.certainly_le(ln_n);
}

bool third_constraint(const BoundParams& bp, const BigInt& n) {
    // (ell-1) log n >= log(10 b_M / eps)
    const Interval lhs = Interval::exact(bp.ell - 1) * log(Interval::exact(Rational(n)));
    const Interval rhs = log(Interval::point(10 * bp.b_M / bp.eps));
    return rhs.certainly_le(lhs);
}

// Smallest n >= lo with pred(n), given pred monotone on [lo, inf).
template <class Pred>
BigInt first_true(BigInt lo, Pred pred) {
    if (pred(lo)) return lo;
    BigInt step = 1;
    BigInt hi = lo + step;
    while (!pred(hi)) {
        lo = hi;
        step *= 2;
        hi = lo + step;
    }
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (pred(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

Real log10_of(const BigInt& n) { return log10(Real(n)); }

}  // namespace

ConstraintFlags n_constraints(const BoundParams& bp, const BigInt& n) {
    ConstraintFlags f;
    f.first = first_constraint(bp.s, bp.r, n);
    f.second = second_constraint(bp.s, bp.r, n);
    f.third = third_constraint(bp, n);
    return f;
}

NThreshold n_threshold(const BoundParams& bp) {
    NThreshold t;
    // n - 12 (rn)^s - 6 is increasing in n once it turns positive.
    const BigInt n1 = first_true(BigInt(7), [&](const BigInt& n) { return first_constraint(bp.s, bp.r, n); });
    // n^(1-s) / log n increases beyond e^(1/(1-s)).
    const BigInt start = BigInt(static_cast<std::uint64_t>(ceil(exp(1 / to_real(1 - bp.s))))) + 1;
    const BigInt n2 = second_constraint(bp.s, bp.r, start) ? BigInt(1) : first_true(start, [&](const BigInt& n) { return second_constraint(bp.s, bp.r, n); });
    t.log10_parts[0] = log10_of(n1);
    t.log10_parts[1] = log10_of(n2);
    t.log10_parts[2] = log10(10 * bp.b_M / bp.eps) / to_real(bp.ell - 1);
    t.binding = 0;
    for (int i = 1; i < 3; ++i)
        if (t.log10_parts[i] > t.log10_parts[t.binding]) t.binding = i;
    t.log10_n = t.log10_parts[t.binding];
    return t;
}

FamilyBoundReport family_bounds(std::size_t n, std::size_t k, const BoundParams& bp, const LineParams& line) {
    FamilyBoundReport rep;
    const Real rn = Real(line.r) * Real(n);
    const Real nn(n);
    const Real d = Real(d_count(line.rm()));
    const Rational& s = bp.s;
    rep.R = pow(Real(33) / (8 * pow_real(nn, 1 - s)), bp.M);
    rep.S0 = 72 * bp.a_delta * d * d * pow_real(Real(line.r), 2 * s) / pow_real(nn, 3 - 2 * s);
    rep.S1plus = Real("6.24") * bp.a_delta * d * d * d / pow_real(nn, 1 + s);
    rep.Sge2 = d * d / pow_real(rn, 2 * s);
    rep.S1minus_per_element = Real(31) / pow_real(rn, 1 - s);
    rep.S1minus = pow(rep.S1minus_per_element, bp.M);
    rep.success_floor = pow((nn - 2) / nn, bp.M);
    rep.mcyc_ceiling = sqrt(Real(8 * k)) * pow(Real(3 * k) / (4 * Real(line.m)), (k + 1) / 2);
    BoundParams local = bp;
    local.r = line.r;
    rep.flags = n_constraints(local, BigInt(n));
    rep.M_upper = M_within_upper(bp.M, n);
    return rep;
}

std::uint64_t trial_count(double eps, double p) {
    if (!(eps > 0 && eps < 1) || !(p > 0 && p < 1)) fail(ErrorCode::InvalidArgument, "trial_count: need 0 < eps < 1 and 0 < p < 1");
    return static_cast<std::uint64_t>(ceil(log(1 / Real(eps)) / Real(p)));
}

std::uint64_t trial_count_certified(const Rational& eps, const Rational& p) {
    if (!(eps > 0 && eps < 1) || !(p > 0 && p < 1)) fail(ErrorCode::InvalidArgument, "trial_count: need 0 < eps < 1 and 0 < p < 1");
    const Interval v = log(Interval::exact(1 / eps)) / Interval::exact(p);
    return static_cast<std::uint64_t>(ceil(v.hi));
}

}  // namespace mcycle
