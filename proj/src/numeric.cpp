#include "mcycle/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mcycle {

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

const Real& pad_factor() {
    static const Real f("1e-45");
    return f;
}

Interval widen(Real lo, Real hi) {
    if (hi < lo) std::swap(lo, hi);
    lo -= abs(lo) * pad_factor();
    hi += abs(hi) * pad_factor();
    return {lo, hi};
}

}  // namespace

Rng stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{splitmix64(seed), splitmix64(seed ^ 0x5bd1e995ULL) ^ index, splitmix64(index)};
    return Rng(seq);
}

BigInt factorial(std::uint64_t n) {
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt ipow(const BigInt& base, std::uint64_t e) { return boost::multiprecision::pow(base, static_cast<unsigned>(e)); }

Rational ipow(const Rational& base, std::uint64_t e) {
    Rational r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Rational parse_rational(std::string_view text) {
    std::string t(text);
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
    if (t.empty()) fail(ErrorCode::Parse, "empty rational");
    auto parse_int = [&](const std::string& s) -> BigInt {
        if (s.empty() || s == "-" || s == "+") fail(ErrorCode::Parse, "malformed rational '" + t + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        for (std::size_t j = i; j < s.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(s[j]))) fail(ErrorCode::Parse, "malformed rational '" + t + "'");
        BigInt v(s.substr(i));
        return s[0] == '-' ? BigInt(-v) : v;
    };
    if (auto slash = t.find('/'); slash != std::string::npos) {
        BigInt num = parse_int(t.substr(0, slash));
        BigInt den = parse_int(t.substr(slash + 1));
        if (den == 0) fail(ErrorCode::Parse, "zero denominator in '" + t + "'");
        return Rational(num, den);
    }
    std::string mant = t;
    long long exp10 = 0;
    if (auto e = t.find_first_of("eE"); e != std::string::npos) {
        mant = t.substr(0, e);
        exp10 = static_cast<long long>(parse_int(t.substr(e + 1)));
    }
    std::string digits = mant;
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long long>(mant.size() - dot - 1);
        if (digits.empty() || digits == "-" || digits == "+") fail(ErrorCode::Parse, "malformed rational '" + t + "'");
    }
    Rational r(parse_int(digits));
    if (exp10 > 0) r *= ipow(BigInt(10), static_cast<std::uint64_t>(exp10));
    if (exp10 < 0) r /= ipow(BigInt(10), static_cast<std::uint64_t>(-exp10));
    return r;
}

std::string to_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Real& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

Real to_real(const Rational& x) { return Real(numerator(x)) / Real(denominator(x)); }
Real to_real(const BigInt& x) { return Real(x); }
double to_double(const Rational& x) { return static_cast<double>(to_real(x)); }

int compare_scaled_power(const Rational& lhs, const Rational& coeff, const BigInt& base, const Rational& s) {
    if (lhs < 0 || coeff < 0 || base < 1 || s <= 0) fail(ErrorCode::InvalidArgument, "compare_scaled_power: domain");
    const auto p = static_cast<std::uint64_t>(numerator(s));
    const auto q = static_cast<std::uint64_t>(denominator(s));
    Rational l = ipow(lhs, q);
    Rational r = ipow(coeff, q) * Rational(ipow(base, p));
    return l < r ? -1 : (l > r ? 1 : 0);
}

Real pow_real(const Real& base, const Rational& s) { return pow(base, to_real(s)); }

Interval Interval::point(const Real& x) { return {x, x}; }

Interval Interval::exact(const Rational& x) {
    Real v = to_real(x);
    if (denominator(x) == 1) return {v, v};
    return widen(v, v);
}

Interval operator+(const Interval& a, const Interval& b) { return widen(a.lo + b.lo, a.hi + b.hi); }
Interval operator-(const Interval& a, const Interval& b) { return widen(a.lo - b.hi, a.hi - b.lo); }

Interval operator*(const Interval& a, const Interval& b) {
    Real c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return widen(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= 0 && b.hi >= 0) fail(ErrorCode::InvalidArgument, "interval division by an interval containing 0");
    Real c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return widen(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
}

Interval log(const Interval& a) {
    if (a.lo <= 0) fail(ErrorCode::InvalidArgument, "interval log of non-positive value");
    return widen(log(a.lo), log(a.hi));
}

Interval exp(const Interval& a) { return widen(exp(a.lo), exp(a.hi)); }

Interval pow(const Interval& base, const Interval& e) { return exp(e * log(base)); }

}  // namespace mcycle
