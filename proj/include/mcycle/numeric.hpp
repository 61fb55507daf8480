#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace mcycle {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_bin_float_50;

enum class ErrorCode { InvalidArgument, DegreeMismatch, BudgetExceeded, TooLarge, Parse };

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

using Rng = std::mt19937_64;

// Independent stream for (seed, index). Trials draw from stream(seed, trial) so
// results do not depend on how trials are spread over threads.
Rng stream(std::uint64_t seed, std::uint64_t index);

BigInt factorial(std::uint64_t n);
BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt ipow(const BigInt& base, std::uint64_t e);
Rational ipow(const Rational& base, std::uint64_t e);

// Accepts "p/q", integers and finite decimals ("0.7").
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
std::string to_string(const BigInt& x);
std::string to_string(const Real& x, int digits = 12);

Real to_real(const Rational& x);
Real to_real(const BigInt& x);
double to_double(const Rational& x);

// Sign of lhs - coeff * base^s for lhs >= 0, coeff >= 0, base >= 1 and rational s > 0,
// decided exactly by raising both sides to the denominator of s.
int compare_scaled_power(const Rational& lhs, const Rational& coeff, const BigInt& base, const Rational& s);

// base^s in 50-digit arithmetic.
Real pow_real(const Real& base, const Rational& s);

// Outward-padded enclosure for quantities with transcendental parts. Each
// operation is evaluated at 50 digits and widened by a relative margin far
// above the working precision's rounding error.
struct Interval {
    Real lo, hi;

    static Interval point(const Real& x);
    static Interval exact(const Rational& x);
    bool certainly_less(const Interval& o) const { return hi < o.lo; }
    bool certainly_le(const Interval& o) const { return hi <= o.lo; }
    Real mid() const { return (lo + hi) / 2; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval log(const Interval& a);
Interval exp(const Interval& a);
Interval pow(const Interval& base, const Interval& e);  // base > 0

}  // namespace mcycle
