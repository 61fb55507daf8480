#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcycle/families.hpp"
#include "mcycle/numeric.hpp"

namespace mcycle {

struct ParamCheck {
    bool ok = false;
    Rational ell;
    std::vector<std::string> violations;
};

// M >= 4, 1/2 < s < (M-1)/M, 0 < delta < min(1-s, s/3, s-1/2),
// ell = min(M(1-s), 3-2s-2delta, 1+s-3delta, 2s-2delta) > 1.
ParamCheck validate_params(unsigned M, const Rational& s, const Rational& delta);
Rational ell_of(unsigned M, const Rational& s, const Rational& delta);

// M <= log(9/8)(n-2)/2, certified.
bool M_within_upper(unsigned M, std::uint64_t n);

struct CDeltaSearch {
    Real value;  // certified lower bound on sup d(x)/x^delta
    std::uint64_t argmax = 1;
    std::uint64_t candidates = 0;
};

// Max of d(x)/x^delta over x <= x_limit, searched over products of the first
// primes with non-increasing exponents (every other x is beaten by one of these).
CDeltaSearch c_delta_search(const Rational& delta, std::uint64_t x_limit);

enum class ADeltaVariant { At150, Table, CustomRm };

struct ADelta {
    Real value;
    std::optional<bool> condition;  // Table variant: rm >= c^(1/(s-delta))
};

ADelta a_delta_eval(const Real& c_delta, const Rational& s, const Rational& delta, ADeltaVariant variant, std::uint64_t rm = 150);

Real b_M_eval(unsigned M, const Rational& s, const Rational& delta, std::uint64_t r, const Real& c_delta, const Real& a_delta);

struct BoundParams {
    unsigned M = 4;
    Rational s{5, 8}, delta{1, 24};
    Real c_delta, a_delta;
    Rational ell;
    Real b_M;
    Real eps{1};
    std::uint64_t r = 1;
};

// Validates (M, s, delta) and fills ell and b_M.
BoundParams make_bound_params(unsigned M, const Rational& s, const Rational& delta, std::uint64_t r, const Real& c_delta, const Real& a_delta,
                              const Real& eps);

struct ConstraintFlags {
    bool first = false;   // 12 (rn)^s + 6 <= n
    bool second = false;  // (rn)^s log n <= n
    bool third = false;   // n >= (10 b_M / eps)^(1/(ell-1))
    bool all() const { return first && second && third; }
};

ConstraintFlags n_constraints(const BoundParams& bp, const BigInt& n);
inline bool n_satisfies(const BoundParams& bp, const BigInt& n) { return n_constraints(bp, n).all(); }

struct NThreshold {
    Real log10_n;          // binding magnitude
    Real log10_parts[3];   // per constraint
    int binding = 0;       // 0, 1, 2
};

NThreshold n_threshold(const BoundParams& bp);

struct FamilyBoundReport {
    Real R;                    // Prob(accept | R)
    Real S0;                   // Prob(S0 and accept)
    Real S1plus;               // Prob(S1plus and accept)
    Real Sge2;                 // Prob(Sge2)
    Real S1minus;              // Prob(accept | S1minus)
    Real S1minus_per_element;  // per-element proportion of accepted k-subsets
    Real success_floor;        // Prob(accept | N_good) >= this
    Real mcyc_ceiling;         // per-element bad proportion on N_good
    ConstraintFlags flags;
    bool M_upper = false;

    // Hypotheses each bound relies on, evaluated at this n.
    bool asserted_R() const { return flags.first; }
    bool asserted_S0() const { return flags.first && flags.second; }
    bool asserted_S1plus() const { return flags.first && flags.second; }
    bool asserted_Sge2() const { return true; }
    bool asserted_S1minus() const { return flags.first; }
    bool asserted_mcyc() const { return flags.first; }
};

FamilyBoundReport family_bounds(std::size_t n, std::size_t k, const BoundParams& bp, const LineParams& line);

// ceil(ln(1/eps)/p).
std::uint64_t trial_count(double eps, double p);
// Same for exact inputs; rounds up whenever the enclosure straddles an integer.
std::uint64_t trial_count_certified(const Rational& eps, const Rational& p);

}  // namespace mcycle
