#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcycle/kernels.hpp"
#include "mcycle/numeric.hpp"
#include "mcycle/numtheory.hpp"
#include "mcycle/perm.hpp"

namespace mcycle {

enum class Goal { LongCycle, Transposition, ThreeCycle };
enum class TargetKind { NCycle, NMinus1Cycle, TwoCycle, ThreeCycle };

std::string to_string(Goal g);
Goal parse_goal(std::string_view text);
std::string to_string(TargetKind t);

// One row of the table of (G, n, m, r, rho, target) lines. rho is the
// tabulated value; rho_oracle computes the true one.
struct LineParams {
    int line = 0;
    GroupKind group = GroupKind::Sym;
    std::size_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t r = 1;
    Rational rho;
    TargetKind target = TargetKind::NCycle;

    std::uint64_t rm() const { return r * m; }
    friend bool operator==(const LineParams&, const LineParams&) = default;
};

// The row selected by (G, n, goal). Valid whenever 2m > n and m >= 2, which
// makes the m-cycle of an element unique.
LineParams line_params(GroupKind g, std::size_t n, Goal goal);
// Row by number; n must satisfy the row's congruence condition.
LineParams line_params_for_line(int line, std::size_t n);
// "sym:n=12:goal=long-cycle" or "line=3:n=8".
LineParams parse_line_selector(std::string_view text);
std::string to_selector(const LineParams& p);

// The r0 with len = r0*m and r0 | r, if any.
std::optional<std::uint64_t> matched_r0(const LineParams& p, std::uint64_t len);
inline bool is_target_length(const LineParams& p, std::uint64_t len) { return matched_r0(p, len).has_value(); }

struct DeltaSigma {
    std::vector<Point> delta, sigma;
    std::size_t v = 0, u = 0;
};

DeltaSigma delta_sigma(const Permutation& g, const LineParams& p);
bool in_N(const Permutation& g, const LineParams& p);
bool in_Ngood(const Permutation& g, const LineParams& p);

enum class FamilyLabel { N, R, S0, S1Plus, S1Minus, Sge2, Other };
inline constexpr FamilyLabel kAllLabels[] = {FamilyLabel::N,       FamilyLabel::R,    FamilyLabel::S0,   FamilyLabel::S1Plus,
                                             FamilyLabel::S1Minus, FamilyLabel::Sge2, FamilyLabel::Other};
inline constexpr FamilyLabel kFLabels[] = {FamilyLabel::R, FamilyLabel::S0, FamilyLabel::S1Plus, FamilyLabel::S1Minus, FamilyLabel::Sge2};
std::string to_string(FamilyLabel f);
FamilyLabel parse_family(std::string_view text);
inline bool in_F(FamilyLabel f) { return f != FamilyLabel::N && f != FamilyLabel::Other; }

// s must lie strictly between 1/2 and 1.
FamilyLabel classify(const Permutation& g, const LineParams& p, const Rational& s);
// Same decision tree from a cycle type (non-increasing lengths) and membership in N.
FamilyLabel classify_cycle_type(const std::vector<std::size_t>& type, bool has_m_cycle, const LineParams& p, const Rational& s);

// classify with the (rn)^s thresholds resolved once to exact integer cut-offs;
// used in hot loops.
class Classifier {
public:
    Classifier(const LineParams& p, const Rational& s);
    FamilyLabel operator()(const std::vector<std::size_t>& type, bool has_m_cycle) const;
    FamilyLabel operator()(const Permutation& g) const;

    std::uint64_t large_min() const { return large_min_; }

private:
    LineParams params_;
    std::uint64_t large_min_ = 0, r_max_ = 0, s1_max_ = 0;
};

struct DivisorProfile {
    std::uint64_t m = 0;
    std::vector<std::uint64_t> large, small;
    std::vector<std::string> violations;
};

DivisorProfile divisor_profile(const LineParams& p);

std::uint64_t count_ngood(const LineParams& p, kernels::Execution ex = kernels::Execution::Parallel);
// m * |N_good| / |G| by full enumeration (n <= 10).
Rational rho_oracle(const LineParams& p, kernels::Execution ex = kernels::Execution::Parallel);

enum class TargetExtraction { Identity, TwoCycle, ThreeCycle, Other };
std::string to_string(TargetExtraction t);

struct ExtractedTarget {
    Permutation x;
    TargetExtraction kind;
};

ExtractedTarget extract_target(const Permutation& g, const LineParams& p);

}  // namespace mcycle
