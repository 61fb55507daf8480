#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcycle/bounds.hpp"
#include "mcycle/families.hpp"
#include "mcycle/kernels.hpp"
#include "mcycle/numeric.hpp"
#include "mcycle/perm.hpp"

namespace mcycle {

enum class Mode { Conditional, FindMCycle, FamilyCensus, ExactOracle };
enum class StreamKind { Uniform, NGood };
enum class Engine { Exact, Trace };

std::string to_string(Mode m);
std::string to_string(StreamKind s);
std::string to_string(Engine e);
Mode parse_mode(std::string_view text);
StreamKind parse_stream(std::string_view text);
Engine parse_engine(std::string_view text);

struct ExperimentConfig {
    LineParams line;
    std::size_t k = 2;
    unsigned M = 4;
    Rational s{17, 24}, delta{1, 6};
    Rational eps{1, 5};
    // Constants feeding the bound columns.
    Real c_delta{"138.32"}, a_delta{"6.25"};
    Mode mode = Mode::Conditional;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::uint64_t budget = 100'000'000;
    StreamKind stream = StreamKind::Uniform;
    Engine engine = Engine::Exact;
    bool trivial_group = false;
};

// Throws InvalidArgument on 2 <= k <= n/2, trials >= 1, M >= 1 (M >= 4 for
// find-mcycle) and 1/2 < s < 1 violations.
void validate(const ExperimentConfig& c);

inline constexpr double kWilsonZ = 1.959963984540054;

struct Proportion {
    std::uint64_t successes = 0, trials = 0;
    double estimate = 0, lo = 0, hi = 1;
    double half_width() const { return (hi - lo) / 2; }
};

Proportion wilson(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ);

struct ContingencyCounts {
    std::uint64_t trials = 0;
    std::array<std::array<std::uint64_t, 2>, 7> by_label{};  // [label][accepted]
    std::uint64_t ngood = 0, ngood_accepted = 0;
    std::uint64_t images = 0;

    void merge(const ContingencyCounts& o);
    std::uint64_t label_total(FamilyLabel f) const;
    std::uint64_t accepted() const;
    friend bool operator==(const ContingencyCounts&, const ContingencyCounts&) = default;
};

struct FindCounts {
    std::uint64_t runs = 0, good = 0, bad = 0, ugly = 0, elements = 0;
    void merge(const FindCounts& o);
    friend bool operator==(const FindCounts&, const FindCounts&) = default;
};

struct Estimate {
    std::string name;
    Proportion value;
    std::optional<double> bound;
    bool bound_asserted = false;
    bool bound_is_floor = false;
};

struct SummaryStats {
    ExperimentConfig config;
    ContingencyCounts counts;
    FindCounts find;
    std::vector<Estimate> estimates;

    const Estimate& estimate(std::string_view name) const;
};

// Uniform element of N_good built directly: a random m-cycle on a random
// m-subset, times a random admissible permutation of the rest.
Permutation random_ngood(const LineParams& p, Rng& rng);

SummaryStats run_conditional(const ExperimentConfig& c, kernels::Execution ex = kernels::Execution::Parallel);
SummaryStats run_findmcycle(const ExperimentConfig& c, kernels::Execution ex = kernels::Execution::Parallel);
SummaryStats run_census(const ExperimentConfig& c, kernels::Execution ex = kernels::Execution::Parallel);
// Dispatches on c.mode (ExactOracle is not a sampling mode).
SummaryStats run_experiment(const ExperimentConfig& c, kernels::Execution ex = kernels::Execution::Parallel);

enum class OracleRoute { Elements, Classes };

// Exact probabilities for a uniform g in G, with accept meaning TraceCycle
// accepts on M independent uniform k-subsets. Joint quantities are indexed by
// FamilyLabel.
struct ExactConditional {
    LineParams line;
    std::size_t k = 0;
    unsigned M = 0;
    BigInt group_order;
    Rational prob_ngood, rho_true;  // rho_true = m * prob_ngood
    Rational accept, p, p1, p2, q, accept_given_ngood, n_given_accept;
    std::array<Rational, 7> prob_label{}, accept_and_label{};

    Rational q_of(FamilyLabel f) const { return accept_and_label[static_cast<int>(f)]; }
};

// Elements: walks G (n <= 10) and counts per element. Classes: walks cycle
// types with their class sizes. Both refuse when the work exceeds budget.
ExactConditional exact_conditional(const LineParams& p, std::size_t k, unsigned M, const Rational& s, OracleRoute route = OracleRoute::Classes,
                                   std::uint64_t budget = 100'000'000, kernels::Execution ex = kernels::Execution::Parallel);

struct SmallVProportions {
    Rational P, P0, P1plus, P1plus_recursion;
};

// Proportions of S_v (v <= 12) of order dividing rm: all, those with only
// s-small cycles (length < rn^s), and those with exactly one s-large cycle of
// length d, rn^s <= d < v - 3 rn^s. P1plus_recursion rebuilds P1plus from P0.
SmallVProportions small_v_proportions(std::uint64_t v, std::uint64_t rm, std::uint64_t rn, const Rational& s);
// Same by walking S_v element by element (v <= 10).
SmallVProportions small_v_proportions_enumerated(std::uint64_t v, std::uint64_t rm, std::uint64_t rn, const Rational& s);

}  // namespace mcycle
