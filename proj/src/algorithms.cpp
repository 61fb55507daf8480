#include "mcycle/algorithms.hpp"

#include <cmath>

namespace mcycle {

std::uint64_t find_trials(std::size_t n, double eps, bool natural_log) {
    if (!(eps > 0 && eps < 1)) fail(ErrorCode::InvalidArgument, "eps must lie in (0,1)");
    const Real l = natural_log ? log(Real(2) / Real(eps)) : log(Real(2) / Real(eps)) / log(Real(2));
    return static_cast<std::uint64_t>(ceil(Real(5) * Real(n) * l));
}

KSetTestbed::KSetTestbed(const LineParams& p, std::size_t k, bool trivial_group) : params_(p), k_(k), trivial_(trivial_group) {
    if (k < 2 || 2 * k > p.n) fail(ErrorCode::InvalidArgument, "testbed needs 2 <= k <= n/2 (k = " + std::to_string(k) + ", n = " + std::to_string(p.n) + ")");
}

Permutation KSetTestbed::random_element(Rng& rng) const {
    if (trivial_) return Permutation::identity(params_.n);
    return mcycle::random_element(params_.group, params_.n, rng);
}

KSetTestbed make_testbed_oracle(const LineParams& p, std::size_t k, bool trivial_group) { return KSetTestbed(p, k, trivial_group); }

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Good: return "good";
        case Outcome::Bad: return "bad";
        case Outcome::UglyStep: return "ugly-step";
    }
    return "?";
}

void write_transcript(std::ostream& os, const std::vector<TrialRecord>& transcript, bool accepted_good) {
    os << "trial_index,outcome,orbit_lengths\n";
    for (const auto& rec : transcript) {
        const Outcome o = !rec.accepted ? Outcome::UglyStep : accepted_good ? Outcome::Good : Outcome::Bad;
        os << rec.index << ',' << to_string(o) << ',';
        for (std::size_t i = 0; i < rec.lengths.size(); ++i) {
            if (i) os << ' ';
            if (rec.lengths[i]) os << *rec.lengths[i];
            else os << ">cap";
        }
        os << '\n';
    }
}

}  // namespace mcycle
