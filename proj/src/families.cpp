#include "mcycle/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace mcycle {

std::string to_string(Goal g) {
    switch (g) {
        case Goal::LongCycle: return "long-cycle";
        case Goal::Transposition: return "transposition";
        case Goal::ThreeCycle: return "three-cycle";
    }
    return "?";
}

Goal parse_goal(std::string_view text) {
    if (text == "long-cycle" || text == "long") return Goal::LongCycle;
    if (text == "transposition" || text == "2-cycle") return Goal::Transposition;
    if (text == "three-cycle" || text == "3-cycle") return Goal::ThreeCycle;
    fail(ErrorCode::Parse, "unknown goal '" + std::string(text) + "' (long-cycle, transposition, three-cycle)");
}

std::string to_string(TargetKind t) {
    switch (t) {
        case TargetKind::NCycle: return "n-cycle";
        case TargetKind::NMinus1Cycle: return "(n-1)-cycle";
        case TargetKind::TwoCycle: return "2-cycle";
        case TargetKind::ThreeCycle: return "3-cycle";
    }
    return "?";
}

namespace {

struct Row {
    GroupKind group;
    std::uint64_t deficit;  // m = n - deficit
    std::uint64_t r;
    long rho_num, rho_den;
    TargetKind target;
};

const Row kRows[9] = {
    {GroupKind::Sym, 0, 1, 1, 1, TargetKind::NCycle},     {GroupKind::Sym, 2, 2, 1, 1, TargetKind::TwoCycle},
    {GroupKind::Sym, 3, 2, 2, 3, TargetKind::TwoCycle},   {GroupKind::Alt, 0, 1, 1, 1, TargetKind::NCycle},
    {GroupKind::Alt, 1, 1, 1, 1, TargetKind::NMinus1Cycle}, {GroupKind::Alt, 3, 3, 1, 1, TargetKind::ThreeCycle},
    {GroupKind::Alt, 4, 3, 3, 4, TargetKind::ThreeCycle}, {GroupKind::Alt, 5, 3, 7, 20, TargetKind::ThreeCycle},
    {GroupKind::Alt, 6, 3, 9, 40, TargetKind::ThreeCycle},
};

bool row_condition(int line, std::size_t n) {
    switch (line) {
        case 1: return true;
        case 2: return n % 2 == 1;
        case 3: return n % 2 == 0;
        case 4: return n % 2 == 1;
        case 5: return n % 2 == 0;
        case 6: return n % 6 == 2 || n % 6 == 4;
        case 7: return n % 6 == 3 || n % 6 == 5;
        case 8: return n % 6 == 0;
        case 9: return n % 6 == 1;
    }
    return false;
}

}  // namespace

LineParams line_params_for_line(int line, std::size_t n) {
    if (line < 1 || line > 9) fail(ErrorCode::InvalidArgument, "line must be 1..9");
    if (!row_condition(line, n)) fail(ErrorCode::InvalidArgument, "n = " + std::to_string(n) + " does not satisfy the condition of line " + std::to_string(line));
    const Row& row = kRows[line - 1];
    if (n <= row.deficit + 1) fail(ErrorCode::InvalidArgument, "line " + std::to_string(line) + " needs m >= 2; n = " + std::to_string(n) + " is too small");
    LineParams p;
    p.line = line;
    p.group = row.group;
    p.n = n;
    p.m = n - row.deficit;
    p.r = row.r;
    p.rho = Rational(row.rho_num, row.rho_den);
    p.target = row.target;
    if (2 * p.m <= n)
        fail(ErrorCode::InvalidArgument, "line " + std::to_string(line) + " at n = " + std::to_string(n) + " has m = " + std::to_string(p.m) + " <= n/2; the m-cycle is not unique");
    if (p.r == 3 && gcd_u64(p.m, 6) != 1) fail(ErrorCode::InvalidArgument, "gcd(m, 6) != 1 on a three-cycle line");
    return p;
}

LineParams line_params(GroupKind g, std::size_t n, Goal goal) {
    int line = 0;
    if (g == GroupKind::Sym) {
        if (goal == Goal::LongCycle) line = 1;
        else if (goal == Goal::Transposition) line = n % 2 ? 2 : 3;
        else fail(ErrorCode::InvalidArgument, "goal three-cycle requires Alt");
    } else {
        if (goal == Goal::LongCycle) line = n % 2 ? 4 : 5;
        else if (goal == Goal::ThreeCycle) line = (n % 6 == 2 || n % 6 == 4) ? 6 : (n % 6 == 3 || n % 6 == 5) ? 7 : n % 6 == 0 ? 8 : 9;
        else fail(ErrorCode::InvalidArgument, "goal transposition requires Sym");
    }
    return line_params_for_line(line, n);
}

LineParams parse_line_selector(std::string_view text) {
    std::optional<GroupKind> group;
    std::optional<std::size_t> n;
    std::optional<Goal> goal;
    std::optional<int> line;
    std::string s(text);
    std::stringstream ss(s);
    std::string tok;
    auto to_int = [&](const std::string& v) -> long {
        if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); }))
            fail(ErrorCode::Parse, "expected a number in line selector '" + s + "'");
        return std::stol(v);
    };
    while (std::getline(ss, tok, ':')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
            group = parse_group(tok);
            continue;
        }
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "n") n = static_cast<std::size_t>(to_int(val));
        else if (key == "goal") goal = parse_goal(val);
        else if (key == "line") line = static_cast<int>(to_int(val));
        else if (key == "group") group = parse_group(val);
        else fail(ErrorCode::Parse, "unknown key '" + key + "' in line selector '" + s + "'");
    }
    if (!n) fail(ErrorCode::Parse, "line selector '" + s + "' lacks n=");
    if (line) {
        auto p = line_params_for_line(*line, *n);
        if (group && *group != p.group) fail(ErrorCode::InvalidArgument, "line " + std::to_string(*line) + " is not a " + to_string(*group) + " line");
        return p;
    }
    if (!group || !goal) fail(ErrorCode::Parse, "line selector '" + s + "' needs group and goal, or line");
    return line_params(*group, *n, *goal);
}

std::string to_selector(const LineParams& p) { return "line=" + std::to_string(p.line) + ":n=" + std::to_string(p.n); }

std::optional<std::uint64_t> matched_r0(const LineParams& p, std::uint64_t len) {
    if (len == 0 || len % p.m) return std::nullopt;
    const std::uint64_t r0 = len / p.m;
    if (p.r % r0) return std::nullopt;
    return r0;
}

DeltaSigma delta_sigma(const Permutation& g, const LineParams& p) {
    if (g.degree() != p.n) fail(ErrorCode::DegreeMismatch, "delta_sigma: degree " + std::to_string(g.degree()) + " vs line n = " + std::to_string(p.n));
    DeltaSigma ds;
    for (const auto& c : cycle_decomposition(g)) {
        auto& side = (p.rm() % c.size() == 0) ? ds.delta : ds.sigma;
        side.insert(side.end(), c.begin(), c.end());
    }
    std::sort(ds.delta.begin(), ds.delta.end());
    std::sort(ds.sigma.begin(), ds.sigma.end());
    ds.v = ds.delta.size();
    ds.u = ds.sigma.size();
    return ds;
}

namespace {

bool has_length(const std::vector<std::size_t>& type, std::uint64_t m) { return std::find(type.begin(), type.end(), m) != type.end(); }

void check_degree(const Permutation& g, const LineParams& p) {
    if (g.degree() != p.n) fail(ErrorCode::DegreeMismatch, "permutation has degree " + std::to_string(g.degree()) + " but the line has n = " + std::to_string(p.n));
}

}  // namespace

bool in_N(const Permutation& g, const LineParams& p) {
    check_degree(g, p);
    return has_length(cycle_type(g), p.m) && in_group(g, p.group);
}

bool in_Ngood(const Permutation& g, const LineParams& p) {
    check_degree(g, p);
    const auto type = cycle_type(g);
    if (!has_length(type, p.m) || !in_group(g, p.group)) return false;
    for (auto len : type)
        if (p.rm() % len) return false;
    return true;
}

std::string to_string(FamilyLabel f) {
    switch (f) {
        case FamilyLabel::N: return "N";
        case FamilyLabel::R: return "R";
        case FamilyLabel::S0: return "S0";
        case FamilyLabel::S1Plus: return "S1plus";
        case FamilyLabel::S1Minus: return "S1minus";
        case FamilyLabel::Sge2: return "Sge2";
        case FamilyLabel::Other: return "Other";
    }
    return "?";
}

FamilyLabel parse_family(std::string_view text) {
    for (auto f : kAllLabels)
        if (to_string(f) == text) return f;
    fail(ErrorCode::Parse, "unknown family '" + std::string(text) + "'");
}

namespace {

// Largest integer x >= 0 with x <= c * base^s, decided exactly.
std::uint64_t floor_scaled_power(std::uint64_t c, std::uint64_t base, const Rational& s) {
    const double est = static_cast<double>(c) * std::pow(static_cast<double>(base), to_double(s));
    auto x = static_cast<std::uint64_t>(std::max(0.0, std::floor(est)));
    while (x > 0 && compare_scaled_power(Rational(x), Rational(c), BigInt(base), s) > 0) --x;
    while (compare_scaled_power(Rational(x + 1), Rational(c), BigInt(base), s) <= 0) ++x;
    return x;
}

void check_s(const Rational& s) {
    if (s <= Rational(1, 2) || s >= 1) fail(ErrorCode::InvalidArgument, "s = " + to_string(s) + " must lie strictly between 1/2 and 1");
}

}  // namespace

FamilyLabel classify_cycle_type(const std::vector<std::size_t>& type, bool has_m_cycle, const LineParams& p, const Rational& s) {
    check_s(s);
    if (has_m_cycle) return FamilyLabel::N;
    BigInt o = 1;
    for (auto len : type) o = boost::multiprecision::lcm(o, BigInt(len));
    if (o % p.m != 0) return FamilyLabel::Other;

    const std::uint64_t rn = p.r * p.n;
    std::uint64_t v = 0;
    for (auto len : type)
        if (p.rm() % len == 0) v += len;
    if (compare_scaled_power(Rational(v), Rational(4), BigInt(rn), s) <= 0) return FamilyLabel::R;

    std::size_t large = 0;
    std::uint64_t large_len = 0;
    for (auto len : type) {
        if (p.rm() % len) continue;
        if (compare_scaled_power(Rational(len), Rational(1), BigInt(rn), s) >= 0) {
            ++large;
            large_len = len;
        }
    }
    if (large == 0) return FamilyLabel::S0;
    if (large >= 2) return FamilyLabel::Sge2;
    return compare_scaled_power(Rational(v - large_len), Rational(3), BigInt(rn), s) > 0 ? FamilyLabel::S1Plus : FamilyLabel::S1Minus;
}

FamilyLabel classify(const Permutation& g, const LineParams& p, const Rational& s) {
    check_degree(g, p);
    check_s(s);
    if (!in_group(g, p.group)) fail(ErrorCode::InvalidArgument, "classify: odd permutation on an Alt line");
    const auto type = cycle_type(g);
    return classify_cycle_type(type, has_length(type, p.m), p, s);
}

Classifier::Classifier(const LineParams& p, const Rational& s) : params_(p) {
    check_s(s);
    const std::uint64_t rn = p.r * p.n;
    // d >= (rn)^s  <=>  d > floor of the largest integer strictly below (rn)^s
    const std::uint64_t f1 = floor_scaled_power(1, rn, s);
    large_min_ = compare_scaled_power(Rational(f1), Rational(1), BigInt(rn), s) == 0 ? f1 : f1 + 1;
    r_max_ = floor_scaled_power(4, rn, s);
    s1_max_ = floor_scaled_power(3, rn, s);
}

FamilyLabel Classifier::operator()(const std::vector<std::size_t>& type, bool has_m_cycle) const {
    if (has_m_cycle) return FamilyLabel::N;
    const std::uint64_t rm = params_.rm();
    // m | o(g) iff every prime power of m divides some cycle length
    for (auto [q, e] : factorize(params_.m)) {
        std::uint64_t qe = 1;
        for (unsigned i = 0; i < e; ++i) qe *= q;
        if (std::none_of(type.begin(), type.end(), [&](std::size_t len) { return len % qe == 0; })) return FamilyLabel::Other;
    }
    std::uint64_t v = 0, large = 0, large_len = 0;
    for (auto len : type) {
        if (rm % len) continue;
        v += len;
        if (len >= large_min_) {
            ++large;
            large_len = len;
        }
    }
    if (v <= r_max_) return FamilyLabel::R;
    if (large == 0) return FamilyLabel::S0;
    if (large >= 2) return FamilyLabel::Sge2;
    return v - large_len > s1_max_ ? FamilyLabel::S1Plus : FamilyLabel::S1Minus;
}

FamilyLabel Classifier::operator()(const Permutation& g) const {
    const auto type = cycle_type(g);
    const bool hm = std::find(type.begin(), type.end(), params_.m) != type.end();
    return (*this)(type, hm);
}

DivisorProfile divisor_profile(const LineParams& p) {
    DivisorProfile prof;
    prof.m = p.m;
    const std::uint64_t m = p.m;
    struct Frac {
        std::uint64_t num, den;
    };
    std::vector<Frac> allowed;
    if (p.r == 1) allowed = {{1, 3}, {1, 2}};
    else if (p.r == 2) allowed = {{1, 3}, {2, 5}, {2, 3}};
    else allowed = {{3, 5}, {3, 7}};
    for (auto d : divisors(p.rm())) {
        if (d > p.n || d == m) continue;
        if (7 * d <= 2 * m) {
            prof.small.push_back(d);
            continue;
        }
        prof.large.push_back(d);
        const bool listed = std::any_of(allowed.begin(), allowed.end(), [&](const Frac& f) { return d * f.den == f.num * m; });
        if (!listed) prof.violations.push_back("divisor " + std::to_string(d) + " of rm = " + std::to_string(p.rm()) + " is not in the r = " + std::to_string(p.r) + " row");
        if (3 * d > 2 * m) prof.violations.push_back("divisor " + std::to_string(d) + " exceeds 2m/3");
    }
    if (prof.large.size() > 3) prof.violations.push_back("more than three large divisors");
    return prof;
}

std::uint64_t count_ngood(const LineParams& p, kernels::Execution ex) {
    return kernels::reduce_group(
        ex, p.group, p.n, std::uint64_t{0}, [&](std::uint64_t& acc, const Permutation& g) { acc += in_Ngood(g, p) ? 1 : 0; },
        [](std::uint64_t& acc, const std::uint64_t& part) { acc += part; });
}

Rational rho_oracle(const LineParams& p, kernels::Execution ex) {
    const std::uint64_t count = count_ngood(p, ex);
    return Rational(BigInt(p.m) * count, group_order(p.group, p.n));
}

std::string to_string(TargetExtraction t) {
    switch (t) {
        case TargetExtraction::Identity: return "identity";
        case TargetExtraction::TwoCycle: return "2-cycle";
        case TargetExtraction::ThreeCycle: return "3-cycle";
        case TargetExtraction::Other: return "other";
    }
    return "?";
}

ExtractedTarget extract_target(const Permutation& g, const LineParams& p) {
    check_degree(g, p);
    Permutation x = power(g, p.m);
    const auto type = cycle_type(x);
    TargetExtraction kind = TargetExtraction::Other;
    const bool rest_fixed = type.size() < 2 || type[1] == 1;
    if (type[0] == 1) kind = TargetExtraction::Identity;
    else if (type[0] == 2 && rest_fixed) kind = TargetExtraction::TwoCycle;
    else if (type[0] == 3 && rest_fixed) kind = TargetExtraction::ThreeCycle;
    return {std::move(x), kind};
}

}  // namespace mcycle
