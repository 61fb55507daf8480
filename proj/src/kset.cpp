#include "mcycle/kset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mcycle {

KSubset::KSubset(std::size_t n, std::vector<Point> points) : n_(n), points_(std::move(points)) {
    if (points_.empty() || points_.size() > n_) fail(ErrorCode::InvalidArgument, "k-subset size must satisfy 1 <= k <= n");
    std::sort(points_.begin(), points_.end());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i] >= n_) fail(ErrorCode::InvalidArgument, "k-subset point " + std::to_string(points_[i] + 1) + " exceeds n = " + std::to_string(n_));
        if (i && points_[i] == points_[i - 1]) fail(ErrorCode::InvalidArgument, "k-subset has a repeated point");
    }
}

KSubset KSubset::from_sorted_unchecked(std::size_t n, std::vector<Point> points) {
    KSubset s;
    s.n_ = n;
    s.points_ = std::move(points);
    return s;
}

KSubset image(const KSubset& gamma, const Permutation& g) {
    if (gamma.degree() != g.degree()) fail(ErrorCode::DegreeMismatch, "image: degree mismatch");
    std::vector<Point> im;
    im.reserve(gamma.size());
    for (Point x : gamma.points()) im.push_back(g(x));
    std::sort(im.begin(), im.end());
    return KSubset::from_sorted_unchecked(gamma.degree(), std::move(im));
}

std::optional<std::uint64_t> cycle_length_trace(const KSubset& gamma, const Permutation& g, std::uint64_t cap) {
    if (gamma.degree() != g.degree()) fail(ErrorCode::DegreeMismatch, "cycle_length_trace: degree mismatch");
    if (cap < 1) fail(ErrorCode::InvalidArgument, "cycle_length_trace: cap must be positive");
    std::vector<char> in_gamma(g.degree(), 0);
    for (Point x : gamma.points()) in_gamma[x] = 1;
    std::vector<Point> cur(gamma.points().begin(), gamma.points().end());
    for (std::uint64_t t = 1; t <= cap; ++t) {
        bool back = true;
        for (auto& x : cur) {
            x = g(x);
            back = back && in_gamma[x];
        }
        if (back) return t;
    }
    return std::nullopt;
}

namespace {

std::uint64_t period_of(std::uint64_t t, const std::vector<std::uint64_t>& divs, std::span<const std::uint64_t> sorted_pos) {
    const std::uint64_t k = sorted_pos.size();
    if (k == 0 || k == t) return 1;
    for (auto d : divs) {
        if (d == t) break;
        if (k % (t / d)) continue;
        const bool fixed = std::all_of(sorted_pos.begin(), sorted_pos.end(),
                                       [&](std::uint64_t p) { return std::binary_search(sorted_pos.begin(), sorted_pos.end(), (p + d) % t); });
        if (fixed) return d;
    }
    return t;
}

}  // namespace

std::uint64_t rotation_period(std::uint64_t t, std::span<const std::uint64_t> positions) {
    if (t == 0) fail(ErrorCode::InvalidArgument, "rotation_period: t must be positive");
    std::vector<std::uint64_t> pos(positions.begin(), positions.end());
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    if (!pos.empty() && pos.back() >= t) fail(ErrorCode::InvalidArgument, "rotation_period: position out of range");
    return period_of(t, divisors(t), pos);
}

CycleIndex::CycleIndex(const Permutation& g) : cycle_of_(g.degree()), pos_(g.degree()), cycles_(cycle_decomposition(g)) {
    std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> cache;
    for (std::uint32_t c = 0; c < cycles_.size(); ++c) {
        for (std::uint32_t i = 0; i < cycles_[c].size(); ++i) {
            cycle_of_[cycles_[c][i]] = c;
            pos_[cycles_[c][i]] = i;
        }
        const std::size_t len = cycles_[c].size();
        auto it = std::find_if(cache.begin(), cache.end(), [&](const auto& e) { return e.first == len; });
        if (it == cache.end()) {
            cache.emplace_back(len, divisors(len));
            it = cache.end() - 1;
        }
        divisors_.push_back(it->second);
    }
}

template <class F>
bool CycleIndex::for_each_period(std::span<const Point> points, F&& f) const {
    // (cycle, position) pairs grouped by cycle
    std::vector<std::pair<std::uint32_t, std::uint64_t>> cp;
    cp.reserve(points.size());
    for (Point x : points) cp.emplace_back(cycle_of_[x], pos_[x]);
    std::sort(cp.begin(), cp.end());
    std::vector<std::uint64_t> pos;
    for (std::size_t i = 0; i < cp.size();) {
        std::size_t j = i;
        pos.clear();
        while (j < cp.size() && cp[j].first == cp[i].first) pos.push_back(cp[j++].second);
        const std::uint32_t c = cp[i].first;
        if (!f(period_of(cycles_[c].size(), divisors_[c], pos))) return false;
        i = j;
    }
    return true;
}

BigInt CycleIndex::orbit_length(std::span<const Point> points) const {
    BigInt l = 1;
    for_each_period(points, [&](std::uint64_t d) {
        l = boost::multiprecision::lcm(l, BigInt(d));
        return true;
    });
    return l;
}

std::optional<std::uint64_t> CycleIndex::orbit_length_dividing(std::span<const Point> points, std::uint64_t t) const {
    std::uint64_t l = 1;
    const bool ok = for_each_period(points, [&](std::uint64_t d) {
        if (t % d) return false;
        l = std::lcm(l, d);
        return true;
    });
    if (!ok) return std::nullopt;
    return l;
}

std::optional<std::uint64_t> CycleIndex::orbit_length_capped(std::span<const Point> points, std::uint64_t cap) const {
    std::uint64_t l = 1;
    const bool ok = for_each_period(points, [&](std::uint64_t d) {
        const std::uint64_t step = d / std::gcd(l, d);
        if (l > cap / step) return false;
        l *= step;
        return true;
    });
    if (!ok || l > cap) return std::nullopt;
    return l;
}

BigInt cycle_length_exact(const KSubset& gamma, const Permutation& g) {
    if (gamma.degree() != g.degree()) fail(ErrorCode::DegreeMismatch, "cycle_length_exact: degree mismatch");
    return CycleIndex(g).orbit_length(gamma.points());
}

KSubset random_ksubset(std::size_t n, std::size_t k, Rng& rng) {
    if (k < 1 || k > n) fail(ErrorCode::InvalidArgument, "random_ksubset: need 1 <= k <= n");
    std::vector<Point> a(n);
    std::iota(a.begin(), a.end(), Point{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(a[i], a[pick(rng)]);
    }
    a.resize(k);
    std::sort(a.begin(), a.end());
    return KSubset::from_sorted_unchecked(n, std::move(a));
}

KSubset parse_ksubset(std::string_view text, std::size_t n) {
    std::string t(text);
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
    if (t.size() < 2 || t.front() != '{' || t.back() != '}') fail(ErrorCode::Parse, "k-subset must look like {1,4,7}: '" + t + "'");
    std::vector<Point> pts;
    std::stringstream ss(t.substr(1, t.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
            fail(ErrorCode::Parse, "bad point '" + tok + "' in '" + t + "'");
        const unsigned long v = std::stoul(tok);
        if (v == 0) fail(ErrorCode::Parse, "points are 1-based; got 0 in '" + t + "'");
        if (v > n) fail(ErrorCode::DegreeMismatch, "point " + tok + " exceeds n = " + std::to_string(n));
        pts.push_back(static_cast<Point>(v - 1));
    }
    try {
        return KSubset(n, std::move(pts));
    } catch (const Error& e) {
        fail(ErrorCode::Parse, e.what());
    }
}

std::string to_string(const KSubset& gamma) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < gamma.size(); ++i) os << (i ? "," : "") << gamma.points()[i] + 1;
    os << '}';
    return os.str();
}

BadCount count_bad_ksubsets(const CycleIndex& index, const LineParams& p, std::size_t k, std::uint64_t budget, kernels::Execution ex) {
    const std::size_t n = index.degree();
    if (n != p.n) fail(ErrorCode::DegreeMismatch, "count_bad_ksubsets: degree mismatch");
    if (k < 1 || k > n) fail(ErrorCode::InvalidArgument, "count_bad_ksubsets: need 1 <= k <= n");
    const BigInt total = binomial(n, k);
    if (total > budget)
        fail(ErrorCode::BudgetExceeded, "binom(" + std::to_string(n) + "," + std::to_string(k) + ") = " + total.str() + " exceeds the enumeration budget " +
                                            std::to_string(budget) + "; use Monte Carlo mode");
    auto body = [&](std::uint64_t lo, std::uint64_t hi, BadCount& acc) {
        for_each_ksubset(n, k, lo, hi, [&](std::span<const Point> pts) {
            ++acc.total;
            auto len = index.orbit_length_dividing(pts, p.rm());
            if (!len || !is_target_length(p, *len)) ++acc.bad;
        });
    };
    auto combine = [](BadCount& a, const BadCount& b) {
        a.bad += b.bad;
        a.total += b.total;
    };
    return kernels::block_reduce(ex, n - k + 1, BadCount{}, body, combine);
}

BadCount count_bad_ksubsets(const Permutation& g, const LineParams& p, std::size_t k, std::uint64_t budget, kernels::Execution ex) {
    return count_bad_ksubsets(CycleIndex(g), p, k, budget, ex);
}

}  // namespace mcycle
