#include "mcycle/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace mcycle {

std::string to_string(GroupKind g) { return g == GroupKind::Sym ? "Sym" : "Alt"; }

GroupKind parse_group(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "sym" || t == "s") return GroupKind::Sym;
    if (t == "alt" || t == "a") return GroupKind::Alt;
    fail(ErrorCode::Parse, "unknown group '" + std::string(text) + "' (expected sym or alt)");
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
    if (images_.empty()) fail(ErrorCode::InvalidArgument, "permutation of degree 0");
    std::vector<char> seen(images_.size(), 0);
    for (Point x : images_) {
        if (x >= images_.size() || seen[x]) fail(ErrorCode::InvalidArgument, "image list is not a bijection");
        seen[x] = 1;
    }
}

Permutation Permutation::from_images_unchecked(std::vector<Point> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
}

Permutation Permutation::identity(std::size_t n) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "permutation of degree 0");
    std::vector<Point> im(n);
    std::iota(im.begin(), im.end(), Point{0});
    return from_images_unchecked(std::move(im));
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<Cycle>& cycles) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "permutation of degree 0");
    std::vector<Point> im(n);
    std::iota(im.begin(), im.end(), Point{0});
    std::vector<char> used(n, 0);
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= n) fail(ErrorCode::DegreeMismatch, "cycle point " + std::to_string(c[i] + 1) + " exceeds degree " + std::to_string(n));
            if (used[c[i]]) fail(ErrorCode::InvalidArgument, "point " + std::to_string(c[i] + 1) + " appears twice in cycle form");
            used[c[i]] = 1;
            im[c[i]] = c[(i + 1) % c.size()];
        }
    }
    return from_images_unchecked(std::move(im));
}

Permutation Permutation::inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
    return from_images_unchecked(std::move(inv));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) fail(ErrorCode::DegreeMismatch, "compose: degrees differ");
    std::vector<Point> im(p.degree());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = q(p(static_cast<Point>(i)));
    return Permutation::from_images_unchecked(std::move(im));
}

namespace {

template <class ShiftFn>
Permutation power_by_shift(const Permutation& p, ShiftFn shift_for) {
    std::vector<Point> im(p.degree());
    for (const auto& c : cycle_decomposition(p)) {
        const std::size_t len = c.size();
        const std::size_t sh = shift_for(len);
        for (std::size_t i = 0; i < len; ++i) im[c[i]] = c[(i + sh) % len];
    }
    return Permutation::from_images_unchecked(std::move(im));
}

}  // namespace

Permutation power(const Permutation& p, const BigInt& e) {
    if (e < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
    return power_by_shift(p, [&](std::size_t len) { return static_cast<std::size_t>(e % len); });
}

Permutation power(const Permutation& p, std::uint64_t e) {
    return power_by_shift(p, [&](std::size_t len) { return static_cast<std::size_t>(e % len); });
}

std::vector<Cycle> cycle_decomposition(const Permutation& p) {
    const std::size_t n = p.degree();
    std::vector<char> seen(n, 0);
    std::vector<Cycle> out;
    for (Point i = 0; i < n; ++i) {
        if (seen[i]) continue;
        Cycle c;
        for (Point j = i; !seen[j]; j = p(j)) {
            seen[j] = 1;
            c.push_back(j);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<std::size_t> cycle_type(const Permutation& p) {
    std::vector<std::size_t> t;
    for (const auto& c : cycle_decomposition(p)) t.push_back(c.size());
    std::sort(t.rbegin(), t.rend());
    return t;
}

BigInt order(const Permutation& p) {
    auto t = cycle_type(p);
    t.erase(std::unique(t.begin(), t.end()), t.end());
    BigInt o = 1;
    for (auto len : t) o = boost::multiprecision::lcm(o, BigInt(len));
    return o;
}

bool order_divides(const Permutation& p, const BigInt& t) {
    if (t < 1) fail(ErrorCode::InvalidArgument, "order_divides: t must be positive");
    for (auto len : cycle_type(p))
        if (t % len != 0) return false;
    return true;
}

bool order_divides(const Permutation& p, std::uint64_t t) {
    if (t < 1) fail(ErrorCode::InvalidArgument, "order_divides: t must be positive");
    for (auto len : cycle_type(p))
        if (t % len != 0) return false;
    return true;
}

namespace {

Parity parity_of(std::span<const Point> im) {
    const std::size_t n = im.size();
    std::vector<char> seen(n, 0);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = im[j]) seen[j] = 1;
    }
    return (n - cycles) % 2 == 0 ? Parity::Even : Parity::Odd;
}

}  // namespace

Parity parity(const Permutation& p) { return parity_of(p.images()); }

bool in_group(const Permutation& p, GroupKind g) { return g == GroupKind::Sym || parity(p) == Parity::Even; }

Permutation random_element(GroupKind g, std::size_t n, Rng& rng) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "random_element: n must be positive");
    if (g == GroupKind::Alt && n < 2) fail(ErrorCode::InvalidArgument, "random_element: Alt needs n >= 2");
    std::vector<Point> im(n);
    std::iota(im.begin(), im.end(), Point{0});
    for (std::size_t i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i);
        std::swap(im[i], im[pick(rng)]);
    }
    if (g == GroupKind::Alt && parity_of(im) == Parity::Odd) std::swap(im[0], im[1]);
    return Permutation::from_images_unchecked(std::move(im));
}

BigInt group_order(GroupKind g, std::size_t n) {
    BigInt f = factorial(n);
    return (g == GroupKind::Alt && n >= 2) ? BigInt(f / 2) : f;
}

std::uint64_t sym_order_u64(std::size_t n) {
    if (n > 20) fail(ErrorCode::TooLarge, "n! overflows 64 bits");
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

Permutation unrank(std::size_t n, std::uint64_t rank) {
    if (rank >= sym_order_u64(n)) fail(ErrorCode::InvalidArgument, "unrank: rank out of range");
    std::vector<Point> pool(n);
    std::iota(pool.begin(), pool.end(), Point{0});
    std::vector<Point> im;
    im.reserve(n);
    std::uint64_t f = sym_order_u64(n);
    for (std::size_t i = n; i > 0; --i) {
        f /= i;
        const std::size_t idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        im.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return Permutation::from_images_unchecked(std::move(im));
}

GroupEnumerator::GroupEnumerator(GroupKind g, std::size_t n) : GroupEnumerator(g, n, 0, n <= kMaxEnumerationDegree ? sym_order_u64(n) : 0) {}

GroupEnumerator::GroupEnumerator(GroupKind g, std::size_t n, std::uint64_t first, std::uint64_t last) : group_(g), rank_(first), last_(last) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "enumerate_group: n must be positive");
    if (n > kMaxEnumerationDegree) fail(ErrorCode::TooLarge, "enumerate_group: n = " + std::to_string(n) + " exceeds " + std::to_string(kMaxEnumerationDegree));
    last_ = std::min(last_, sym_order_u64(n));
    if (rank_ < last_) {
        auto p = unrank(n, rank_);
        current_.assign(p.images().begin(), p.images().end());
    }
}

bool GroupEnumerator::next(Permutation& out) {
    while (rank_ < last_) {
        if (started_) {
            std::next_permutation(current_.begin(), current_.end());
        }
        started_ = true;
        ++rank_;
        if (group_ == GroupKind::Alt && parity_of(current_) == Parity::Odd) continue;
        out = Permutation::from_images_unchecked(current_);
        return true;
    }
    return false;
}

std::string to_image_string(const Permutation& p) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < p.degree(); ++i) os << (i ? "," : "") << p(static_cast<Point>(i)) + 1;
    os << ']';
    return os.str();
}

std::string to_cycle_string(const Permutation& p) {
    std::ostringstream os;
    for (const auto& c : cycle_decomposition(p)) {
        os << '(';
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] + 1;
        os << ')';
    }
    return os.str();
}

namespace {

std::vector<std::uint64_t> parse_numbers(std::string_view body, std::string_view whole) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < body.size()) {
        const char c = body[i];
        if (c == ' ' || c == ',' || c == '\t') {
            ++i;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) fail(ErrorCode::Parse, "unexpected '" + std::string(1, c) + "' in '" + std::string(whole) + "'");
        std::uint64_t v = 0;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
            v = v * 10 + static_cast<std::uint64_t>(body[i] - '0');
            if (v > (1ULL << 31)) fail(ErrorCode::Parse, "point too large in '" + std::string(whole) + "'");
            ++i;
        }
        if (v == 0) fail(ErrorCode::Parse, "points are 1-based; got 0 in '" + std::string(whole) + "'");
        out.push_back(v);
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Permutation parse_permutation(std::string_view text, std::optional<std::size_t> degree) {
    const std::string_view t = trim(text);
    if (t.empty()) fail(ErrorCode::Parse, "empty permutation");
    if (t.front() == '[') {
        if (t.back() != ']') fail(ErrorCode::Parse, "unterminated image list '" + std::string(t) + "'");
        auto nums = parse_numbers(t.substr(1, t.size() - 2), t);
        if (nums.empty()) fail(ErrorCode::Parse, "empty image list");
        if (degree && *degree != nums.size())
            fail(ErrorCode::DegreeMismatch, "image list has degree " + std::to_string(nums.size()) + ", expected " + std::to_string(*degree));
        std::vector<Point> im;
        for (auto v : nums) {
            if (v > nums.size()) fail(ErrorCode::Parse, "image " + std::to_string(v) + " out of range in '" + std::string(t) + "'");
            im.push_back(static_cast<Point>(v - 1));
        }
        try {
            return Permutation(std::move(im));
        } catch (const Error&) {
            fail(ErrorCode::Parse, "image list is not a bijection: '" + std::string(t) + "'");
        }
    }
    if (t.front() != '(') fail(ErrorCode::Parse, "expected '[' or '(' in '" + std::string(t) + "'");
    std::vector<Cycle> cycles;
    std::size_t maxpt = 0, i = 0;
    while (i < t.size()) {
        if (std::isspace(static_cast<unsigned char>(t[i]))) {
            ++i;
            continue;
        }
        if (t[i] != '(') fail(ErrorCode::Parse, "expected '(' in '" + std::string(t) + "'");
        const auto close = t.find(')', i);
        if (close == std::string_view::npos) fail(ErrorCode::Parse, "unterminated cycle in '" + std::string(t) + "'");
        Cycle c;
        for (auto v : parse_numbers(t.substr(i + 1, close - i - 1), t)) {
            c.push_back(static_cast<Point>(v - 1));
            maxpt = std::max<std::size_t>(maxpt, v);
        }
        if (!c.empty()) cycles.push_back(std::move(c));
        i = close + 1;
    }
    const std::size_t n = degree.value_or(maxpt);
    if (n == 0) fail(ErrorCode::Parse, "cannot infer degree of '" + std::string(t) + "'");
    if (degree && maxpt > *degree)
        fail(ErrorCode::DegreeMismatch, "point " + std::to_string(maxpt) + " exceeds degree " + std::to_string(*degree));
    try {
        return Permutation::from_cycles(n, cycles);
    } catch (const Error& e) {
        fail(e.code() == ErrorCode::DegreeMismatch ? ErrorCode::DegreeMismatch : ErrorCode::Parse, e.what());
    }
}

}  // namespace mcycle
