#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcycle/numeric.hpp"

namespace mcycle {

using Point = std::uint32_t;
using Cycle = std::vector<Point>;

enum class GroupKind { Sym, Alt };
enum class Parity { Even, Odd };

std::string to_string(GroupKind g);
GroupKind parse_group(std::string_view text);

// Bijection on {0..n-1}; images()[i] is the image of i.
class Permutation {
public:
    Permutation() : images_{0} {}
    explicit Permutation(std::vector<Point> images);

    static Permutation identity(std::size_t n);
    // Caller guarantees images is a bijection.
    static Permutation from_images_unchecked(std::vector<Point> images);
    static Permutation from_cycles(std::size_t n, const std::vector<Cycle>& cycles);

    std::size_t degree() const { return images_.size(); }
    Point operator()(Point i) const { return images_[i]; }
    std::span<const Point> images() const { return images_; }

    Permutation inverse() const;
    bool is_identity() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<Point> images_;
};

// Maps i to q(p(i)).
Permutation compose(const Permutation& p, const Permutation& q);
Permutation power(const Permutation& p, const BigInt& e);
Permutation power(const Permutation& p, std::uint64_t e);

// Cycles ordered by minimal element, each cycle starting at its minimum.
std::vector<Cycle> cycle_decomposition(const Permutation& p);
// Non-increasing cycle lengths, fixed points included.
std::vector<std::size_t> cycle_type(const Permutation& p);
BigInt order(const Permutation& p);
bool order_divides(const Permutation& p, const BigInt& t);
bool order_divides(const Permutation& p, std::uint64_t t);
Parity parity(const Permutation& p);
bool in_group(const Permutation& p, GroupKind g);

Permutation random_element(GroupKind g, std::size_t n, Rng& rng);
BigInt group_order(GroupKind g, std::size_t n);

inline constexpr std::size_t kMaxEnumerationDegree = 10;

// Lexicographic unranking over S_n, rank < n!.
Permutation unrank(std::size_t n, std::uint64_t rank);

// Walks S_n (or its even elements) in lexicographic order, optionally restricted
// to the Sym-rank window [first, last).
class GroupEnumerator {
public:
    GroupEnumerator(GroupKind g, std::size_t n);
    GroupEnumerator(GroupKind g, std::size_t n, std::uint64_t first, std::uint64_t last);

    bool next(Permutation& out);

private:
    GroupKind group_;
    std::vector<Point> current_;
    std::uint64_t rank_, last_;
    bool started_ = false;
};

std::uint64_t sym_order_u64(std::size_t n);

template <class F>
void enumerate_group(GroupKind g, std::size_t n, F&& visit) {
    GroupEnumerator e(g, n);
    Permutation p;
    while (e.next(p)) visit(p);
}

// Text forms, 1-based: "[2,3,1]" and "(1 2 3)(4)".
std::string to_image_string(const Permutation& p);
std::string to_cycle_string(const Permutation& p);
// Cycle form without a degree takes the largest point mentioned.
Permutation parse_permutation(std::string_view text, std::optional<std::size_t> degree = std::nullopt);

}  // namespace mcycle
