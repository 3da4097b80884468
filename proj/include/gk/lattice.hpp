#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gk {

// A point of Z' = Z + 1/2, stored as the odd integer 2x.
class HalfInt {
public:
    constexpr HalfInt() = default;
    static HalfInt from_twice(std::int64_t twice);
    // n + 1/2
    static constexpr HalfInt above(std::int64_t n) { return HalfInt(2 * n + 1); }
    // Parses "n/2" (n odd); a plain integer is rejected.
    static HalfInt parse(std::string_view s);

    constexpr std::int64_t twice() const { return twice_; }
    constexpr double value() const { return 0.5 * static_cast<double>(twice_); }
    constexpr bool positive() const { return twice_ > 0; }
    // |x| - 1/2, a nonnegative integer
    constexpr std::int64_t floor_abs() const { return ((twice_ > 0 ? twice_ : -twice_) - 1) / 2; }
    std::string str() const;

    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    constexpr HalfInt operator+(std::int64_t k) const { return HalfInt(twice_ + 2 * k); }
    constexpr HalfInt operator-(std::int64_t k) const { return HalfInt(twice_ - 2 * k); }
    constexpr auto operator<=>(const HalfInt&) const = default;

private:
    constexpr explicit HalfInt(std::int64_t t) : twice_(t) {}
    std::int64_t twice_ = 1;
};

class Partition {
public:
    Partition() = default;
    // Throws PreconditionError unless rows are positive and weakly decreasing.
    explicit Partition(std::vector<int> rows);
    // "3,1,1"; the empty string is the empty partition.
    static Partition parse(std::string_view s);

    const std::vector<int>& rows() const { return rows_; }
    int size() const { return size_; }
    int length() const { return static_cast<int>(rows_.size()); }
    int row(int i) const { return i < length() ? rows_[i] : 0; }  // 0-based
    Partition conjugate() const;
    // Number of diagonal boxes.
    int rank() const { return static_cast<int>(frob_.size()); }
    // Modified Frobenius coordinates (p_i, q_i), ascending in i.
    const std::vector<std::pair<HalfInt, HalfInt>>& frobenius() const { return frob_; }
    std::string str() const;
    bool operator==(const Partition& o) const { return rows_ == o.rows_; }

private:
    std::vector<int> rows_;
    int size_ = 0;
    std::vector<std::pair<HalfInt, HalfInt>> frob_;
};

// Finite sorted set of distinct half-integers.
class FiniteConfig {
public:
    FiniteConfig() = default;
    explicit FiniteConfig(std::vector<HalfInt> pts);  // sorts, rejects duplicates
    static FiniteConfig parse(std::string_view s);    // "-1/2,1/2"

    const std::vector<HalfInt>& points() const { return pts_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    bool contains(HalfInt x) const;
    bool is_balanced() const;
    std::vector<HalfInt> positive_part() const;
    std::vector<HalfInt> negative_part() const;
    FiniteConfig symmetric_difference(const FiniteConfig& o) const;
    FiniteConfig reflected() const;  // x -> -x
    std::string str() const;
    bool operator==(const FiniteConfig& o) const { return pts_ == o.pts_; }
    bool operator<(const FiniteConfig& o) const { return pts_ < o.pts_; }

private:
    std::vector<HalfInt> pts_;
};

// A configuration that differs from Z'_- in finitely many points.
class MayaDiagram {
public:
    MayaDiagram() = default;
    explicit MayaDiagram(FiniteConfig diff) : diff_(std::move(diff)) {}
    const FiniteConfig& difference() const { return diff_; }
    bool contains(HalfInt x) const { return x.positive() ? diff_.contains(x) : !diff_.contains(x); }
    bool operator==(const MayaDiagram& o) const { return diff_ == o.diff_; }

private:
    FiniteConfig diff_;
};

// Word w_1 ... w_m in the generators sigma_n; the rightmost generator acts first.
struct FinitaryPermutation {
    std::vector<int> word;

    static FinitaryPermutation parse(std::string_view json_array);  // "[1, 0, -2]"
    FinitaryPermutation inverse() const;
    HalfInt apply(HalfInt x) const;
    // Largest |n| over the word (0 for the empty word).
    int support_radius() const;
    std::string str() const;
};

MayaDiagram to_maya(const Partition& lambda);
Partition from_maya(const MayaDiagram& m);
FiniteConfig to_balanced_config(const Partition& lambda);
Partition from_balanced_config(const FiniteConfig& x);

MayaDiagram particle_hole_involution(const FiniteConfig& x);
FiniteConfig particle_hole_involution(const MayaDiagram& m);

Partition apply_sigma(const FinitaryPermutation& s, const Partition& lambda);
MayaDiagram apply_sigma(const FinitaryPermutation& s, const MayaDiagram& m);
FiniteConfig apply_sigma_modified(const FinitaryPermutation& s, const FiniteConfig& x);
// sigma~ for a single generator; no balancedness check (used for infinite
// configurations restricted to a window containing n +- 1/2).
FiniteConfig apply_generator_modified(int n, const FiniteConfig& x);
// Whole word, same local rule and no balancedness check.
FiniteConfig apply_word_modified(const FinitaryPermutation& s, const FiniteConfig& x);

boost::multiprecision::cpp_rational dim_ratio(const Partition& lambda);

std::vector<Partition> partitions_of(int n);
std::vector<FiniteConfig> balanced_configs_in_window(int N);  // subsets of Z' ∩ [-N, N]

}  // namespace gk
