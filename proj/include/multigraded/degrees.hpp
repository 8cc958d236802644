#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mg {

/// A multi-degree in Z^n. The same type carries coordinate degrees
/// ({0,1}^n), momentum degrees ({0,1}^(n+1)) and vector-field weights (Z^n).
class MultiDegree {
public:
    MultiDegree() = default;
    explicit MultiDegree(std::size_t n) : entries_(n, 0) {}
    MultiDegree(std::initializer_list<int> entries) : entries_(entries) {}
    explicit MultiDegree(std::vector<int> entries) : entries_(std::move(entries)) {}

    /// Unit degree delta^k, 1 <= k <= n.
    static MultiDegree delta(std::size_t n, std::size_t k);
    /// The all-ones degree 1^n.
    static MultiDegree ones(std::size_t n);

    std::size_t size() const noexcept { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    int& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<int>& entries() const noexcept { return entries_; }

    int total() const noexcept;
    /// Total degree mod 2.
    int parity() const noexcept;
    bool is_zero() const noexcept;
    /// All entries in {0,1}.
    bool is_binary() const noexcept;

    /// Componentwise <=. Throws on length mismatch.
    bool leq(const MultiDegree& other) const;
    /// 1^n - i.
    MultiDegree complement() const;
    /// {i - delta^k : i_k = 1}, in increasing k.
    std::vector<MultiDegree> parents() const;
    /// Copy with the entry at position `pos` (0-based) removed.
    MultiDegree drop(std::size_t pos) const;
    /// Copy with `value` inserted before position `pos` (0-based).
    MultiDegree insert(std::size_t pos, int value) const;

    MultiDegree& operator+=(const MultiDegree& other);
    MultiDegree& operator-=(const MultiDegree& other);
    friend MultiDegree operator+(MultiDegree a, const MultiDegree& b) { return a += b; }
    friend MultiDegree operator-(MultiDegree a, const MultiDegree& b) { return a -= b; }
    MultiDegree operator*(int scale) const;

    friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
    friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;

    /// "(1,0,1)"
    std::string str() const;
    /// "101" for binary degrees, otherwise str().
    std::string compact() const;

private:
    std::vector<int> entries_;
};

/// Throws ValidationError unless both degrees have the same length.
void require_same_length(const MultiDegree& a, const MultiDegree& b);

/// Sign [i^1,...,i^r] of the permutation that carries the concatenation
/// J(i^1),...,J(i^r) to the increasing sequence J(i^1 + ... + i^r), where J(i)
/// lists the positions k with i_k = 1. Parts must be binary and disjoint.
int permutation_sign(std::span<const MultiDegree> parts);

/// Total order on {0,1}^n used to normal-order products of fibre
/// coordinates: by total degree, then descending lexicographic, so that
/// delta^1 precedes delta^2 precedes ... delta^n.
bool precedes(const MultiDegree& a, const MultiDegree& b);

/// All elements of {0,1}^n, ordered by `precedes` (zero first).
std::vector<MultiDegree> binary_degrees(std::size_t n);

}  // namespace mg
