#include "multigraded/degrees.hpp"

#include <algorithm>
#include <numeric>

#include "multigraded/error.hpp"

namespace mg {

MultiDegree MultiDegree::delta(std::size_t n, std::size_t k) {
    if (k < 1 || k > n)
        throw ValidationError("structure index " + std::to_string(k) + " out of range 1.." +
                              std::to_string(n));
    MultiDegree d(n);
    d.entries_[k - 1] = 1;
    return d;
}

MultiDegree MultiDegree::ones(std::size_t n) {
    return MultiDegree(std::vector<int>(n, 1));
}

int MultiDegree::total() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

int MultiDegree::parity() const noexcept {
    int t = total() % 2;
    return t < 0 ? t + 2 : t;
}

bool MultiDegree::is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
}

bool MultiDegree::is_binary() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0 || e == 1; });
}

void require_same_length(const MultiDegree& a, const MultiDegree& b) {
    if (a.size() != b.size())
        throw ValidationError("degree length mismatch: " + a.str() + " vs " + b.str());
}

bool MultiDegree::leq(const MultiDegree& other) const {
    require_same_length(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] > other.entries_[i]) return false;
    return true;
}

MultiDegree MultiDegree::complement() const {
    return ones(size()) - *this;
}

std::vector<MultiDegree> MultiDegree::parents() const {
    std::vector<MultiDegree> out;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (entries_[k] == 1) {
            MultiDegree p = *this;
            p.entries_[k] = 0;
            out.push_back(std::move(p));
        }
    }
    return out;
}

MultiDegree MultiDegree::drop(std::size_t pos) const {
    if (pos >= size()) throw ValidationError("drop position out of range");
    MultiDegree d = *this;
    d.entries_.erase(d.entries_.begin() + static_cast<std::ptrdiff_t>(pos));
    return d;
}

MultiDegree MultiDegree::insert(std::size_t pos, int value) const {
    if (pos > size()) throw ValidationError("insert position out of range");
    MultiDegree d = *this;
    d.entries_.insert(d.entries_.begin() + static_cast<std::ptrdiff_t>(pos), value);
    return d;
}

MultiDegree& MultiDegree::operator+=(const MultiDegree& other) {
    require_same_length(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

MultiDegree& MultiDegree::operator-=(const MultiDegree& other) {
    require_same_length(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

MultiDegree MultiDegree::operator*(int scale) const {
    MultiDegree d = *this;
    for (int& e : d.entries_) e *= scale;
    return d;
}

std::string MultiDegree::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(entries_[i]);
    }
    return s + ")";
}

std::string MultiDegree::compact() const {
    if (!is_binary() || entries_.empty()) return str();
    std::string s;
    for (int e : entries_) s += static_cast<char>('0' + e);
    return s;
}

int permutation_sign(std::span<const MultiDegree> parts) {
    if (parts.empty()) return 1;
    const std::size_t n = parts.front().size();
    MultiDegree sum(n);
    std::vector<std::size_t> sequence;
    for (const MultiDegree& part : parts) {
        if (part.size() != n) throw ValidationError("permutation_sign: degree length mismatch");
        if (!part.is_binary())
            throw ValidationError("permutation_sign: part " + part.str() + " is not binary");
        for (std::size_t k = 0; k < n; ++k)
            if (part[k] == 1) sequence.push_back(k);
        sum += part;
    }
    if (!sum.is_binary())
        throw ValidationError("permutation_sign: parts overlap, sum " + sum.str());
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < sequence.size(); ++a)
        for (std::size_t b = a + 1; b < sequence.size(); ++b)
            if (sequence[a] > sequence[b]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

bool precedes(const MultiDegree& a, const MultiDegree& b) {
    require_same_length(a, b);
    if (a.total() != b.total()) return a.total() < b.total();
    return a.entries() > b.entries();
}

std::vector<MultiDegree> binary_degrees(std::size_t n) {
    std::vector<MultiDegree> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        MultiDegree d(n);
        for (std::size_t k = 0; k < n; ++k) d[k] = static_cast<int>((mask >> k) & 1u);
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end(), precedes);
    return out;
}

}  // namespace mg
