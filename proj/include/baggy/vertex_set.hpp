#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace baggy {

/// Dense subset of pattern vertices 1..64, bit (v - 1) marks vertex v.
class VertexSet {
public:
    static constexpr int kMaxVertices = 64;

    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
    VertexSet(std::initializer_list<int> vertices) {
        for (int v : vertices) {
            insert(v);
        }
    }

    static constexpr VertexSet range(int k) {
        return VertexSet(k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1);
    }
    static constexpr VertexSet single(int v) { return VertexSet(std::uint64_t{1} << (v - 1)); }

    static VertexSet from_vector(const std::vector<int>& vertices) {
        VertexSet s;
        for (int v : vertices) {
            s.insert(v);
        }
        return s;
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int v) const { return (bits_ >> (v - 1)) & 1U; }
    constexpr void insert(int v) { bits_ |= std::uint64_t{1} << (v - 1); }
    constexpr void erase(int v) { bits_ &= ~(std::uint64_t{1} << (v - 1)); }

    /// Smallest member; undefined on the empty set.
    constexpr int min() const { return std::countr_zero(bits_) + 1; }

    constexpr bool subset_of(VertexSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(VertexSet other) const { return (bits_ & other.bits_) != 0; }

    constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
    constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
    constexpr VertexSet operator-(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
    constexpr VertexSet& operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
    constexpr VertexSet& operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }
    constexpr VertexSet& operator-=(VertexSet o) { bits_ &= ~o.bits_; return *this; }

    constexpr bool operator==(const VertexSet&) const = default;

    /// Members in ascending order.
    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
            out.push_back(std::countr_zero(b) + 1);
        }
        return out;
    }

    class iterator {
    public:
        using value_type = int;
        using difference_type = std::ptrdiff_t;

        constexpr iterator() = default;
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
        constexpr int operator*() const { return std::countr_zero(rest_) + 1; }
        constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        constexpr iterator operator++(int) { iterator t = *this; ++*this; return t; }
        constexpr bool operator==(const iterator&) const = default;

    private:
        std::uint64_t rest_ = 0;
    };

    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

private:
    std::uint64_t bits_ = 0;
};

/// Lexicographic order on the ascending member lists.
inline bool lex_less(VertexSet a, VertexSet b) {
    std::uint64_t x = a.bits();
    std::uint64_t y = b.bits();
    while (x != 0 && y != 0) {
        int ax = std::countr_zero(x);
        int by = std::countr_zero(y);
        if (ax != by) {
            return ax < by;
        }
        x &= x - 1;
        y &= y - 1;
    }
    return x == 0 && y != 0;
}

} // namespace baggy
