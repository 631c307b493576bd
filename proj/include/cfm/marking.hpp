#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace cfm {

using PlaceId = std::uint32_t;

/// Finite multiset of places. Entries are kept sorted by place with
/// strictly positive counts, so equal multisets compare equal.
/// The default-constructed marking is the empty marking θ.
class Marking {
public:
    using Entry = std::pair<PlaceId, std::uint32_t>;

    Marking() = default;
    Marking(std::initializer_list<Entry> entries);
    static Marking single(PlaceId p, std::uint32_t count = 1);

    std::span<const Entry> entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    /// Total number of tokens.
    std::size_t size() const;
    std::uint32_t count(PlaceId p) const;
    bool contains(PlaceId p) const { return count(p) > 0; }
    /// Support: places with a nonzero count.
    std::vector<PlaceId> support() const;
    /// Places with multiplicity, ascending.
    std::vector<PlaceId> elements() const;

    void add(PlaceId p, std::uint32_t n = 1);
    /// Removes up to n tokens of p (never below zero).
    void remove(PlaceId p, std::uint32_t n = 1);

    /// m ⊆ other, pointwise.
    bool included_in(const Marking& other) const;

    friend Marking operator+(const Marking& a, const Marking& b);
    /// Truncated difference: max(a(s) - b(s), 0).
    friend Marking operator-(const Marking& a, const Marking& b);
    friend Marking operator*(std::uint32_t k, const Marking& m);

    friend bool operator==(const Marking&, const Marking&) = default;
    friend auto operator<=>(const Marking&, const Marking&) = default;

private:
    std::vector<Entry> entries_;
};

struct MarkingHash {
    std::size_t operator()(const Marking& m) const noexcept;
};

} // namespace cfm
