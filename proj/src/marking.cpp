#include "cfm/marking.hpp"

#include <algorithm>

namespace cfm {

Marking::Marking(std::initializer_list<Entry> entries)
{
    for (const auto& [p, n] : entries)
        add(p, n);
}

Marking Marking::single(PlaceId p, std::uint32_t count)
{
    Marking m;
    m.add(p, count);
    return m;
}

std::size_t Marking::size() const
{
    std::size_t total = 0;
    for (const auto& e : entries_)
        total += e.second;
    return total;
}

std::uint32_t Marking::count(PlaceId p) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, PlaceId q) { return e.first < q; });
    return it != entries_.end() && it->first == p ? it->second : 0;
}

std::vector<PlaceId> Marking::support() const
{
    std::vector<PlaceId> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_)
        out.push_back(e.first);
    return out;
}

std::vector<PlaceId> Marking::elements() const
{
    std::vector<PlaceId> out;
    for (const auto& [p, n] : entries_)
        out.insert(out.end(), n, p);
    return out;
}

void Marking::add(PlaceId p, std::uint32_t n)
{
    if (n == 0)
        return;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, PlaceId q) { return e.first < q; });
    if (it != entries_.end() && it->first == p)
        it->second += n;
    else
        entries_.insert(it, {p, n});
}

void Marking::remove(PlaceId p, std::uint32_t n)
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, PlaceId q) { return e.first < q; });
    if (it == entries_.end() || it->first != p)
        return;
    if (it->second <= n)
        entries_.erase(it);
    else
        it->second -= n;
}

bool Marking::included_in(const Marking& other) const
{
    for (const auto& [p, n] : entries_)
        if (other.count(p) < n)
            return false;
    return true;
}

Marking operator+(const Marking& a, const Marking& b)
{
    Marking out = a;
    for (const auto& [p, n] : b.entries_)
        out.add(p, n);
    return out;
}

Marking operator-(const Marking& a, const Marking& b)
{
    Marking out = a;
    for (const auto& [p, n] : b.entries_)
        out.remove(p, n);
    return out;
}

Marking operator*(std::uint32_t k, const Marking& m)
{
    Marking out;
    if (k == 0)
        return out;
    out.entries_ = m.entries_;
    for (auto& e : out.entries_)
        e.second *= k;
    return out;
}

std::size_t MarkingHash::operator()(const Marking& m) const noexcept
{
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& [p, n] : m.entries())
        h = (h ^ (static_cast<std::size_t>(p) * 0x100000001b3ULL + n)) * 0xff51afd7ed558ccdULL;
    return h;
}

} // namespace cfm
