#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "finset.hpp"

namespace opencospan
{

// An element of ℕ[S]: one nonnegative count per element of S.
struct Multiset {
    std::vector<std::uint32_t> counts;

    Multiset() = default;
    explicit Multiset(std::size_t over) : counts(over, 0) {}
    explicit Multiset(std::vector<std::uint32_t> c) : counts(std::move(c)) {}

    FinSetOb over() const
    {
        return {counts.size()};
    }
    std::uint64_t total() const
    {
        return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    }
    bool empty() const
    {
        return total() == 0;
    }

    // ℕ[f]: counts are summed over each fibre of f.
    Multiset push_forward(const FinFunction &f) const
    {
        if (f.dom_size() != counts.size()) {
            throw CompositionError("multiset over " + std::to_string(counts.size())
                                   + " elements pushed along a map with domain "
                                   + std::to_string(f.dom_size()));
        }
        Multiset out(f.cod_size());
        for (std::size_t x = 0; x < counts.size(); ++x) {
            out.counts[f(x)] += counts[x];
        }
        return out;
    }

    // Concatenation, i.e. the image in ℕ[S + S'] when other lives over S'.
    // Used with an empty other to pad a multiset into a larger set.
    Multiset padded(std::size_t before, std::size_t after) const
    {
        Multiset out(before + counts.size() + after);
        std::copy(counts.begin(), counts.end(), out.counts.begin() + static_cast<std::ptrdiff_t>(before));
        return out;
    }

    friend auto operator<=>(const Multiset &, const Multiset &) = default;
};

} // namespace opencospan
