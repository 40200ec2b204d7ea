#pragma once

// Skeletal FinSet: objects are sizes, elements are 0..n-1, and every colimit
// is computed by a fixed canonical recipe so results are reproducible.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace opencospan
{

struct FinSetOb {
    std::size_t size = 0;

    friend auto operator<=>(const FinSetOb &, const FinSetOb &) = default;
};

class FinFunction
{
public:
    FinFunction() = default;

    // Throws std::invalid_argument when an entry falls outside the codomain.
    FinFunction(std::size_t cod, std::vector<std::size_t> table) : m_cod(cod), m_table(std::move(table))
    {
        for (std::size_t x = 0; x < m_table.size(); ++x) {
            if (m_table[x] >= m_cod) {
                throw std::invalid_argument("FinFunction: entry " + std::to_string(x) + " maps to "
                                            + std::to_string(m_table[x]) + ", outside codomain of size "
                                            + std::to_string(m_cod));
            }
        }
    }

    static FinFunction identity(std::size_t n)
    {
        std::vector<std::size_t> t(n);
        std::iota(t.begin(), t.end(), std::size_t{0});
        return FinFunction(n, std::move(t));
    }
    // The unique map out of the empty set.
    static FinFunction initial(std::size_t cod)
    {
        return FinFunction(cod, {});
    }
    static FinFunction constant(std::size_t dom, std::size_t cod, std::size_t value)
    {
        return FinFunction(cod, std::vector<std::size_t>(dom, value));
    }

    FinSetOb dom() const
    {
        return {m_table.size()};
    }
    FinSetOb cod() const
    {
        return {m_cod};
    }
    std::size_t dom_size() const
    {
        return m_table.size();
    }
    std::size_t cod_size() const
    {
        return m_cod;
    }
    std::size_t operator()(std::size_t x) const
    {
        return m_table[x];
    }
    const std::vector<std::size_t> &table() const
    {
        return m_table;
    }

    bool is_injective() const
    {
        std::vector<bool> hit(m_cod, false);
        for (auto y : m_table) {
            if (hit[y]) {
                return false;
            }
            hit[y] = true;
        }
        return true;
    }
    bool is_surjective() const
    {
        std::vector<bool> hit(m_cod, false);
        for (auto y : m_table) {
            hit[y] = true;
        }
        return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    }
    bool is_bijective() const
    {
        return m_table.size() == m_cod && is_injective();
    }

    friend bool operator==(const FinFunction &, const FinFunction &) = default;

private:
    std::size_t m_cod = 0;
    std::vector<std::size_t> m_table;
};

// g ∘ f
inline FinFunction compose(const FinFunction &g, const FinFunction &f)
{
    if (f.cod_size() != g.dom_size()) {
        throw CompositionError("cannot compose: codomain of size " + std::to_string(f.cod_size())
                               + " does not match domain of size " + std::to_string(g.dom_size()));
    }
    std::vector<std::size_t> t(f.dom_size());
    for (std::size_t x = 0; x < t.size(); ++x) {
        t[x] = g(f(x));
    }
    return FinFunction(g.cod_size(), std::move(t));
}

inline FinFunction inverse(const FinFunction &f)
{
    if (!f.is_bijective()) {
        throw std::invalid_argument("inverse: function is not a bijection");
    }
    std::vector<std::size_t> t(f.cod_size());
    for (std::size_t x = 0; x < f.dom_size(); ++x) {
        t[f(x)] = x;
    }
    return FinFunction(f.dom_size(), std::move(t));
}

struct Coproduct {
    FinSetOb object;
    FinFunction left;
    FinFunction right;
};

// a + b with the left summand at offset 0 and the right at offset a.size.
inline Coproduct coproduct(FinSetOb a, FinSetOb b)
{
    const auto n = a.size + b.size;
    std::vector<std::size_t> l(a.size), r(b.size);
    std::iota(l.begin(), l.end(), std::size_t{0});
    std::iota(r.begin(), r.end(), a.size);
    return {{n}, FinFunction(n, std::move(l)), FinFunction(n, std::move(r))};
}

// [f, g] : a + b -> c
inline FinFunction copair(const FinFunction &f, const FinFunction &g)
{
    if (f.cod_size() != g.cod_size()) {
        throw CompositionError("copair: codomains differ (" + std::to_string(f.cod_size()) + " vs "
                               + std::to_string(g.cod_size()) + ")");
    }
    std::vector<std::size_t> t = f.table();
    t.insert(t.end(), g.table().begin(), g.table().end());
    return FinFunction(f.cod_size(), std::move(t));
}

// f + g : a + b -> c + d
inline FinFunction sum(const FinFunction &f, const FinFunction &g)
{
    std::vector<std::size_t> t = f.table();
    t.reserve(f.dom_size() + g.dom_size());
    for (auto y : g.table()) {
        t.push_back(y + f.cod_size());
    }
    return FinFunction(f.cod_size() + g.cod_size(), std::move(t));
}

struct PushoutResult {
    FinSetOb apex;
    FinFunction left;     // B -> apex
    FinFunction right;    // C -> apex
    FinFunction quotient; // B + C -> apex
};

namespace detail
{

class UnionFind
{
public:
    explicit UnionFind(std::size_t n) : m_parent(n)
    {
        std::iota(m_parent.begin(), m_parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x)
    {
        while (m_parent[x] != x) {
            m_parent[x] = m_parent[m_parent[x]];
            x = m_parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b) {
            m_parent[std::max(a, b)] = std::min(a, b);
        }
    }

private:
    std::vector<std::size_t> m_parent;
};

} // namespace detail

// Pushout of B <-f- A -g-> C. Classes of B + C are numbered by ascending
// minimum representative.
inline PushoutResult pushout(const FinFunction &f, const FinFunction &g)
{
    if (f.dom_size() != g.dom_size()) {
        throw SpanError("pushout: span legs have different domains (" + std::to_string(f.dom_size()) + " vs "
                        + std::to_string(g.dom_size()) + ")");
    }
    const auto nb = f.cod_size();
    const auto n = nb + g.cod_size();
    detail::UnionFind uf(n);
    for (std::size_t x = 0; x < f.dom_size(); ++x) {
        uf.unite(f(x), nb + g(x));
    }
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> class_of_root(n, unset);
    std::vector<std::size_t> q(n);
    std::size_t classes = 0;
    for (std::size_t x = 0; x < n; ++x) {
        auto r = uf.find(x);
        if (class_of_root[r] == unset) {
            class_of_root[r] = classes++;
        }
        q[x] = class_of_root[r];
    }
    FinFunction quotient(classes, std::move(q));
    auto inj = coproduct(f.cod(), g.cod());
    return {{classes}, compose(quotient, inj.left), compose(quotient, inj.right), std::move(quotient)};
}

// Factor k : X -> D through a surjection q : X -> P. Throws CompositionError
// when k is not constant on the fibres of q.
inline FinFunction factor_through(const FinFunction &q, const FinFunction &k)
{
    if (q.dom_size() != k.dom_size()) {
        throw CompositionError("factor_through: domains differ");
    }
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> t(q.cod_size(), unset);
    for (std::size_t x = 0; x < q.dom_size(); ++x) {
        auto &slot = t[q(x)];
        if (slot == unset) {
            slot = k(x);
        } else if (slot != k(x)) {
            throw CompositionError("factor_through: map is not constant on class " + std::to_string(q(x)));
        }
    }
    if (std::find(t.begin(), t.end(), unset) != t.end()) {
        throw CompositionError("factor_through: quotient map is not surjective");
    }
    return FinFunction(k.cod_size(), std::move(t));
}

// Node counter shared by nested backtracking searches.
class SearchBudget
{
public:
    static constexpr std::uint64_t default_nodes = 1'000'000;

    explicit SearchBudget(std::uint64_t nodes = default_nodes) : m_remaining(nodes) {}

    void consume()
    {
        if (m_remaining == 0) {
            throw BudgetExceeded("isomorphism search exceeded its node budget");
        }
        --m_remaining;
    }
    std::uint64_t remaining() const
    {
        return m_remaining;
    }

private:
    std::uint64_t m_remaining;
};

// Called with the assigned prefix of a candidate table (length k means
// elements 0..k-1 are assigned). Must return false as soon as the prefix
// violates the constraint; the full-length call is the final check.
using PartialPredicate = std::function<bool(std::span<const std::size_t>)>;

// Lexicographically smallest bijection a -> b that honours the pinned pairs
// (x must map to y) and the predicate, or nullopt.
inline std::optional<FinFunction> find_iso(FinSetOb a, FinSetOb b,
                                           std::span<const std::pair<std::size_t, std::size_t>> pinned,
                                           const PartialPredicate &accept, SearchBudget &budget)
{
    if (a.size != b.size) {
        return std::nullopt;
    }
    const auto n = a.size;
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pin(n, unset);
    for (auto [x, y] : pinned) {
        if (x >= n || y >= n) {
            return std::nullopt;
        }
        if (pin[x] != unset && pin[x] != y) {
            return std::nullopt;
        }
        pin[x] = y;
    }
    {
        std::vector<bool> taken(n, false);
        for (auto y : pin) {
            if (y != unset) {
                if (taken[y]) {
                    return std::nullopt;
                }
                taken[y] = true;
            }
        }
    }

    std::vector<std::size_t> table;
    table.reserve(n);
    std::vector<bool> used(n, false);
    // Images reserved by pins on later elements.
    std::vector<bool> reserved(n, false);
    for (auto y : pin) {
        if (y != unset) {
            reserved[y] = true;
        }
    }

    std::function<bool(std::size_t)> extend = [&](std::size_t x) -> bool {
        budget.consume();
        if (!accept(std::span<const std::size_t>(table))) {
            return false;
        }
        if (x == n) {
            return true;
        }
        auto try_image = [&](std::size_t y) {
            table.push_back(y);
            used[y] = true;
            if (extend(x + 1)) {
                return true;
            }
            used[y] = false;
            table.pop_back();
            return false;
        };
        if (pin[x] != unset) {
            return try_image(pin[x]);
        }
        for (std::size_t y = 0; y < n; ++y) {
            if (!used[y] && !reserved[y] && try_image(y)) {
                return true;
            }
        }
        return false;
    };
    if (extend(0)) {
        return FinFunction(n, std::move(table));
    }
    return std::nullopt;
}

inline std::optional<FinFunction> find_iso(FinSetOb a, FinSetOb b, const PartialPredicate &accept,
                                           SearchBudget &budget)
{
    return find_iso(a, b, {}, accept, budget);
}

inline std::optional<FinFunction> find_iso(FinSetOb a, FinSetOb b, const PartialPredicate &accept)
{
    SearchBudget budget;
    return find_iso(a, b, {}, accept, budget);
}

} // namespace opencospan
