#pragma once

// Horizontal 1-cells in two representations.
//
//   DecoratedCospan<T>   a -> m <- b in FinSet plus a decoration in T's fibre over m.
//   StructuredCospan<S>  L(a) -> x <- L(b) in the system category S.
//
// Horizontal composition is by pushout with the canonical colimit choices of
// finset.hpp; tensor is by coproduct. Composites are associative and unital
// only up to isomorphism, which iso_cospan decides.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "decoration.hpp"

namespace opencospan
{

template <DecorationTheory T>
struct DecoratedCospan {
    using Theory = T;
    using Decoration = typename T::Decoration;

    FinFunction left_leg;
    FinFunction right_leg;
    Decoration decoration;

    DecoratedCospan() : decoration(T::unit()) {}
    DecoratedCospan(FinFunction l, FinFunction r, Decoration d)
        : left_leg(std::move(l)), right_leg(std::move(r)), decoration(std::move(d))
    {
        const auto m = T::base_size(decoration);
        if (left_leg.cod_size() != m || right_leg.cod_size() != m) {
            throw InvalidSystem("decorated cospan: legs land in sets of size " + std::to_string(left_leg.cod_size())
                                + " and " + std::to_string(right_leg.cod_size()) + " but the decoration lives over "
                                + std::to_string(m));
        }
    }

    FinSetOb foot_left() const
    {
        return left_leg.dom();
    }
    FinSetOb foot_right() const
    {
        return right_leg.dom();
    }
    FinSetOb apex() const
    {
        return left_leg.cod();
    }

    friend bool operator==(const DecoratedCospan &, const DecoratedCospan &) = default;
};

// Equality with the theory's notion of decoration equality (tolerant for rates
// and polynomial coefficients).
template <DecorationTheory T>
bool same_cospan(const DecoratedCospan<T> &a, const DecoratedCospan<T> &b)
{
    return a.left_leg == b.left_leg && a.right_leg == b.right_leg && T::equal(a.decoration, b.decoration);
}

// U_a = (a -1-> a <-1- a, I_a)
template <DecorationTheory T>
DecoratedCospan<T> identity_cospan(FinSetOb a)
{
    return {FinFunction::identity(a.size), FinFunction::identity(a.size), T::trivial(a.size)};
}

template <DecorationTheory T>
DecoratedCospan<T> empty_cospan()
{
    return {FinFunction::identity(0), FinFunction::identity(0), T::unit()};
}

inline void require_composable(FinSetOb right_foot, FinSetOb left_foot)
{
    if (right_foot != left_foot) {
        throw ComposabilityError("cannot compose: right foot has " + std::to_string(right_foot.size)
                                 + " elements but the next left foot has " + std::to_string(left_foot.size));
    }
}

// M ⊙ N: pushout of the apexes over the shared foot, decoration F(ψ)(φ(s, t)).
template <DecorationTheory T>
DecoratedCospan<T> compose_h(const DecoratedCospan<T> &m, const DecoratedCospan<T> &n)
{
    require_composable(m.foot_right(), n.foot_left());
    auto po = pushout(m.right_leg, n.left_leg);
    auto deco = T::reindex(po.quotient, T::laxator(m.decoration, n.decoration));
    return {compose(po.left, m.left_leg), compose(po.right, n.right_leg), std::move(deco)};
}

template <DecorationTheory T>
DecoratedCospan<T> tensor_h(const DecoratedCospan<T> &m, const DecoratedCospan<T> &n)
{
    return {sum(m.left_leg, n.left_leg), sum(m.right_leg, n.right_leg), T::laxator(m.decoration, n.decoration)};
}

// A globular isomorphism between cospans with the same feet: an apex
// bijection commuting with the legs plus a fibre isomorphism F(h)(s) ≅ s'.
template <DecorationTheory T>
struct GlobularIso {
    FinFunction apex;
    typename T::FiberMorphism tau;
};

template <DecorationTheory T>
std::optional<GlobularIso<T>> iso_cospan(const DecoratedCospan<T> &m, const DecoratedCospan<T> &n,
                                         SearchBudget &budget)
{
    if (m.foot_left() != n.foot_left() || m.foot_right() != n.foot_right() || m.apex() != n.apex()) {
        return std::nullopt;
    }
    std::vector<std::pair<std::size_t, std::size_t>> pins;
    for (std::size_t x = 0; x < m.left_leg.dom_size(); ++x) {
        pins.emplace_back(m.left_leg(x), n.left_leg(x));
    }
    for (std::size_t y = 0; y < m.right_leg.dom_size(); ++y) {
        pins.emplace_back(m.right_leg(y), n.right_leg(y));
    }
    std::optional<typename T::FiberMorphism> tau;
    const auto pm = T::vertex_profiles(m.decoration);
    const auto pn = T::vertex_profiles(n.decoration);
    auto accept = [&](std::span<const std::size_t> partial) {
        if (!partial.empty() && !T::profiles_match(pm[partial.size() - 1], pn[partial.back()])) {
            return false;
        }
        if (partial.size() < m.apex().size) {
            return true;
        }
        FinFunction h(n.apex().size, {partial.begin(), partial.end()});
        tau = T::find_fiber_iso(T::reindex(h, m.decoration), n.decoration, budget);
        return tau.has_value();
    };
    auto h = find_iso(m.apex(), n.apex(), pins, accept, budget);
    if (!h) {
        return std::nullopt;
    }
    return GlobularIso<T>{std::move(*h), std::move(*tau)};
}

template <DecorationTheory T>
std::optional<GlobularIso<T>> iso_cospan(const DecoratedCospan<T> &m, const DecoratedCospan<T> &n)
{
    SearchBudget budget;
    return iso_cospan(m, n, budget);
}

template <System S>
struct StructuredCospan {
    using SystemType = S;

    S left_foot;
    S apex;
    S right_foot;
    SystemMorphism left_leg;
    SystemMorphism right_leg;

    StructuredCospan() = default;
    StructuredCospan(S lf, S x, S rf, SystemMorphism l, SystemMorphism r)
        : left_foot(std::move(lf)), apex(std::move(x)), right_foot(std::move(rf)), left_leg(std::move(l)),
          right_leg(std::move(r))
    {
        for (auto [leg, foot, side] : {std::tuple{&left_leg, &left_foot, "left"}, {&right_leg, &right_foot, "right"}}) {
            auto v = validate_morphism(*leg, *foot, apex);
            if (!v.empty()) {
                throw InvalidSystem(std::string("structured cospan: ") + side + " leg is not a morphism (" + v.front()
                                    + ")");
            }
        }
    }

    // Both feet lie in the image of L, i.e. are discrete.
    bool is_l_structured() const
    {
        return is_discrete(left_foot) && is_discrete(right_foot);
    }
    FinSetOb foot_left_set() const
    {
        return interface_of(left_foot);
    }
    FinSetOb foot_right_set() const
    {
        return interface_of(right_foot);
    }

    friend bool operator==(const StructuredCospan &, const StructuredCospan &) = default;
};

// L(a) -> x <- L(b) from bare leg functions into the vertices of x.
template <System S>
StructuredCospan<S> make_structured(const FinFunction &left, const FinFunction &right, S apex)
{
    auto e = apex.edge_count();
    if constexpr (has_rates<S>) {
        // Every transition has an empty fibre over a discrete foot, so the
        // rate-sum rule only admits legs into nets whose rates are all zero.
        for (std::size_t t = 0; t < e; ++t) {
            if (apex.rates[t] != 0.0) {
                throw KindError("no structured representation: transition " + std::to_string(t) + " has rate "
                                + std::to_string(apex.rates[t])
                                + ", and a discrete foot maps only into nets whose rates are all zero");
            }
        }
    }
    SystemMorphism l{left, FinFunction::initial(e)};
    SystemMorphism r{right, FinFunction::initial(e)};
    return StructuredCospan<S>(S::discrete(left.dom_size()), std::move(apex), S::discrete(right.dom_size()),
                               std::move(l), std::move(r));
}

template <System S>
StructuredCospan<S> identity_structured(FinSetOb a)
{
    return make_structured(FinFunction::identity(a.size), FinFunction::identity(a.size), S::discrete(a.size));
}

template <System S>
StructuredCospan<S> compose_h(const StructuredCospan<S> &m, const StructuredCospan<S> &n)
{
    require_composable(m.foot_right_set(), n.foot_left_set());
    if (!(m.right_foot == n.left_foot)) {
        throw ComposabilityError("cannot compose: the shared foot systems differ");
    }
    auto po = system_pushout(m.right_foot, m.apex, n.apex, m.right_leg, n.left_leg);
    return StructuredCospan<S>(m.left_foot, std::move(po.object), n.right_foot, compose(po.left, m.left_leg),
                               compose(po.right, n.right_leg));
}

template <System S>
StructuredCospan<S> tensor_h(const StructuredCospan<S> &m, const StructuredCospan<S> &n)
{
    return StructuredCospan<S>(system_coproduct(m.left_foot, n.left_foot).object,
                               system_coproduct(m.apex, n.apex).object,
                               system_coproduct(m.right_foot, n.right_foot).object, sum(m.left_leg, n.left_leg),
                               sum(m.right_leg, n.right_leg));
}

// A system isomorphism between the apexes commuting with both legs.
template <System S>
std::optional<SystemMorphism> iso_cospan(const StructuredCospan<S> &m, const StructuredCospan<S> &n,
                                         SearchBudget &budget)
{
    if (!(m.left_foot == n.left_foot) || !(m.right_foot == n.right_foot)) {
        return std::nullopt;
    }
    std::vector<std::pair<std::size_t, std::size_t>> vpins, epins;
    for (const auto *pair : {&m.left_leg, &m.right_leg}) {
        const auto &other = pair == &m.left_leg ? n.left_leg : n.right_leg;
        for (std::size_t x = 0; x < pair->vertex_map.dom_size(); ++x) {
            vpins.emplace_back(pair->vertex_map(x), other.vertex_map(x));
        }
        for (std::size_t x = 0; x < pair->edge_map.dom_size(); ++x) {
            epins.emplace_back(pair->edge_map(x), other.edge_map(x));
        }
    }
    return find_system_iso(m.apex, n.apex, vpins, epins, budget);
}

template <System S>
std::optional<SystemMorphism> iso_cospan(const StructuredCospan<S> &m, const StructuredCospan<S> &n)
{
    SearchBudget budget;
    return iso_cospan(m, n, budget);
}

} // namespace opencospan
