#pragma once

// Decoration theories: the fibre categories F(N), reindexing F(f), the
// laxator φ, its unit φ_0 and trivial decorations I_a, packaged as a traits
// type so the cospan machinery can be written once.
//
// Two families are provided. SystemDecoration<S> decorates a finite set N
// with a system whose vertex set is exactly N; fibre morphisms are edge maps
// (the vertex map is the identity). DynamicalDecoration decorates N with a
// polynomial vector field on ℝ^N; its fibres are discrete.

#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polynomial.hpp"
#include "systems.hpp"

namespace opencospan
{

template <class T>
concept DecorationTheory = requires(const typename T::Decoration &d, const typename T::FiberMorphism &k,
                                    const FinFunction &f, std::size_t n, SearchBudget &budget) {
    { T::name } -> std::convertible_to<std::string_view>;
    { T::base_size(d) } -> std::same_as<std::size_t>;
    { T::reindex(f, d) } -> std::same_as<typename T::Decoration>;
    { T::reindex_morphism(f, k) } -> std::same_as<typename T::FiberMorphism>;
    { T::laxator(d, d) } -> std::same_as<typename T::Decoration>;
    { T::laxator_morphism(k, k) } -> std::same_as<typename T::FiberMorphism>;
    { T::unit() } -> std::same_as<typename T::Decoration>;
    { T::trivial(n) } -> std::same_as<typename T::Decoration>;
    { T::identity(d) } -> std::same_as<typename T::FiberMorphism>;
    { T::compose(k, k) } -> std::same_as<typename T::FiberMorphism>;
    { T::fiber_morphism_violations(k, d, d) } -> std::same_as<std::vector<std::string>>;
    { T::equal(d, d) } -> std::same_as<bool>;
    { T::find_fiber_iso(d, d, budget) } -> std::same_as<std::optional<typename T::FiberMorphism>>;
    { T::profiles_match(T::vertex_profiles(d)[0], T::vertex_profiles(d)[0]) } -> std::same_as<bool>;
};

template <System S>
struct SystemDecoration {
    using Decoration = S;
    using FiberMorphism = FinFunction; // on edges; identity on vertices
    using SystemType = S;

    static constexpr std::string_view name = kind_name(S::kind);

    static std::size_t base_size(const S &d)
    {
        return d.vertex_count();
    }
    static S reindex(const FinFunction &f, const S &d)
    {
        return relabel(d, f);
    }
    // Reindexing keeps every edge, so a fibre morphism is carried over unchanged.
    static FinFunction reindex_morphism(const FinFunction &, const FinFunction &k)
    {
        return k;
    }
    static S laxator(const S &d, const S &e)
    {
        return system_coproduct(d, e).object;
    }
    static FinFunction laxator_morphism(const FinFunction &k1, const FinFunction &k2)
    {
        return sum(k1, k2);
    }
    static S unit()
    {
        return S::discrete(0);
    }
    static S trivial(std::size_t n)
    {
        return S::discrete(n);
    }
    static FinFunction identity(const S &d)
    {
        return FinFunction::identity(d.edge_count());
    }
    static FinFunction compose(const FinFunction &g, const FinFunction &f)
    {
        return opencospan::compose(g, f);
    }
    static std::vector<std::string> fiber_morphism_violations(const FinFunction &k, const S &from, const S &to)
    {
        if (from.vertex_count() != to.vertex_count()) {
            return {"fibre morphism between decorations over " + std::to_string(from.vertex_count()) + " and "
                    + std::to_string(to.vertex_count()) + " vertices"};
        }
        if (k.dom_size() != from.edge_count() || k.cod_size() != to.edge_count()) {
            return {"fibre morphism has the wrong " + std::string(S::edge_noun) + " shape"};
        }
        return validate_morphism(SystemMorphism{FinFunction::identity(from.vertex_count()), k}, from, to);
    }
    static bool equal(const S &a, const S &b)
    {
        if constexpr (has_rates<S>) {
            if (a.net != b.net || a.rates.size() != b.rates.size()) {
                return false;
            }
            for (std::size_t k = 0; k < a.rates.size(); ++k) {
                if (!rates_match(a.rates[k], b.rates[k])) {
                    return false;
                }
            }
            return true;
        } else {
            return a == b;
        }
    }
    static auto vertex_profiles(const S &d)
    {
        return opencospan::vertex_profiles(d);
    }
    template <class P>
    static bool profiles_match(const P &a, const P &b)
    {
        return a == b;
    }
    static std::optional<FinFunction> find_fiber_iso(const S &a, const S &b, SearchBudget &budget)
    {
        if (a.vertex_count() != b.vertex_count()) {
            return std::nullopt;
        }
        std::vector<std::pair<std::size_t, std::size_t>> pins;
        for (std::size_t v = 0; v < a.vertex_count(); ++v) {
            pins.emplace_back(v, v);
        }
        auto m = find_system_iso(a, b, pins, {}, budget);
        if (!m) {
            return std::nullopt;
        }
        return m->edge_map;
    }
};

// Vector fields form a set over each N, viewed as a discrete category: the
// only fibre morphisms are identities.
struct DynamicalDecoration {
    using Decoration = PolyVectorField;
    struct FiberMorphism {
        friend bool operator==(const FiberMorphism &, const FiberMorphism &) = default;
    };

    static constexpr std::string_view name = "dynam";

    static std::size_t base_size(const PolyVectorField &v)
    {
        return v.size();
    }
    static PolyVectorField reindex(const FinFunction &f, const PolyVectorField &v)
    {
        return pushforward_field(f, v);
    }
    static FiberMorphism reindex_morphism(const FinFunction &, const FiberMorphism &k)
    {
        return k;
    }
    static PolyVectorField laxator(const PolyVectorField &v, const PolyVectorField &w)
    {
        return direct_sum(v, w);
    }
    static FiberMorphism laxator_morphism(const FiberMorphism &, const FiberMorphism &)
    {
        return {};
    }
    static PolyVectorField unit()
    {
        return PolyVectorField::zero(0);
    }
    // F(!_n)(φ_0): the image of the empty field. Not initial in the fibre.
    static PolyVectorField trivial(std::size_t n)
    {
        return PolyVectorField::zero(n);
    }
    static FiberMorphism identity(const PolyVectorField &)
    {
        return {};
    }
    static FiberMorphism compose(const FiberMorphism &, const FiberMorphism &)
    {
        return {};
    }
    static std::vector<std::string> fiber_morphism_violations(const FiberMorphism &, const PolyVectorField &from,
                                                              const PolyVectorField &to)
    {
        if (!approx_equal(from, to)) {
            return {"vector fields differ; the fibre over a set is discrete"};
        }
        return {};
    }
    static bool equal(const PolyVectorField &a, const PolyVectorField &b)
    {
        return approx_equal(a, b);
    }
    // The field pushed forward along the map sending place v to 1 and the
    // rest to 0.
    static std::vector<PolyVectorField> vertex_profiles(const PolyVectorField &v)
    {
        std::vector<PolyVectorField> out;
        for (std::size_t p = 0; p < v.size(); ++p) {
            std::vector<std::size_t> chi(v.size(), 0);
            chi[p] = 1;
            out.push_back(pushforward_field(FinFunction(2, std::move(chi)), v));
        }
        return out;
    }
    static bool profiles_match(const PolyVectorField &a, const PolyVectorField &b)
    {
        return approx_equal(a, b);
    }
    static std::optional<FiberMorphism> find_fiber_iso(const PolyVectorField &a, const PolyVectorField &b,
                                                       SearchBudget &budget)
    {
        budget.consume();
        if (approx_equal(a, b)) {
            return FiberMorphism{};
        }
        return std::nullopt;
    }
};

using GraphTheory = SystemDecoration<Graph>;
using CircuitTheory = SystemDecoration<LabeledGraph>;
using PetriTheory = SystemDecoration<PetriNet>;
using RatedPetriTheory = SystemDecoration<PetriNetWithRates>;

static_assert(DecorationTheory<GraphTheory>);
static_assert(DecorationTheory<CircuitTheory>);
static_assert(DecorationTheory<PetriTheory>);
static_assert(DecorationTheory<RatedPetriTheory>);
static_assert(DecorationTheory<DynamicalDecoration>);

} // namespace opencospan
