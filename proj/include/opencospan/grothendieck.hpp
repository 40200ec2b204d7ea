#pragma once

// The total category ∫F of a system decoration theory and the translation
// between decorated and structured cospans.
//
// For SystemDecoration<S>, an object (a, s ∈ F(a)) of ∫F is a system with
// vertex set a, so ∫F is the system category S itself. A morphism
// (f, k) : (a, s) -> (b, t) is a function f : a -> b plus a fibre morphism
// k : F(f)(s) -> t, which is the same data as a SystemMorphism {f, k}. The
// left adjoint L : FinSet -> ∫F sends a to (a, I_a), the discrete system, and
// U(L(a)) = a on the nose.

#include <string>
#include <vector>

#include "two_cell.hpp"

namespace opencospan
{

template <DecorationTheory T>
struct GrothendieckMorphism {
    FinFunction base;
    typename T::FiberMorphism fiber;
};

template <DecorationTheory T>
std::vector<std::string> validate_grothendieck(const GrothendieckMorphism<T> &m, const typename T::Decoration &from,
                                               const typename T::Decoration &to)
{
    if (m.base.dom_size() != T::base_size(from) || m.base.cod_size() != T::base_size(to)) {
        return {"base map does not go between the underlying sets"};
    }
    return T::fiber_morphism_violations(m.fiber, T::reindex(m.base, from), to);
}

// (g, l) ∘ (f, k) = (g ∘ f, l ∘ F(g)(k))
template <DecorationTheory T>
GrothendieckMorphism<T> compose(const GrothendieckMorphism<T> &g, const GrothendieckMorphism<T> &f)
{
    return {compose(g.base, f.base), T::compose(g.fiber, T::reindex_morphism(g.base, f.fiber))};
}

template <DecorationTheory T>
typename T::Decoration lari(FinSetOb a)
{
    return T::trivial(a.size);
}

template <DecorationTheory T>
FinSetOb forget(const typename T::Decoration &d)
{
    return {T::base_size(d)};
}

template <System S>
SystemMorphism to_system_morphism(const GrothendieckMorphism<SystemDecoration<S>> &m)
{
    return {m.base, m.fiber};
}

template <System S>
GrothendieckMorphism<SystemDecoration<S>> from_system_morphism(const SystemMorphism &m)
{
    return {m.vertex_map, m.edge_map};
}

// (a -i-> m <-o- b, s)  |->  (a, I_a) -(i, !)-> (m, s) <-(o, !)- (b, I_b)
template <System S>
StructuredCospan<S> to_structured(const DecoratedCospan<SystemDecoration<S>> &d)
{
    return make_structured(d.left_leg, d.right_leg, d.decoration);
}

template <System S>
DecoratedCospan<SystemDecoration<S>> to_decorated(const StructuredCospan<S> &s)
{
    if (!s.is_l_structured()) {
        throw NotInImageOfL("structured cospan has a foot with " + std::to_string(std::max(
                                                                         s.left_foot.edge_count(),
                                                                         s.right_foot.edge_count()))
                            + " " + std::string(S::edge_noun) + "s; only discrete feet come from finite sets");
    }
    return {s.left_leg.vertex_map, s.right_leg.vertex_map, s.apex};
}

template <System S>
StructuredTwoMorphism<S> to_structured(const TwoMorphism<SystemDecoration<S>> &a)
{
    return {to_structured(a.source), to_structured(a.target), a.left, a.right, SystemMorphism{a.apex, a.tau}};
}

template <System S>
TwoMorphism<SystemDecoration<S>> to_decorated(const StructuredTwoMorphism<S> &a)
{
    return {to_decorated(a.source), to_decorated(a.target), a.left, a.right, a.apex.vertex_map, a.apex.edge_map};
}

} // namespace opencospan
