#pragma once

// 2-morphisms between horizontal 1-cells, their two compositions, the
// unitors, and companions/conjoints of vertical morphisms.
//
// A decorated 2-morphism from M = (a -i-> m <-o- b, s) to
// M' = (a' -i'-> m' <-o'- b', s') is a triple of functions
//
//        a ---i---> m <---o--- b
//        |left      |apex      |right
//        v          v          v
//        a' --i'--> m' <--o'-- b'
//
// making both squares commute, together with a fibre morphism
// tau : F(apex)(s) -> s'.

#include <optional>
#include <string>
#include <vector>

#include "cospan.hpp"

namespace opencospan
{

template <DecorationTheory T>
struct TwoMorphism {
    DecoratedCospan<T> source;
    DecoratedCospan<T> target;
    FinFunction left;
    FinFunction right;
    FinFunction apex;
    typename T::FiberMorphism tau;
};

template <DecorationTheory T>
bool same_two_morphism(const TwoMorphism<T> &a, const TwoMorphism<T> &b)
{
    return same_cospan(a.source, b.source) && same_cospan(a.target, b.target) && a.left == b.left
           && a.right == b.right && a.apex == b.apex && a.tau == b.tau;
}

template <DecorationTheory T>
std::vector<std::string> validate_two_morphism(const TwoMorphism<T> &a)
{
    std::vector<std::string> out;
    auto check_map = [&](const FinFunction &f, FinSetOb dom, FinSetOb cod, const char *what) {
        if (f.dom() != dom || f.cod() != cod) {
            out.push_back(std::string(what) + " map has shape " + std::to_string(f.dom_size()) + "->"
                          + std::to_string(f.cod_size()) + ", expected " + std::to_string(dom.size) + "->"
                          + std::to_string(cod.size));
            return false;
        }
        return true;
    };
    bool shapes = check_map(a.left, a.source.foot_left(), a.target.foot_left(), "left")
                  & check_map(a.right, a.source.foot_right(), a.target.foot_right(), "right")
                  & check_map(a.apex, a.source.apex(), a.target.apex(), "apex");
    if (!shapes) {
        return out;
    }
    for (std::size_t x = 0; x < a.left.dom_size(); ++x) {
        if (a.apex(a.source.left_leg(x)) != a.target.left_leg(a.left(x))) {
            out.push_back("left square fails at foot element " + std::to_string(x));
        }
    }
    for (std::size_t y = 0; y < a.right.dom_size(); ++y) {
        if (a.apex(a.source.right_leg(y)) != a.target.right_leg(a.right(y))) {
            out.push_back("right square fails at foot element " + std::to_string(y));
        }
    }
    for (auto &v : T::fiber_morphism_violations(a.tau, T::reindex(a.apex, a.source.decoration),
                                                a.target.decoration)) {
        out.push_back("decoration morphism: " + v);
    }
    return out;
}

// Identity 2-morphism on a horizontal 1-cell.
template <DecorationTheory T>
TwoMorphism<T> identity_two_morphism(const DecoratedCospan<T> &m)
{
    return {m,
            m,
            FinFunction::identity(m.foot_left().size),
            FinFunction::identity(m.foot_right().size),
            FinFunction::identity(m.apex().size),
            T::identity(m.decoration)};
}

// U_f : U_a => U_b for a vertical morphism f : a -> b.
template <DecorationTheory T>
TwoMorphism<T> identity_two_morphism(const FinFunction &f)
{
    auto target = identity_cospan<T>(f.cod());
    return {identity_cospan<T>(f.dom()), target, f, f, f, T::identity(target.decoration)};
}

// β ∘ α (α on top).
template <DecorationTheory T>
TwoMorphism<T> compose_v(const TwoMorphism<T> &alpha, const TwoMorphism<T> &beta)
{
    if (!same_cospan(alpha.target, beta.source)) {
        throw BoundaryError("vertical composite: target of the first 2-morphism is not the source of the second");
    }
    return {alpha.source,
            beta.target,
            compose(beta.left, alpha.left),
            compose(beta.right, alpha.right),
            compose(beta.apex, alpha.apex),
            T::compose(beta.tau, T::reindex_morphism(beta.apex, alpha.tau))};
}

// α ⊙ β (α on the left). The apex map is the map induced between the two
// pushouts; tau is F(ψ')(φ(τ_α, τ_β)).
template <DecorationTheory T>
TwoMorphism<T> compose_h2(const TwoMorphism<T> &alpha, const TwoMorphism<T> &beta)
{
    if (alpha.right != beta.left) {
        throw BoundaryError("horizontal composite: right vertical of the first 2-morphism differs from the left "
                            "vertical of the second");
    }
    require_composable(alpha.source.foot_right(), beta.source.foot_left());
    require_composable(alpha.target.foot_right(), beta.target.foot_left());
    auto po = pushout(alpha.source.right_leg, beta.source.left_leg);
    auto po_t = pushout(alpha.target.right_leg, beta.target.left_leg);
    auto apex = factor_through(po.quotient, compose(po_t.quotient, sum(alpha.apex, beta.apex)));
    auto tau = T::reindex_morphism(po_t.quotient, T::laxator_morphism(alpha.tau, beta.tau));
    return {compose_h(alpha.source, beta.source),
            compose_h(alpha.target, beta.target),
            alpha.left,
            beta.right,
            std::move(apex),
            std::move(tau)};
}

namespace detail
{

// Globular 2-morphism whose decoration component is the identity; used where
// F(apex)(source decoration) equals the target decoration on the nose.
template <DecorationTheory T>
TwoMorphism<T> strict_globular(const DecoratedCospan<T> &source, const DecoratedCospan<T> &target, FinFunction apex)
{
    if (!T::equal(T::reindex(apex, source.decoration), target.decoration)) {
        throw std::logic_error("strict_globular: decoration is not carried onto the target");
    }
    return {source,
            target,
            FinFunction::identity(source.foot_left().size),
            FinFunction::identity(source.foot_right().size),
            std::move(apex),
            T::identity(target.decoration)};
}

} // namespace detail

// λ_M : U_a ⊙ M => M
template <DecorationTheory T>
TwoMorphism<T> left_unitor(const DecoratedCospan<T> &m)
{
    auto u = identity_cospan<T>(m.foot_left());
    auto po = pushout(u.right_leg, m.left_leg);
    auto apex = factor_through(po.quotient, copair(m.left_leg, FinFunction::identity(m.apex().size)));
    return detail::strict_globular(compose_h(u, m), m, std::move(apex));
}

// ρ_M : M ⊙ U_b => M
template <DecorationTheory T>
TwoMorphism<T> right_unitor(const DecoratedCospan<T> &m)
{
    auto u = identity_cospan<T>(m.foot_right());
    auto po = pushout(m.right_leg, u.left_leg);
    auto apex = factor_through(po.quotient, copair(FinFunction::identity(m.apex().size), m.right_leg));
    return detail::strict_globular(compose_h(m, u), m, std::move(apex));
}

// A horizontal 1-cell packaging a vertical morphism together with its two
// structure 2-morphisms.
//
// Companion of f : a -> b:  f̂ = (a -f-> b <-1- b, I_b)
//   unit   : U_a => f̂   verticals (1_a, f), apex f
//   counit : f̂ => U_b   verticals (f, 1_b), apex 1_b
//
// Conjoint of f:  f̌ = (b -1-> b <-f- a, I_b)
//   unit   : U_a => f̌   verticals (f, 1_a), apex f
//   counit : f̌ => U_b   verticals (1_b, f), apex 1_b
template <DecorationTheory T>
struct Adjoint {
    DecoratedCospan<T> cell;
    TwoMorphism<T> unit;
    TwoMorphism<T> counit;
};

template <DecorationTheory T>
Adjoint<T> companion(const FinFunction &f)
{
    const auto a = f.dom().size;
    const auto b = f.cod().size;
    DecoratedCospan<T> cell(f, FinFunction::identity(b), T::trivial(b));
    auto ua = identity_cospan<T>(f.dom());
    auto ub = identity_cospan<T>(f.cod());
    TwoMorphism<T> unit{ua, cell, FinFunction::identity(a), f, f, T::identity(cell.decoration)};
    TwoMorphism<T> counit{cell, ub, f, FinFunction::identity(b), FinFunction::identity(b), T::identity(ub.decoration)};
    return {std::move(cell), std::move(unit), std::move(counit)};
}

template <DecorationTheory T>
Adjoint<T> conjoint(const FinFunction &f)
{
    const auto a = f.dom().size;
    const auto b = f.cod().size;
    DecoratedCospan<T> cell(FinFunction::identity(b), f, T::trivial(b));
    auto ua = identity_cospan<T>(f.dom());
    auto ub = identity_cospan<T>(f.cod());
    TwoMorphism<T> unit{ua, cell, f, FinFunction::identity(a), f, T::identity(cell.decoration)};
    TwoMorphism<T> counit{cell, ub, FinFunction::identity(b), f, FinFunction::identity(b), T::identity(ub.decoration)};
    return {std::move(cell), std::move(unit), std::move(counit)};
}

// The two equations a companion must satisfy:
//   (1) counit ∘ unit = U_f
//   (2) unit ⊙ counit followed by ρ equals λ   (i.e. unit ⊙ counit = ρ⁻¹ ∘ λ)
// Returns every failure; empty means both hold.
template <DecorationTheory T>
std::vector<std::string> check_companion(const FinFunction &f, const Adjoint<T> &c)
{
    std::vector<std::string> out;
    for (const auto *cell : {&c.unit, &c.counit}) {
        for (auto &v : validate_two_morphism(*cell)) {
            out.push_back((cell == &c.unit ? "unit: " : "counit: ") + v);
        }
    }
    if (!same_cospan(c.unit.target, c.cell) || !same_cospan(c.counit.source, c.cell)) {
        out.push_back("unit and counit do not meet at the packaged cell");
    }
    if (!out.empty()) {
        return out;
    }
    if (!same_two_morphism(compose_v(c.unit, c.counit), identity_two_morphism<T>(f))) {
        out.push_back("first equation fails: counit ∘ unit differs from U_f");
    }
    auto lhs = compose_v(compose_h2(c.unit, c.counit), right_unitor(c.cell));
    if (!same_two_morphism(lhs, left_unitor(c.cell))) {
        out.push_back("second equation fails: ρ ∘ (unit ⊙ counit) differs from λ");
    }
    return out;
}

// Conjoint equations, mirrored:
//   (1) counit ∘ unit = U_f
//   (2) counit ⊙ unit followed by λ equals ρ
template <DecorationTheory T>
std::vector<std::string> check_conjoint(const FinFunction &f, const Adjoint<T> &c)
{
    std::vector<std::string> out;
    for (const auto *cell : {&c.unit, &c.counit}) {
        for (auto &v : validate_two_morphism(*cell)) {
            out.push_back((cell == &c.unit ? "unit: " : "counit: ") + v);
        }
    }
    if (!same_cospan(c.unit.target, c.cell) || !same_cospan(c.counit.source, c.cell)) {
        out.push_back("unit and counit do not meet at the packaged cell");
    }
    if (!out.empty()) {
        return out;
    }
    if (!same_two_morphism(compose_v(c.unit, c.counit), identity_two_morphism<T>(f))) {
        out.push_back("first equation fails: counit ∘ unit differs from U_f");
    }
    auto lhs = compose_v(compose_h2(c.counit, c.unit), left_unitor(c.cell));
    if (!same_two_morphism(lhs, right_unitor(c.cell))) {
        out.push_back("second equation fails: λ ∘ (counit ⊙ unit) differs from ρ");
    }
    return out;
}

// Structured 2-morphisms: a system morphism between apexes commuting with
// the legs, with vertical maps L(left), L(right) on the discrete feet.
template <System S>
struct StructuredTwoMorphism {
    StructuredCospan<S> source;
    StructuredCospan<S> target;
    FinFunction left;
    FinFunction right;
    SystemMorphism apex;
};

template <System S>
std::vector<std::string> validate_two_morphism(const StructuredTwoMorphism<S> &a)
{
    if (!a.source.is_l_structured() || !a.target.is_l_structured()) {
        return {"structured 2-morphisms require discrete feet"};
    }
    std::vector<std::string> out = validate_morphism(a.apex, a.source.apex, a.target.apex);
    if (a.left.dom() != a.source.foot_left_set() || a.left.cod() != a.target.foot_left_set()
        || a.right.dom() != a.source.foot_right_set() || a.right.cod() != a.target.foot_right_set()) {
        out.push_back("vertical maps do not match the feet");
        return out;
    }
    for (std::size_t x = 0; x < a.left.dom_size(); ++x) {
        if (a.apex.vertex_map(a.source.left_leg.vertex_map(x)) != a.target.left_leg.vertex_map(a.left(x))) {
            out.push_back("left square fails at foot element " + std::to_string(x));
        }
    }
    for (std::size_t y = 0; y < a.right.dom_size(); ++y) {
        if (a.apex.vertex_map(a.source.right_leg.vertex_map(y)) != a.target.right_leg.vertex_map(a.right(y))) {
            out.push_back("right square fails at foot element " + std::to_string(y));
        }
    }
    return out;
}

template <System S>
StructuredTwoMorphism<S> compose_v(const StructuredTwoMorphism<S> &alpha, const StructuredTwoMorphism<S> &beta)
{
    if (!(alpha.target == beta.source)) {
        throw BoundaryError("vertical composite: target of the first 2-morphism is not the source of the second");
    }
    return {alpha.source, beta.target, compose(beta.left, alpha.left), compose(beta.right, alpha.right),
            compose(beta.apex, alpha.apex)};
}

template <System S>
StructuredTwoMorphism<S> compose_h2(const StructuredTwoMorphism<S> &alpha, const StructuredTwoMorphism<S> &beta)
{
    if (alpha.right != beta.left) {
        throw BoundaryError("horizontal composite: right vertical of the first 2-morphism differs from the left "
                            "vertical of the second");
    }
    const auto &m = alpha.source;
    const auto &n = beta.source;
    const auto &mt = alpha.target;
    const auto &nt = beta.target;
    auto po = system_pushout(m.right_foot, m.apex, n.apex, m.right_leg, n.left_leg);
    auto po_t = system_pushout(mt.right_foot, mt.apex, nt.apex, mt.right_leg, nt.left_leg);
    auto glued = sum(alpha.apex, beta.apex);
    SystemMorphism apex{factor_through(po.vertex_quotient, compose(po_t.vertex_quotient, glued.vertex_map)),
                        factor_through(po.edge_quotient, compose(po_t.edge_quotient, glued.edge_map))};
    return {compose_h(m, n), compose_h(mt, nt), alpha.left, beta.right, std::move(apex)};
}

} // namespace opencospan
