#include <gtest/gtest.h>

#include "support/generators.hpp"

using namespace opencospan;
using namespace testing_support;

namespace
{

DecoratedCospan<GraphTheory> intro_open_graph()
{
    return {FinFunction(4, {0}), FinFunction(4, {3}), Graph(4, {0, 0, 1, 2, 1}, {1, 2, 3, 3, 2})};
}

// The same cospan with its apex relabelled by a permutation.
template <DecorationTheory T>
DecoratedCospan<T> relabelled(const DecoratedCospan<T> &m, const FinFunction &p)
{
    return {compose(p, m.left_leg), compose(p, m.right_leg), T::reindex(p, m.decoration)};
}

} // namespace

TEST(DecoratedCospan, LegsMustLandInApex)
{
    EXPECT_THROW(DecoratedCospan<GraphTheory>(FinFunction(3, {0}), FinFunction(4, {0}), Graph::discrete(4)),
                 InvalidSystem);
}

TEST(DecoratedCospan, IntroGraphComposedWithItself)
{
    auto g = intro_open_graph();
    auto gg = compose_h(g, g);
    EXPECT_EQ(gg.apex().size, 7u);
    EXPECT_EQ(gg.decoration.edge_count(), 10u);
    EXPECT_EQ(gg.foot_left().size, 1u);
    EXPECT_EQ(gg.foot_right().size, 1u);
    // The glued node is the old n4 of the first copy and n1 of the second.
    auto po = pushout(g.right_leg, g.left_leg);
    EXPECT_EQ(po.left(3), po.right(0));
}

TEST(DecoratedCospan, FootMismatchIsComposabilityError)
{
    auto g = intro_open_graph();
    auto id2 = identity_cospan<GraphTheory>({2});
    EXPECT_THROW(compose_h(g, id2), ComposabilityError);
}

TEST(DecoratedCospan, TensorIsBlockSum)
{
    auto g = intro_open_graph();
    auto t = tensor_h(g, g);
    EXPECT_EQ(t.apex().size, 8u);
    EXPECT_EQ(t.decoration.edge_count(), 10u);
    EXPECT_EQ(t.left_leg.table(), (std::vector<std::size_t>{0, 4}));
    EXPECT_EQ(t.right_leg.table(), (std::vector<std::size_t>{3, 7}));
}

TEST(DecoratedCospan, TensorSymmetricUpToIso)
{
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = random_open_system<Graph>(rng, 1, 1, 3, 3);
        auto n = random_open_system<Graph>(rng, 1, 1, 3, 3);
        auto mn = tensor_h(m, n);
        auto nm = tensor_h(n, m);
        // Swap the blocks of the feet so both cospans have the same boundary.
        FinFunction swap(2, {1, 0});
        DecoratedCospan<GraphTheory> nm_swapped{compose(nm.left_leg, swap), compose(nm.right_leg, swap),
                                                nm.decoration};
        EXPECT_TRUE(iso_cospan(mn, nm_swapped).has_value());
    }
}

TEST(DecoratedCospan, IsoFindsRelabelledApex)
{
    Rng rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = random_open_system<PetriNet>(rng, 2, 1, 6, 3);
        auto p = random_permutation(rng, m.apex().size);
        auto n = relabelled(m, p);
        auto iso = iso_cospan(m, n);
        ASSERT_TRUE(iso.has_value());
        EXPECT_EQ(compose(iso->apex, m.left_leg), n.left_leg);
        EXPECT_EQ(compose(iso->apex, m.right_leg), n.right_leg);
        EXPECT_TRUE(PetriTheory::fiber_morphism_violations(iso->tau, PetriTheory::reindex(iso->apex, m.decoration),
                                                           n.decoration)
                        .empty());
    }
}

TEST(DecoratedCospan, IsoAgreesWithBijectionEnumeration)
{
    Rng rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        auto m = random_open_system<Graph>(rng, 1, 1, 4, 3);
        auto n = rng.coin() ? relabelled(m, random_permutation(rng, m.apex().size))
                            : random_open_system<Graph>(rng, 1, 1, 4, 3);
        bool exists = false;
        if (m.apex() == n.apex() && m.decoration.edge_count() == n.decoration.edge_count()) {
            auto a = m.apex().size, e = m.decoration.edge_count();
            for_each_bijection(a, [&](const std::vector<std::size_t> &ht) {
                FinFunction h(a, ht);
                if (compose(h, m.left_leg) != n.left_leg || compose(h, m.right_leg) != n.right_leg) {
                    return true;
                }
                for_each_bijection(e, [&](const std::vector<std::size_t> &kt) {
                    exists = exists
                             || validate_morphism(SystemMorphism{h, FinFunction(e, kt)}, m.decoration, n.decoration)
                                    .empty();
                    return !exists;
                });
                return !exists;
            });
        }
        EXPECT_EQ(iso_cospan(m, n).has_value(), exists);
    }
}

TEST(DecoratedCospan, DifferentEdgeCountsNotIso)
{
    auto g = intro_open_graph();
    DecoratedCospan<GraphTheory> h{g.left_leg, g.right_leg, Graph(4, {0, 0, 1, 2}, {1, 2, 3, 3})};
    EXPECT_FALSE(iso_cospan(g, h).has_value());
}

template <class T>
class CospanLaws : public ::testing::Test
{
};
using LawTheories = ::testing::Types<GraphTheory, CircuitTheory, PetriTheory, RatedPetriTheory>;
TYPED_TEST_SUITE(CospanLaws, LawTheories);

TYPED_TEST(CospanLaws, AssociativeAndUnitalUpToIso)
{
    using T = TypeParam;
    using S = typename T::Decoration;
    Rng rng(44);
    for (int trial = 0; trial < 15; ++trial) {
        auto a = rng.between(0, 2), b = rng.between(0, 2), c = rng.between(0, 2), d = rng.between(0, 2);
        auto l = random_open_system<S>(rng, a, b, 4, 2);
        auto m = random_open_system<S>(rng, b, c, 4, 2);
        auto n = random_open_system<S>(rng, c, d, 4, 2);
        EXPECT_TRUE(iso_cospan(compose_h(compose_h(l, m), n), compose_h(l, compose_h(m, n))).has_value());
        EXPECT_TRUE(iso_cospan(compose_h(identity_cospan<T>(l.foot_left()), l), l).has_value());
        EXPECT_TRUE(iso_cospan(compose_h(l, identity_cospan<T>(l.foot_right())), l).has_value());
    }
}

TYPED_TEST(CospanLaws, InterchangeUpToIso)
{
    using T = TypeParam;
    using S = typename T::Decoration;
    Rng rng(45);
    for (int trial = 0; trial < 15; ++trial) {
        auto m1 = random_open_system<S>(rng, 1, 1, 3, 2);
        auto n1 = random_open_system<S>(rng, 1, 2, 3, 2);
        auto m2 = random_open_system<S>(rng, 1, 2, 3, 2);
        auto n2 = random_open_system<S>(rng, 2, 1, 3, 2);
        auto lhs = compose_h(tensor_h(m1, n1), tensor_h(m2, n2));
        auto rhs = tensor_h(compose_h(m1, m2), compose_h(n1, n2));
        EXPECT_TRUE(iso_cospan(lhs, rhs).has_value());
    }
}

TEST(StructuredCospan, LegsMustBeMorphisms)
{
    Graph apex(2, {0}, {1});
    Graph foot(1, {0}, {0}); // a loop cannot map onto the edge 0 -> 1
    SystemMorphism leg{FinFunction(2, {0}), FinFunction(1, {0})};
    EXPECT_THROW(StructuredCospan<Graph>(foot, apex, Graph::discrete(0), leg,
                                         SystemMorphism{FinFunction::initial(2), FinFunction::initial(1)}),
                 InvalidSystem);
}

TEST(StructuredCospan, ComposeGluesSystems)
{
    auto s = to_structured(intro_open_graph());
    auto ss = compose_h(s, s);
    EXPECT_EQ(ss.apex.vertex_count(), 7u);
    EXPECT_EQ(ss.apex.edge_count(), 10u);
    EXPECT_TRUE(ss.is_l_structured());
}

TEST(StructuredCospan, IsoFindsRelabelledApex)
{
    Rng rng(46);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_open_system<LabeledGraph>(rng, 1, 2, 5, 3);
        auto n = relabelled(m, random_permutation(rng, m.apex().size));
        auto iso = iso_cospan(to_structured(m), to_structured(n));
        ASSERT_TRUE(iso.has_value());
        EXPECT_TRUE(validate_morphism(*iso, m.decoration, n.decoration).empty());
    }
}

template <class S>
class Translation : public ::testing::Test
{
};
using UnratedSystems = ::testing::Types<Graph, LabeledGraph, PetriNet>;
TYPED_TEST_SUITE(Translation, UnratedSystems);

TYPED_TEST(Translation, RoundTripsAreIdentities)
{
    using S = TypeParam;
    Rng rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = random_open_system<S>(rng, rng.between(0, 3), rng.between(0, 3), 5, 4);
        auto s = to_structured(m);
        EXPECT_TRUE(s.is_l_structured());
        EXPECT_EQ(to_decorated(s), m);
        EXPECT_EQ(to_structured(to_decorated(s)), s);
    }
}

TYPED_TEST(Translation, PreservesComposeAndTensorExactly)
{
    using S = TypeParam;
    Rng rng(48);
    for (int trial = 0; trial < 40; ++trial) {
        auto b = rng.between(0, 3);
        auto m = random_open_system<S>(rng, rng.between(0, 2), b, 4, 3);
        auto n = random_open_system<S>(rng, b, rng.between(0, 2), 4, 3);
        EXPECT_EQ(to_structured(compose_h(m, n)), compose_h(to_structured(m), to_structured(n)));
        EXPECT_EQ(to_structured(tensor_h(m, n)), tensor_h(to_structured(m), to_structured(n)));
    }
}

TEST(Translation, TrivialDecorationGivesDiscreteSystems)
{
    auto id = identity_cospan<PetriTheory>({3});
    auto s = to_structured(id);
    EXPECT_TRUE(is_discrete(s.apex));
    EXPECT_TRUE(s.is_l_structured());
}

TEST(Translation, NonDiscreteFootNotInImageOfL)
{
    Graph loop(1, {0}, {0});
    StructuredCospan<Graph> s(loop, loop, Graph::discrete(0), SystemMorphism::identity(loop),
                              SystemMorphism{FinFunction::initial(1), FinFunction::initial(1)});
    EXPECT_FALSE(s.is_l_structured());
    EXPECT_THROW(to_decorated(s), NotInImageOfL);
}

TEST(Translation, RatedNetsWithPositiveRatesHaveNoStructuredForm)
{
    std::vector<Multiset> src{Multiset(std::vector<std::uint32_t>{1})};
    std::vector<Multiset> tgt{Multiset(std::vector<std::uint32_t>{0})};
    DecoratedCospan<RatedPetriTheory> m{FinFunction(1, {0}), FinFunction(1, {0}),
                                        PetriNetWithRates(PetriNet(1, src, tgt), {0.5})};
    EXPECT_THROW(to_structured(m), KindError);
    DecoratedCospan<RatedPetriTheory> z{FinFunction(1, {0}), FinFunction(1, {0}),
                                        PetriNetWithRates(PetriNet(1, src, tgt), {0.0})};
    EXPECT_EQ(to_decorated(to_structured(z)), z);
}

TEST(Grothendieck, MorphismsComposeAndMatchSystemMorphisms)
{
    Rng rng(49);
    for (int trial = 0; trial < 30; ++trial) {
        auto x = random_system<Graph>(rng, 3, 3);
        auto f = random_function(rng, 3, 2);
        auto g = random_function(rng, 2, 2);
        auto y = GraphTheory::reindex(f, x);
        auto z = GraphTheory::reindex(g, y);
        GrothendieckMorphism<GraphTheory> a{f, FinFunction::identity(x.edge_count())};
        GrothendieckMorphism<GraphTheory> b{g, FinFunction::identity(y.edge_count())};
        EXPECT_TRUE(validate_grothendieck(a, x, y).empty());
        EXPECT_TRUE(validate_grothendieck(b, y, z).empty());
        auto ba = compose(b, a);
        EXPECT_TRUE(validate_grothendieck(ba, x, z).empty());
        EXPECT_TRUE(validate_morphism(to_system_morphism(ba), x, z).empty());
        EXPECT_EQ(compose(to_system_morphism(b), to_system_morphism(a)), to_system_morphism(ba));
    }
}

TEST(Grothendieck, LariIsDiscreteAndForgetInvertsIt)
{
    for (std::size_t n = 0; n < 5; ++n) {
        auto l = lari<PetriTheory>({n});
        EXPECT_TRUE(is_discrete(l));
        EXPECT_EQ(forget<PetriTheory>(l).size, n);
    }
}
