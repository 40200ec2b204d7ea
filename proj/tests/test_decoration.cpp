#include <gtest/gtest.h>

#include "support/generators.hpp"

using namespace opencospan;
using namespace testing_support;

TEST(GraphTheory, ReindexCollapsesEdgeToLoop)
{
    Graph g(2, {0}, {1});
    auto r = GraphTheory::reindex(FinFunction(1, {0, 0}), g);
    EXPECT_EQ(r, Graph(1, {0}, {0}));
}

TEST(GraphTheory, UnitIsEmptyGraph)
{
    EXPECT_EQ(GraphTheory::unit(), Graph::discrete(0));
    EXPECT_EQ(GraphTheory::unit().edge_count(), 0u);
}

TEST(GraphTheory, TrivialIsDiscrete)
{
    for (std::size_t n = 0; n < 5; ++n) {
        auto d = GraphTheory::trivial(n);
        EXPECT_EQ(d.vertex_count(), n);
        EXPECT_EQ(d.edge_count(), 0u);
    }
}

template <class T>
class Theories : public ::testing::Test
{
};
using TheoryTypes = ::testing::Types<GraphTheory, CircuitTheory, PetriTheory, RatedPetriTheory>;
TYPED_TEST_SUITE(Theories, TheoryTypes);

TYPED_TEST(Theories, ReindexIsStrictlyFunctorial)
{
    using T = TypeParam;
    using S = typename T::Decoration;
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        auto n = rng.between(0, 5);
        auto d = random_system<S>(rng, n, rng.between(0, 4));
        EXPECT_TRUE(T::equal(T::reindex(FinFunction::identity(n), d), d));
        auto f = random_function(rng, n, rng.between(1, 4));
        auto g = random_function(rng, f.cod_size(), rng.between(1, 4));
        EXPECT_TRUE(T::equal(T::reindex(compose(g, f), d), T::reindex(g, T::reindex(f, d))));
    }
}

TYPED_TEST(Theories, LaxatorCoherentUpToFibreIso)
{
    using T = TypeParam;
    using S = typename T::Decoration;
    Rng rng(32);
    for (int trial = 0; trial < 30; ++trial) {
        auto d = random_system<S>(rng, rng.between(0, 3), rng.between(0, 2));
        auto e = random_system<S>(rng, rng.between(0, 3), rng.between(0, 2));
        auto f = random_function(rng, d.vertex_count(), rng.between(1, 3));
        auto g = random_function(rng, e.vertex_count(), rng.between(1, 3));
        auto lhs = T::laxator(T::reindex(f, d), T::reindex(g, e));
        auto rhs = T::reindex(sum(f, g), T::laxator(d, e));
        SearchBudget budget;
        auto iso = T::find_fiber_iso(lhs, rhs, budget);
        ASSERT_TRUE(iso.has_value());
        EXPECT_TRUE(T::fiber_morphism_violations(*iso, lhs, rhs).empty());
    }
}

TYPED_TEST(Theories, LaxatorUnitLaw)
{
    using T = TypeParam;
    using S = typename T::Decoration;
    Rng rng(33);
    auto d = random_system<S>(rng, 3, 2);
    EXPECT_TRUE(T::equal(T::laxator(T::unit(), d), d));
    EXPECT_TRUE(T::equal(T::laxator(d, T::unit()), d));
}

TYPED_TEST(Theories, FibreMorphismsFixVertices)
{
    using T = TypeParam;
    using S = typename T::Decoration;
    Rng rng(34);
    auto d = random_system<S>(rng, 3, 2);
    EXPECT_TRUE(T::fiber_morphism_violations(T::identity(d), d, d).empty());
    EXPECT_FALSE(T::fiber_morphism_violations(T::identity(d), d, T::trivial(4)).empty());
}

TYPED_TEST(Theories, TrivialDecorationOnlyRatedFailsInitiality)
{
    using T = TypeParam;
    using S = typename T::Decoration;
    Rng rng(35);
    // The empty edge map out of I_n is a fibre morphism into any decoration
    // over n, except for rated nets with a positive rate.
    for (int trial = 0; trial < 20; ++trial) {
        auto d = random_system<S>(rng, 3, rng.between(1, 3));
        auto bang = FinFunction::initial(d.edge_count());
        bool ok = T::fiber_morphism_violations(bang, T::trivial(3), d).empty();
        if constexpr (has_rates<S>) {
            bool all_zero = std::all_of(d.rates.begin(), d.rates.end(), [](double r) { return r == 0.0; });
            EXPECT_EQ(ok, all_zero);
        } else {
            EXPECT_TRUE(ok);
        }
    }
}

TEST(DynamicalTheory, ReindexIsPushforward)
{
    // v(a, b) = (x_b, x_a) along [0,0] becomes (2 x_c).
    PolyVectorField v(2, {Polynomial::variable(2, 1), Polynomial::variable(2, 0)});
    auto r = DynamicalDecoration::reindex(FinFunction(1, {0, 0}), v);
    EXPECT_EQ(r, PolyVectorField(1, {Polynomial::variable(1, 0, 2.0)}));
}

TEST(DynamicalTheory, LaxatorIsDirectSumAndUnitIsEmpty)
{
    PolyVectorField v(1, {Polynomial::variable(1, 0)});
    PolyVectorField w(1, {Polynomial::constant(1, 3.0)});
    auto s = DynamicalDecoration::laxator(v, w);
    EXPECT_EQ(s.size(), 2u);
    std::vector<double> c{2.0, 5.0};
    EXPECT_EQ(s.evaluate(c), (std::vector<double>{2.0, 3.0}));
    EXPECT_EQ(DynamicalDecoration::unit().size(), 0u);
    EXPECT_TRUE(DynamicalDecoration::trivial(3).is_zero());
}

TEST(DynamicalTheory, FibresAreDiscrete)
{
    PolyVectorField v(1, {Polynomial::variable(1, 0)});
    SearchBudget budget;
    EXPECT_TRUE(DynamicalDecoration::find_fiber_iso(v, v, budget).has_value());
    EXPECT_FALSE(DynamicalDecoration::find_fiber_iso(v, PolyVectorField::zero(1), budget).has_value());
    EXPECT_FALSE(DynamicalDecoration::fiber_morphism_violations({}, v, PolyVectorField::zero(1)).empty());
}
