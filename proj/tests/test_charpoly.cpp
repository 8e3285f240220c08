#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace diracgraph;
using diracgraph::testing::Rng;

namespace {

std::vector<Complex> random_point(Rng& rng, std::size_t n)
{
    std::vector<Complex> x(n);
    for (auto& v : x) v = diracgraph::testing::gaussian_complex(rng);
    return x;
}

Complex eval(const MultiPoly& p, const std::vector<Complex>& x)
{
    return p.evaluate(std::span<const Complex>(x));
}

} // namespace

TEST(MultiPoly, Arithmetic)
{
    MultiPoly a(3), b(3);
    a.add_term(0b001, 2.0);
    a.add_term(0, -1.0);
    b.add_term(0b010, 1.0);
    const auto prod = a * b;
    EXPECT_EQ(prod.coefficient(0b011), Complex(2.0));
    EXPECT_EQ(prod.coefficient(0b010), Complex(-1.0));
    EXPECT_THROW(a * a, std::domain_error);

    const auto sum = a + b;
    EXPECT_EQ(sum.size(), 3u);
    EXPECT_TRUE((a - a).is_zero());

    const auto sub = a.substitute(0, 3.0);
    EXPECT_EQ(sub.coefficient(0), Complex(5.0));

    const std::vector<std::size_t> pos{2};
    MultiPoly one(1);
    one.add_term(1, 1.0);
    EXPECT_EQ(one.embed(pos, 3).coefficient(0b100), Complex(1.0));
    EXPECT_THROW(a.add_term(0b1000, 1.0), std::out_of_range);
}

TEST(CharPoly, CycleWithPhases)
{
    const double p1 = 0.3, p2 = 1.1;
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = std::polar(1.0, p2);
    m(1, 0) = std::polar(1.0, p1);
    const auto p = char_poly(GEndomorphism(fixtures::directed_cycle(2), m));
    EXPECT_EQ(p.size(), 2u);
    EXPECT_NEAR(std::abs(p.coefficient(0b11) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.coefficient(0) + std::polar(1.0, p1 + p2)), 0.0, 1e-15);
}

TEST(CharPoly, ZeroAndRose)
{
    const auto p0 = char_poly(CMatrix::Zero(4, 4));
    EXPECT_EQ(p0.size(), 1u);
    EXPECT_EQ(p0.coefficient(0b1111), Complex(1.0));

    const auto p = char_poly(build_adjacency(fixtures::rose(2)));
    EXPECT_EQ(p.size(), 3u);
    EXPECT_EQ(p.coefficient(0b11), Complex(1.0));
    EXPECT_EQ(p.coefficient(0b01), Complex(-1.0));
    EXPECT_EQ(p.coefficient(0b10), Complex(-1.0));
}

TEST(CharPoly, AgreesWithNumericDeterminant)
{
    Rng rng(23);
    for (int i = 0; i < 40; ++i) {
        auto g = diracgraph::testing::random_graph(rng, 7);
        const auto a = diracgraph::testing::random_endomorphism(rng, g);
        const auto p = char_poly(a);
        for (const auto& [mask, c] : p.terms()) {
            (void)c;
            EXPECT_LT(mask, Mask{1} << g->edge_count());
        }
        for (int k = 0; k < 20; ++k) {
            const auto x = random_point(rng, g->edge_count());
            const Complex want = diracgraph::testing::numeric_char_poly(a.matrix(), x);
            EXPECT_LE(std::abs(eval(p, x) - want), 1e-9 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST(CharPoly, ReductionSubstitutesProduct)
{
    Rng rng(29);
    for (int i = 0; i < 30; ++i) {
        auto base = diracgraph::testing::random_graph(rng, 5);
        const std::size_t e = std::uniform_int_distribution<std::size_t>(0, base->edge_count() - 1)(rng);
        auto g = diracgraph::testing::subdivide_edge(*base, e, 0.3);
        const auto a = diracgraph::testing::random_endomorphism(rng, g);
        const auto red = reduce_vertex(a, "mid");
        EXPECT_EQ(red.graph->edge_count() + 1, g->edge_count());
        EXPECT_EQ(red.merged_edge, e);
        EXPECT_NEAR(red.graph->length(e), base->length(e), 1e-15);

        for (int k = 0; k < 10; ++k) {
            auto x = random_point(rng, g->edge_count());
            const Complex want = diracgraph::testing::numeric_char_poly(a.matrix(), x);
            std::vector<Complex> y(x.begin(), x.end() - 1);
            y[e] = x[e] * x.back();
            const Complex got = diracgraph::testing::numeric_char_poly(red.endomorphism.matrix(), y);
            EXPECT_LE(std::abs(got - want), 1e-9 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST(CharPoly, ReduceCycleToLoop)
{
    const double p1 = 0.4, p2 = -1.3;
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = std::polar(1.0, p2);
    m(1, 0) = std::polar(1.0, p1);
    const GEndomorphism a(fixtures::directed_cycle(2), m);
    for (const char* v : {"v1", "v2"}) {
        const auto red = reduce_vertex(a, v);
        ASSERT_EQ(red.endomorphism.size(), 1);
        EXPECT_NEAR(std::abs(red.endomorphism.matrix()(0, 0) - std::polar(1.0, p1 + p2)), 0.0, 1e-15);
        EXPECT_TRUE(red.graph->is_loop(0));
    }
    EXPECT_THROW(reduce_vertex(build_adjacency(fixtures::g1()), "a"), PreconditionError);
    EXPECT_THROW(reduce_vertex(build_adjacency(fixtures::rose(1)), "v"), PreconditionError);
}

TEST(CharPoly, PathVertexKeepsRow)
{
    // u -> w -> u with w internal; alpha = 1 leaves the merged row untouched.
    auto g = make_graph({"u", "w"}, {{"a", "u", "w", 1.0}, {"b", "w", "u", 2.0}, {"c", "u", "u", 1.0}});
    CMatrix m = CMatrix::Zero(3, 3);
    m(1, 0) = 1.0;                 // b <- a (alpha)
    m(0, 1) = Complex(0.5, 0.5);   // a <- b
    m(0, 2) = 2.0;                 // a <- c
    m(2, 1) = 3.0;                 // c <- b
    m(2, 2) = -1.0;                // c <- c
    const auto red = reduce_vertex(GEndomorphism(g, m), "w");
    EXPECT_EQ(red.endomorphism.matrix()(0, 1), Complex(2.0));
    EXPECT_EQ(red.endomorphism.matrix()(0, 0), Complex(0.5, 0.5));
    EXPECT_EQ(red.endomorphism.matrix()(1, 0), Complex(3.0));
    EXPECT_DOUBLE_EQ(red.graph->length(0), 3.0);
}

TEST(CharPoly, LoopSplittingKeepsAdjacencyPolynomial)
{
    for (auto g : {fixtures::g1(), fixtures::rose(3)}) {
        for (std::size_t e = 0; e < g->edge_count(); ++e) {
            if (!g->is_loop(e)) continue;
            auto h = diracgraph::testing::subdivide_edge(*g, e);
            const auto ph = char_poly(build_adjacency(h)).substitute(h->edge_count() - 1, 1.0);
            EXPECT_LT(ph.max_abs_difference(char_poly(build_adjacency(g))), 1e-12);
        }
    }
}

TEST(CharPoly, SplitReducibleFactorizes)
{
    Rng rng(31);
    // Disjoint union: blocks never straddle the two halves.
    auto g = make_graph({"a", "b", "c"}, {{"x", "a", "b", 1.0}, {"y", "b", "a", 1.0}, {"z", "c", "c", 2.0}});
    const auto blocks = split_reducible(diracgraph::testing::random_endomorphism(rng, g));
    ASSERT_EQ(blocks.size(), 2u);
    EXPECT_EQ(blocks[1].edges, std::vector<std::size_t>{2});

    const std::vector<std::size_t> cyc{1, 2, 0};
    EXPECT_EQ(split_reducible(GPermutation(fixtures::directed_cycle(3), cyc).endomorphism()).size(), 1u);

    for (int i = 0; i < 30; ++i) {
        auto h = diracgraph::testing::random_graph(rng, 7);
        auto a = diracgraph::testing::random_endomorphism(rng, h);
        // Thin out A so that it tends to fall apart.
        CMatrix m = a.matrix();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                if (std::bernoulli_distribution(0.5)(rng)) m(r, c) = 0.0;
            }
        }
        const GEndomorphism thin(h, m);
        const auto parts = split_reducible(thin);
        MultiPoly prod(h->edge_count());
        prod.add_term(0, 1.0);
        for (const auto& blk : parts) prod = prod * char_poly(blk.endomorphism).embed(blk.edges, h->edge_count());
        EXPECT_LT(prod.max_abs_difference(char_poly(thin)), 1e-9);
    }
}

TEST(CharFunction, ValuesAndDerivatives)
{
    const auto a = build_adjacency(fixtures::rose(3));
    const auto f = char_function(a);
    EXPECT_LT(std::abs(f(Complex(0, -std::log(3.0)))), 1e-12);

    Rng rng(37);
    auto g = diracgraph::testing::random_graph(rng, 5);
    const auto b = diracgraph::testing::random_endomorphism(rng, g);
    const auto cf = char_function(b);
    EXPECT_LT(std::abs(cf(0.0) - (CMatrix::Identity(b.size(), b.size()) - b.matrix()).determinant()),
              1e-10 * cf.scale());
    const Complex z(0.7, -0.2);
    const double h = 1e-5;
    const Complex fd = (cf(z + h) - cf(z - h)) / (2 * h);
    EXPECT_LT(std::abs(fd - cf.derivative(z)), 1e-6 * cf.scale());
    const auto j = cf.jet(z);
    const Complex fd2 = (cf.derivative(z + h) - cf.derivative(z - h)) / (2 * h);
    EXPECT_LT(std::abs(fd2 - j.d2), 1e-5 * cf.scale());

    const auto c = char_function(GPermutation(fixtures::directed_cycle(3), {1, 2, 0}).endomorphism());
    EXPECT_LT(std::abs(c(2 * std::numbers::pi / 3)), 1e-14);
}

TEST(Specialize, KnownPolynomials)
{
    const std::vector<long> ones4(4, 1);
    auto p = specialize_univariate(char_poly(build_adjacency(fixtures::rose(4))), ones4);
    ASSERT_EQ(p.size(), 5u);
    EXPECT_EQ(p[4], Complex(1.0));
    EXPECT_EQ(p[3], Complex(-4.0));
    for (int k = 0; k < 3; ++k) EXPECT_EQ(p[k], Complex(0.0));

    p = specialize_univariate(char_poly(build_adjacency(fixtures::directed_cycle(4))), ones4);
    ASSERT_EQ(p.size(), 5u);
    EXPECT_EQ(p[0], Complex(-1.0));
    EXPECT_EQ(p[4], Complex(1.0));

    const std::vector<long> m{2, 3};
    CMatrix q = CMatrix::Zero(2, 2);
    q(0, 1) = 1.0;
    q(1, 0) = 1.0;
    p = specialize_univariate(char_poly(q), m);
    ASSERT_EQ(p.size(), 6u);
    EXPECT_EQ(p[5], Complex(1.0));
    EXPECT_EQ(p[0], Complex(-1.0));
}

TEST(Commensurable, Detection)
{
    const std::vector<double> a{1.0, 2.0, 3.0};
    auto c = detect_commensurable(a);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->multipliers, (std::vector<long>{1, 2, 3}));
    EXPECT_NEAR(c->delta, 1.0, 1e-14);

    const std::vector<double> b{0.5, 1.5};
    c = detect_commensurable(b);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->multipliers, (std::vector<long>{1, 3}));

    const std::vector<double> third{1.0, 1.0 / 3.0};
    c = detect_commensurable(third);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->multipliers, (std::vector<long>{3, 1}));
    EXPECT_NEAR(c->delta, 1.0 / 3.0, 1e-14);

    const std::vector<double> irr{1.0, std::sqrt(2.0)};
    EXPECT_FALSE(detect_commensurable(irr));
}
