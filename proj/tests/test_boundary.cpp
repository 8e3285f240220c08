#include "support.hpp"

#include <gtest/gtest.h>

using namespace diracgraph;
using diracgraph::testing::Rng;

namespace {

// Trace of the edgewise constants: c_e at both ends.
CMatrix constants_trace(const MetricGraph& g)
{
    const auto n = static_cast<Eigen::Index>(g.edge_count());
    CMatrix s = CMatrix::Zero(2 * n, n);
    for (Eigen::Index e = 0; e < n; ++e) {
        s(minus_index(static_cast<std::size_t>(e)), e) = 1.0;
        s(plus_index(static_cast<std::size_t>(e)), e) = 1.0;
    }
    return s;
}

CMatrix sigma0(const MetricGraph& g)
{
    const auto n = trace_dimension(g);
    CMatrix s = CMatrix::Zero(n, n);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        s(minus_index(e), minus_index(e)) = Complex(0, -1);
        s(plus_index(e), plus_index(e)) = Complex(0, 1);
    }
    return s;
}

Eigen::Index nullity(const CMatrix& m, Eigen::Index cols)
{
    if (m.rows() == 0) return cols;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-9 ? 1 : 0;
    return cols - rank;
}

} // namespace

TEST(Boundary, TraceLayout)
{
    EXPECT_EQ(minus_index(3), 6);
    EXPECT_EQ(plus_index(3), 7);
    EXPECT_EQ(minus_index(1, 2, 1), 5);
    EXPECT_EQ(plus_index(1, 2, 0), 6);
    EXPECT_EQ(trace_dimension(*fixtures::g3(), 2), 24);
}

TEST(Boundary, SubspaceBasics)
{
    auto g = fixtures::directed_cycle(2);
    EXPECT_EQ(BoundarySubspace::full(g).dim(), 4);
    EXPECT_EQ(BoundarySubspace::zero(g).dim(), 0);

    CMatrix dependent(4, 2);
    dependent.col(0) << 1, 0, 0, 0;
    dependent.col(1) << 2, 0, 0, 0;
    EXPECT_THROW(BoundarySubspace(g, dependent), PreconditionError);
    EXPECT_EQ(BoundarySubspace::span(g, dependent).dim(), 1);
    EXPECT_THROW(BoundarySubspace(g, CMatrix::Identity(3, 1)), PreconditionError);

    const auto b = BoundarySubspace::span(g, dependent);
    CVector v = CVector::Zero(4);
    v(0) = 5.0;
    EXPECT_TRUE(b.contains(v));
    v(1) = 1.0;
    EXPECT_NEAR(b.distance(v), 1.0, 1e-14);
}

TEST(Boundary, SubspaceComparison)
{
    Rng rng(3);
    auto g = fixtures::g3();
    const auto b = diracgraph::testing::random_subspace(rng, g, 4);
    const CMatrix mix = diracgraph::testing::random_matrix(rng, 4, 4);
    const BoundarySubspace same(g, b.basis() * mix);
    EXPECT_TRUE(same_subspace(b, same));
    EXPECT_LT(subspace_distance(b, same), 1e-12);
    const auto other = diracgraph::testing::random_subspace(rng, g, 4);
    EXPECT_FALSE(same_subspace(b, other));
    EXPECT_EQ(intersection_dimension(b, other), 0); // 4 + 4 < 12
    EXPECT_DOUBLE_EQ(subspace_distance(b, diracgraph::testing::random_subspace(rng, g, 3)), 1.0);
}

TEST(Boundary, EndomorphismStructure)
{
    auto g = fixtures::directed_cycle(3);
    CMatrix m = CMatrix::Zero(3, 3);
    m(1, 0) = 1.0; // e2 follows e1
    EXPECT_NO_THROW(GEndomorphism(g, m));
    m(0, 1) = 1.0; // e1 does not follow e2
    EXPECT_THROW(GEndomorphism(g, m), PreconditionError);
    m(0, 1) = 1e-14;
    const GEndomorphism tolerant(g, m, 1e-12);
    EXPECT_EQ(tolerant.matrix()(0, 1), Complex(0.0));
    EXPECT_THROW(GEndomorphism(g, CMatrix::Zero(2, 2)), PreconditionError);

    auto g1 = fixtures::g1();
    EXPECT_TRUE(structurally_allowed(*g1, g1->edge_index("ab"), g1->edge_index("la")));
    EXPECT_FALSE(structurally_allowed(*g1, g1->edge_index("la"), g1->edge_index("ab")));
    const auto a = build_adjacency(g1);
    EXPECT_EQ(a.vertex_block(g1->vertex_index("a")).rows(), 2);
}

TEST(Boundary, GraphOfIsLocalWithVertexBlocks)
{
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        auto g = diracgraph::testing::random_graph(rng, 6);
        const auto a = diracgraph::testing::random_endomorphism(rng, g);
        const auto b = graph_of(a);
        EXPECT_EQ(b.dim(), static_cast<Eigen::Index>(g->edge_count()));
        const auto loc = is_local(b);
        ASSERT_TRUE(loc.local);
        Eigen::Index total = 0;
        for (const auto& blk : loc.blocks) total += blk.dim();
        EXPECT_EQ(total, b.dim());
    }
    // Two vertices and a generic subspace: never local.
    auto g = fixtures::directed_cycle(2);
    EXPECT_FALSE(is_local(diracgraph::testing::random_subspace(rng, g, 2)).local);
}

TEST(Boundary, AdjointIsAnnihilatorOfSigmaB)
{
    Rng rng(9);
    for (int i = 0; i < 30; ++i) {
        auto g = diracgraph::testing::random_graph(rng, 5);
        const auto dim = std::uniform_int_distribution<Eigen::Index>(0, trace_dimension(*g))(rng);
        const auto b = diracgraph::testing::random_subspace(rng, g, dim);
        const auto ad = adjoint_condition(b, TraceForm::scalar_dirac(*g));
        EXPECT_EQ(ad.dim() + b.dim(), trace_dimension(*g));
        if (ad.dim() > 0 && b.dim() > 0) {
            EXPECT_LT(((sigma0(*g) * b.basis()).adjoint() * ad.basis()).norm(), 1e-10);
        }
    }
}

TEST(Boundary, IndexAgainstDirectKernelCount)
{
    Rng rng(13);
    for (int i = 0; i < 40; ++i) {
        auto g = diracgraph::testing::random_graph(rng, 5);
        const auto n = static_cast<Eigen::Index>(g->edge_count());
        const CMatrix s = constants_trace(*g);
        for (Eigen::Index d = 0; d <= 2 * n; ++d) {
            // Half the time seed B with a constant trace so the kernel is nontrivial.
            CMatrix basis = diracgraph::testing::random_matrix(rng, 2 * n, d);
            if (d > 0 && i % 2 == 0) basis.col(0) = s * diracgraph::testing::random_matrix(rng, n, 1);
            const BoundarySubspace b(g, basis);
            const CMatrix q = b.orthonormal_basis();
            const CMatrix proj_out = CMatrix::Identity(2 * n, 2 * n) - q * q.adjoint();
            const Eigen::Index ker = nullity(proj_out * s, n);
            const Eigen::Index coker = nullity(b.basis().adjoint() * sigma0(*g).adjoint() * s, n);
            EXPECT_EQ(scalar_kernel_dim(b), ker);
            EXPECT_EQ(scalar_cokernel_dim(b, TraceForm::scalar_dirac(*g)), coker);
            EXPECT_EQ(index(b), static_cast<long>(d - n));
        }
    }
}

TEST(Boundary, SingularTraceForm)
{
    std::vector<CMatrix> start{CMatrix::Identity(1, 1)};
    std::vector<CMatrix> end{CMatrix::Zero(1, 1)};
    EXPECT_THROW(TraceForm(start, end), SingularTraceForm);
    EXPECT_TRUE(TraceForm::scalar_dirac(*fixtures::rose(2)).is_scalar_dirac());
}

TEST(Boundary, WitnessRecoversUnitaryEndomorphism)
{
    Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        auto g = diracgraph::testing::random_eulerian_graph(rng, 7);
        const auto a = diracgraph::testing::random_unitary_endomorphism(rng, g);
        ASSERT_TRUE(is_unitary(a));
        const auto b = graph_of(a);
        const auto w = self_adjointness_witness(b, TraceForm::scalar_dirac(*g));
        ASSERT_TRUE(w);
        EXPECT_LT((w.endomorphism->matrix() - a.matrix()).norm(), 1e-9);
        EXPECT_TRUE(is_unitary(*w.endomorphism));
    }
}

TEST(Boundary, WitnessRefusals)
{
    Rng rng(19);
    auto form_for = [](const GraphPtr& g) { return TraceForm::scalar_dirac(*g); };

    auto c2 = fixtures::directed_cycle(2);
    auto w = self_adjointness_witness(diracgraph::testing::random_subspace(rng, c2, 2), form_for(c2));
    ASSERT_FALSE(w);
    EXPECT_EQ(*w.refusal, RefusalReason::NotLocal);

    auto se = fixtures::single_edge();
    w = self_adjointness_witness(graph_of(GEndomorphism(se, CMatrix::Zero(1, 1))), form_for(se));
    EXPECT_EQ(*w.refusal, RefusalReason::NotEulerian);

    auto c3 = fixtures::directed_cycle(3);
    w = self_adjointness_witness(BoundarySubspace::zero(c3), form_for(c3));
    EXPECT_EQ(*w.refusal, RefusalReason::DimensionMismatch);

    CMatrix m = CMatrix::Zero(3, 3);
    m(1, 0) = 2.0;
    m(2, 1) = 1.0;
    m(0, 2) = 1.0;
    w = self_adjointness_witness(graph_of(GEndomorphism(c3, m)), form_for(c3));
    EXPECT_EQ(*w.refusal, RefusalReason::NotSelfAdjoint);
    EXPECT_EQ(to_string(RefusalReason::NotSelfAdjoint), "B != B^ad");
}
