#pragma once

#include "diracgraph/graph.hpp"
#include "diracgraph/linalg.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace diracgraph {

// Coordinates of the trace space C^r[G]: for edge e and component k,
// the start value sits at (2e)r + k and the end value at (2e+1)r + k.
inline Eigen::Index minus_index(std::size_t e, int r = 1, int k = 0)
{
    return static_cast<Eigen::Index>(2 * e) * r + k;
}
inline Eigen::Index plus_index(std::size_t e, int r = 1, int k = 0)
{
    return static_cast<Eigen::Index>(2 * e + 1) * r + k;
}
inline Eigen::Index trace_dimension(const MetricGraph& g, int r = 1)
{
    return static_cast<Eigen::Index>(2 * g.edge_count()) * r;
}

struct TraceVector {
    GraphPtr graph;
    int r = 1;
    CVector data;

    static TraceVector zero(GraphPtr g, int r = 1);
    auto minus(std::size_t e) { return data.segment(minus_index(e, r), r); }
    auto plus(std::size_t e) { return data.segment(plus_index(e, r), r); }
    auto minus(std::size_t e) const { return data.segment(minus_index(e, r), r); }
    auto plus(std::size_t e) const { return data.segment(plus_index(e, r), r); }
};

/**
 * Linear subspace of the trace space, stored as a basis matrix with one column per
 * basis vector. The basis handed to the constructor must be linearly independent;
 * use span() to reduce an arbitrary spanning set.
 */
class BoundarySubspace {
public:
    BoundarySubspace(GraphPtr g, CMatrix basis, int r = 1);

    static BoundarySubspace span(GraphPtr g, const CMatrix& vectors, int r = 1);
    static BoundarySubspace zero(GraphPtr g, int r = 1);
    static BoundarySubspace full(GraphPtr g, int r = 1);

    const GraphPtr& graph() const { return graph_; }
    int r() const { return r_; }
    Eigen::Index dim() const { return basis_.cols(); }
    Eigen::Index ambient_dim() const { return basis_.rows(); }
    const CMatrix& basis() const { return basis_; }
    const CMatrix& orthonormal_basis() const { return orthonormal_; }

    // Euclidean distance of v from the subspace.
    double distance(const CVector& v) const;
    bool contains(const CVector& v, double tol = 1e-10) const;

private:
    GraphPtr graph_;
    int r_ = 1;
    CMatrix basis_;
    CMatrix orthonormal_;
};

bool same_subspace(const BoundarySubspace& a, const BoundarySubspace& b, double rtol = kSubspaceRtol);
Eigen::Index intersection_dimension(const BoundarySubspace& a, const BoundarySubspace& b,
                                    double rtol = kSubspaceRtol);
// Spectral norm of the difference of orthogonal projectors; 0 iff equal, 1 if dims differ.
double subspace_distance(const BoundarySubspace& a, const BoundarySubspace& b);

// Boundary values of the principal symbol: sigma_start = -sigma(0_e), sigma_end = sigma(l_e).
class TraceForm {
public:
    TraceForm(std::vector<CMatrix> sigma_start, std::vector<CMatrix> sigma_end);

    static TraceForm scalar_dirac(const MetricGraph& g);

    int r() const { return r_; }
    std::size_t edge_count() const { return start_.size(); }
    const CMatrix& sigma_start(std::size_t e) const { return start_.at(e); }
    const CMatrix& sigma_end(std::size_t e) const { return end_.at(e); }

    // Block diagonal sigma_0 on the trace space.
    CMatrix matrix() const;
    bool is_scalar_dirac(double tol = 1e-14) const;

private:
    std::vector<CMatrix> start_;
    std::vector<CMatrix> end_;
    int r_ = 1;
};

/**
 * Edge-space endomorphism with the vertex-block structure: entry (e, f) may be
 * nonzero only when f ends where e starts. Rows are target edges, columns sources.
 */
class GEndomorphism {
public:
    // Entries below structure_tol in forbidden positions are accepted and zeroed.
    GEndomorphism(GraphPtr g, CMatrix matrix, double structure_tol = 0.0);

    const GraphPtr& graph() const { return graph_; }
    const CMatrix& matrix() const { return matrix_; }
    Eigen::Index size() const { return matrix_.rows(); }

    // A_v: incoming edges of v (columns) to outgoing edges of v (rows).
    CMatrix vertex_block(std::size_t v) const;

private:
    GraphPtr graph_;
    CMatrix matrix_;
};

// True where the block structure allows a nonzero entry.
bool structurally_allowed(const MetricGraph& g, std::size_t row, std::size_t col);

BoundarySubspace graph_of(const GEndomorphism& a);

struct LocalityResult {
    bool local = false;
    // Per vertex (graph order) B intersected with C_v; filled only when local.
    std::vector<BoundarySubspace> blocks;
};

LocalityResult is_local(const BoundarySubspace& b);

BoundarySubspace adjoint_condition(const BoundarySubspace& b, const TraceForm& form);

long index(const BoundarySubspace& b);

Eigen::Index scalar_kernel_dim(const BoundarySubspace& b);
Eigen::Index scalar_cokernel_dim(const BoundarySubspace& b, const TraceForm& form);

enum class RefusalReason { DimensionMismatch, NotLocal, NotSelfAdjoint, NotEulerian };

std::string_view to_string(RefusalReason reason);

struct WitnessResult {
    std::optional<GEndomorphism> endomorphism;
    std::optional<RefusalReason> refusal;

    explicit operator bool() const { return endomorphism.has_value(); }
};

WitnessResult self_adjointness_witness(const BoundarySubspace& b, const TraceForm& form);

bool is_unitary(const GEndomorphism& a, double tol = 1e-10);
bool is_unitary(const CMatrix& a, double tol = 1e-10);

} // namespace diracgraph
