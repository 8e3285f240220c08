#include "diracgraph/boundary.hpp"

#include "diracgraph/errors.hpp"

#include <cmath>
#include <string>

namespace diracgraph {

namespace {

const GraphPtr& require_graph(const GraphPtr& g)
{
    if (!g) throw PreconditionError("null graph");
    return g;
}

CMatrix orthonormalize(const CMatrix& basis)
{
    if (basis.cols() == 0) return CMatrix(basis.rows(), 0);
    Eigen::HouseholderQR<CMatrix> qr(basis);
    return qr.householderQ() * CMatrix::Identity(basis.rows(), basis.cols());
}

// Vertex owning a trace coordinate: the start of an edge sits at its tail, the end at its head.
std::size_t coordinate_vertex(const MetricGraph& g, Eigen::Index row, int r)
{
    const auto slot = static_cast<std::size_t>(row / r);
    const auto e = slot / 2;
    return slot % 2 == 0 ? g.tail(e) : g.head(e);
}

CMatrix stack(const CMatrix& a, const CMatrix& b)
{
    CMatrix m(a.rows(), a.cols() + b.cols());
    m << a, b;
    return m;
}

} // namespace

TraceVector TraceVector::zero(GraphPtr g, int r)
{
    const auto n = trace_dimension(*require_graph(g), r);
    return {std::move(g), r, CVector::Zero(n)};
}

BoundarySubspace::BoundarySubspace(GraphPtr g, CMatrix basis, int r)
    : graph_(std::move(g)), r_(r), basis_(std::move(basis))
{
    require_graph(graph_);
    if (r_ < 1) throw PreconditionError("bundle rank must be positive");
    if (basis_.rows() != trace_dimension(*graph_, r_)) {
        throw PreconditionError("basis vectors have " + std::to_string(basis_.rows()) +
                                " entries, trace space has dimension " +
                                std::to_string(trace_dimension(*graph_, r_)));
    }
    if (numeric_rank(basis_) != basis_.cols()) {
        throw PreconditionError("boundary subspace basis is linearly dependent");
    }
    orthonormal_ = orthonormalize(basis_);
}

BoundarySubspace BoundarySubspace::span(GraphPtr g, const CMatrix& vectors, int r)
{
    return BoundarySubspace(g, column_space(vectors), r);
}

BoundarySubspace BoundarySubspace::zero(GraphPtr g, int r)
{
    const auto n = trace_dimension(*require_graph(g), r);
    return BoundarySubspace(std::move(g), CMatrix(n, 0), r);
}

BoundarySubspace BoundarySubspace::full(GraphPtr g, int r)
{
    const auto n = trace_dimension(*require_graph(g), r);
    return BoundarySubspace(std::move(g), CMatrix::Identity(n, n), r);
}

double BoundarySubspace::distance(const CVector& v) const
{
    if (v.size() != ambient_dim()) throw PreconditionError("trace vector has the wrong dimension");
    const CVector residual = v - orthonormal_ * (orthonormal_.adjoint() * v);
    return residual.norm();
}

bool BoundarySubspace::contains(const CVector& v, double tol) const
{
    return distance(v) <= tol * std::max(1.0, v.norm());
}

bool same_subspace(const BoundarySubspace& a, const BoundarySubspace& b, double rtol)
{
    if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
    if (a.dim() == 0) return true;
    return numeric_rank(stack(a.orthonormal_basis(), b.orthonormal_basis()), rtol) == a.dim();
}

Eigen::Index intersection_dimension(const BoundarySubspace& a, const BoundarySubspace& b, double rtol)
{
    if (a.ambient_dim() != b.ambient_dim()) throw PreconditionError("subspaces live in different trace spaces");
    const auto joint = numeric_rank(stack(a.orthonormal_basis(), b.orthonormal_basis()), rtol);
    return a.dim() + b.dim() - joint;
}

double subspace_distance(const BoundarySubspace& a, const BoundarySubspace& b)
{
    if (a.ambient_dim() != b.ambient_dim()) throw PreconditionError("subspaces live in different trace spaces");
    if (a.dim() != b.dim()) return 1.0;
    return projector_distance(a.orthonormal_basis(), b.orthonormal_basis());
}

TraceForm::TraceForm(std::vector<CMatrix> sigma_start, std::vector<CMatrix> sigma_end)
    : start_(std::move(sigma_start)), end_(std::move(sigma_end))
{
    if (start_.size() != end_.size()) throw PreconditionError("trace form needs both boundary values per edge");
    r_ = start_.empty() ? 1 : static_cast<int>(start_.front().rows());
    for (std::size_t e = 0; e < start_.size(); ++e) {
        for (const CMatrix* m : {&start_[e], &end_[e]}) {
            if (m->rows() != r_ || m->cols() != r_) throw PreconditionError("trace form blocks must be r x r");
            if (!Eigen::FullPivLU<CMatrix>(*m).isInvertible()) {
                throw SingularTraceForm("symbol is not invertible at an endpoint of edge " + std::to_string(e));
            }
        }
    }
}

TraceForm TraceForm::scalar_dirac(const MetricGraph& g)
{
    const Complex i(0.0, 1.0);
    return TraceForm(std::vector<CMatrix>(g.edge_count(), CMatrix::Constant(1, 1, -i)),
                     std::vector<CMatrix>(g.edge_count(), CMatrix::Constant(1, 1, i)));
}

CMatrix TraceForm::matrix() const
{
    const auto n = static_cast<Eigen::Index>(2 * start_.size()) * r_;
    CMatrix m = CMatrix::Zero(n, n);
    for (std::size_t e = 0; e < start_.size(); ++e) {
        m.block(minus_index(e, r_), minus_index(e, r_), r_, r_) = start_[e];
        m.block(plus_index(e, r_), plus_index(e, r_), r_, r_) = end_[e];
    }
    return m;
}

bool TraceForm::is_scalar_dirac(double tol) const
{
    if (r_ != 1) return false;
    const Complex i(0.0, 1.0);
    for (std::size_t e = 0; e < start_.size(); ++e) {
        if (std::abs(start_[e](0, 0) + i) > tol || std::abs(end_[e](0, 0) - i) > tol) return false;
    }
    return true;
}

bool structurally_allowed(const MetricGraph& g, std::size_t row, std::size_t col)
{
    return g.head(col) == g.tail(row);
}

GEndomorphism::GEndomorphism(GraphPtr g, CMatrix matrix, double structure_tol)
    : graph_(std::move(g)), matrix_(std::move(matrix))
{
    require_valid(*require_graph(graph_));
    const auto n = static_cast<Eigen::Index>(graph_->edge_count());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw PreconditionError("G-endomorphism must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    for (Eigen::Index row = 0; row < n; ++row) {
        for (Eigen::Index col = 0; col < n; ++col) {
            if (structurally_allowed(*graph_, row, col)) continue;
            if (std::abs(matrix_(row, col)) > structure_tol) {
                throw PreconditionError("entry (" + graph_->edge(row).id + ", " + graph_->edge(col).id +
                                        ") is nonzero but " + graph_->edge(col).id + " does not end where " +
                                        graph_->edge(row).id + " starts");
            }
            matrix_(row, col) = 0.0;
        }
    }
}

CMatrix GEndomorphism::vertex_block(std::size_t v) const
{
    const auto& outs = graph_->out_edges(v);
    const auto& ins = graph_->in_edges(v);
    CMatrix block(outs.size(), ins.size());
    for (std::size_t i = 0; i < outs.size(); ++i) {
        for (std::size_t j = 0; j < ins.size(); ++j) block(i, j) = matrix_(outs[i], ins[j]);
    }
    return block;
}

BoundarySubspace graph_of(const GEndomorphism& a)
{
    const auto& g = *a.graph();
    const auto n = static_cast<Eigen::Index>(g.edge_count());
    CMatrix basis = CMatrix::Zero(2 * n, n);
    for (Eigen::Index e = 0; e < n; ++e) {
        basis(plus_index(e), e) = 1.0;
        for (Eigen::Index f = 0; f < n; ++f) basis(minus_index(f), e) = a.matrix()(f, e);
    }
    return BoundarySubspace(a.graph(), std::move(basis));
}

LocalityResult is_local(const BoundarySubspace& b)
{
    const auto& g = *b.graph();
    const auto& q = b.orthonormal_basis();
    const auto n = q.rows();
    LocalityResult result;
    Eigen::Index total = 0;
    std::vector<BoundarySubspace> blocks;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        std::vector<Eigen::Index> outside;
        for (Eigen::Index row = 0; row < n; ++row) {
            if (coordinate_vertex(g, row, b.r()) != v) outside.push_back(row);
        }
        CMatrix rest(outside.size(), q.cols());
        for (std::size_t i = 0; i < outside.size(); ++i) rest.row(i) = q.row(outside[i]);
        // q is orthonormal, so an absolute cutoff is meaningful here.
        const CMatrix coeffs = null_space(rest, kSubspaceRtol, 1.0);
        total += coeffs.cols();
        CMatrix local = q * coeffs;
        for (const auto row : outside) local.row(row).setZero();
        blocks.emplace_back(b.graph(), std::move(local), b.r());
    }
    result.local = total == b.dim();
    if (result.local) result.blocks = std::move(blocks);
    return result;
}

BoundarySubspace adjoint_condition(const BoundarySubspace& b, const TraceForm& form)
{
    if (form.edge_count() != b.graph()->edge_count() || form.r() != b.r()) {
        throw PreconditionError("trace form does not match the boundary subspace");
    }
    const CMatrix image = form.matrix() * b.orthonormal_basis();
    if (image.cols() == 0) return BoundarySubspace::full(b.graph(), b.r());
    return BoundarySubspace(b.graph(), null_space(image.adjoint(), kSubspaceRtol, 1.0), b.r());
}

long index(const BoundarySubspace& b)
{
    return static_cast<long>(b.dim()) - static_cast<long>(b.r() * b.graph()->edge_count());
}

Eigen::Index scalar_kernel_dim(const BoundarySubspace& b)
{
    if (b.r() != 1) throw PreconditionError("kernel counting is implemented for r = 1 only");
    const auto m = static_cast<Eigen::Index>(b.graph()->edge_count());
    CMatrix joint = CMatrix::Zero(2 * m, m + b.dim());
    const double h = 1.0 / std::sqrt(2.0);
    for (Eigen::Index e = 0; e < m; ++e) {
        joint(minus_index(e), e) = h;
        joint(plus_index(e), e) = h;
    }
    joint.rightCols(b.dim()) = b.orthonormal_basis();
    return m + b.dim() - numeric_rank(joint, kSubspaceRtol);
}

Eigen::Index scalar_cokernel_dim(const BoundarySubspace& b, const TraceForm& form)
{
    if (!form.is_scalar_dirac()) throw PreconditionError("cokernel counting needs the scalar Dirac trace form");
    return scalar_kernel_dim(adjoint_condition(b, form));
}

std::string_view to_string(RefusalReason reason)
{
    switch (reason) {
    case RefusalReason::DimensionMismatch: return "dim B != |E|";
    case RefusalReason::NotLocal: return "not local";
    case RefusalReason::NotSelfAdjoint: return "B != B^ad";
    case RefusalReason::NotEulerian: return "graph not Eulerian";
    }
    return "unknown";
}

WitnessResult self_adjointness_witness(const BoundarySubspace& b, const TraceForm& form)
{
    if (b.r() != 1 || !form.is_scalar_dirac()) {
        throw PreconditionError("self-adjointness witness needs r = 1 and the scalar Dirac form");
    }
    const auto& g = b.graph();
    WitnessResult out;
    if (!is_local(b).local) {
        out.refusal = RefusalReason::NotLocal;
        return out;
    }
    if (!is_eulerian_components(*g)) {
        out.refusal = RefusalReason::NotEulerian;
        return out;
    }
    const auto m = static_cast<Eigen::Index>(g->edge_count());
    if (b.dim() != m) {
        out.refusal = RefusalReason::DimensionMismatch;
        return out;
    }
    if (!same_subspace(b, adjoint_condition(b, form))) {
        out.refusal = RefusalReason::NotSelfAdjoint;
        return out;
    }

    const auto& q = b.orthonormal_basis();
    CMatrix plus(m, m), minus(m, m);
    for (Eigen::Index e = 0; e < m; ++e) {
        plus.row(e) = q.row(plus_index(e));
        minus.row(e) = q.row(minus_index(e));
    }
    // Rebase B so that its end values form an orthonormal basis of C^E; A then maps
    // each of those end values onto the matching start values.
    Eigen::HouseholderQR<CMatrix> qr(plus);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    const CMatrix qq = qr.householderQ();
    const CMatrix r_inv = r.triangularView<Eigen::Upper>().solve(CMatrix::Identity(m, m));
    CMatrix a = minus * r_inv * qq.adjoint();
    for (Eigen::Index row = 0; row < m; ++row) {
        for (Eigen::Index col = 0; col < m; ++col) {
            if (!structurally_allowed(*g, row, col)) a(row, col) = 0.0;
        }
    }
    out.endomorphism.emplace(g, std::move(a));
    return out;
}

bool is_unitary(const CMatrix& a, double tol)
{
    if (a.rows() != a.cols()) return false;
    const CMatrix d = a.adjoint() * a - CMatrix::Identity(a.rows(), a.cols());
    if (d.size() == 0) return true;
    return d.cwiseAbs().rowwise().sum().maxCoeff() <= tol;
}

bool is_unitary(const GEndomorphism& a, double tol)
{
    return is_unitary(a.matrix(), tol);
}

} // namespace diracgraph
