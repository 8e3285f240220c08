#include "diracgraph/linalg.hpp"

#include <algorithm>

namespace diracgraph {

namespace {

Eigen::Index rank_from(const Eigen::VectorXd& sv, double rtol, double reference)
{
    if (sv.size() == 0) return 0;
    const double cut = rtol * std::max(sv(0), reference);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    return r;
}

} // namespace

Eigen::Index numeric_rank(const CMatrix& m, double rtol, double reference)
{
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return rank_from(svd.singularValues(), rtol, reference);
}

CMatrix column_space(const CMatrix& m, double rtol, double reference)
{
    if (m.cols() == 0 || m.rows() == 0) return CMatrix(m.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
    const auto r = rank_from(svd.singularValues(), rtol, reference);
    return svd.matrixU().leftCols(r);
}

CMatrix null_space(const CMatrix& m, double rtol, double reference)
{
    const auto n = m.cols();
    if (m.rows() == 0) return CMatrix::Identity(n, n);
    if (n == 0) return CMatrix(0, 0);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto r = rank_from(svd.singularValues(), rtol, reference);
    return svd.matrixV().rightCols(n - r);
}

double projector_distance(const CMatrix& a, const CMatrix& b)
{
    const CMatrix d = a * a.adjoint() - b * b.adjoint();
    if (d.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(d);
    return svd.singularValues()(0);
}

} // namespace diracgraph
