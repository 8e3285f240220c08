#pragma once

#include <Eigen/Dense>

#include <complex>

namespace diracgraph {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kRankRtol = 1e-12;
inline constexpr double kSubspaceRtol = 1e-10;

// Number of singular values above rtol * max(sigma_1, reference).
Eigen::Index numeric_rank(const CMatrix& m, double rtol = kRankRtol, double reference = 0.0);

// Orthonormal basis of the column space (numeric rank at rtol).
CMatrix column_space(const CMatrix& m, double rtol = kRankRtol, double reference = 0.0);

// Orthonormal basis of the null space of m (right singular vectors).
CMatrix null_space(const CMatrix& m, double rtol = kRankRtol, double reference = 0.0);

// Spectral norm of P_a - P_b for orthonormal bases a, b of equal row count.
double projector_distance(const CMatrix& a, const CMatrix& b);

} // namespace diracgraph
