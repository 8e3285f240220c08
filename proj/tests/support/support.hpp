#pragma once

#include "diracgraph/diracgraph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace diracgraph::testing {

using Rng = std::mt19937_64;

// ---- random inputs ------------------------------------------------------

double uniform(Rng& rng, double lo, double hi);
Complex gaussian_complex(Rng& rng);
CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
CMatrix random_unitary(Rng& rng, Eigen::Index n);

// Random multigraph with 1..max_edges edges; every vertex is used by some edge.
GraphPtr random_graph(Rng& rng, std::size_t max_edges, bool random_lengths = true, std::size_t max_vertices = 4);

// Union of random closed walks, so every vertex is balanced.
GraphPtr random_eulerian_graph(Rng& rng, std::size_t max_edges, bool random_lengths = true,
                               std::size_t max_vertices = 4);

// Inserts a vertex in the middle of one non-loop or loop edge, which yields a vertex of
// in- and out-degree one whose two edges differ.
GraphPtr subdivide_edge(const MetricGraph& g, std::size_t e, double split = 0.5);

GEndomorphism random_endomorphism(Rng& rng, const GraphPtr& g);
GEndomorphism random_unitary_endomorphism(Rng& rng, const GraphPtr& g);
GPermutation random_g_permutation(Rng& rng, const GraphPtr& g);
BoundarySubspace random_subspace(Rng& rng, const GraphPtr& g, Eigen::Index dim);

// ---- oracles ------------------------------------------------------------

// Edge subsets in which every touched vertex has in- and out-degree one, with the
// number of connected components of each. Plain enumeration of all 2^|E| subsets.
struct BruteCollection {
    Mask edges = 0;
    int components = 0;
    int size = 0;
};
std::vector<BruteCollection> brute_force_collections(const MetricGraph& g);

// Number of directed cycles of each length (collections with one component).
std::map<std::size_t, std::int64_t> brute_force_cycle_counts(const MetricGraph& g);
std::optional<std::size_t> brute_force_girth(const MetricGraph& g);

// det(diag(x) - A) by LU.
Complex numeric_char_poly(const CMatrix& a, const std::vector<Complex>& x);

// Kernel and cokernel of the scalar Dirac operator under B, counted directly: the
// kernel is the edgewise constants with trace in B, the cokernel the constants with
// trace in the annihilator of sigma_0 B.
Eigen::Index direct_kernel_dim(const BoundarySubspace& b);
Eigen::Index direct_cokernel_dim(const BoundarySubspace& b);

// Coefficients of prod (z - r) for the given roots, lowest degree first.
std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots);

} // namespace diracgraph::testing
