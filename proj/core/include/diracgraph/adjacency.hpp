#pragma once

#include "diracgraph/boundary.hpp"
#include "diracgraph/charpoly.hpp"
#include "diracgraph/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace diracgraph {

// I_{e,f} = 1 iff f ends where e starts (e can follow f).
CMatrix adjacency_matrix(const MetricGraph& g);
GEndomorphism build_adjacency(const GraphPtr& g);

struct NonsingularResult {
    bool nonsingular = false;
    std::optional<int> det;   // (-1)^(alpha - eta) when nonsingular
    double numeric_det = 0.0; // LU determinant, as a cross-check
};

NonsingularResult adjacency_nonsingular(const MetricGraph& g);

// Signed collection counts: key is the complement E \ C of a collection C, value the
// sum of (-1)^alpha(C) over collections with that edge set.
std::map<Mask, std::int64_t> collection_expansion(const MetricGraph& g, const EnumerationLimits& limits = {});

MultiPoly charpoly_via_collections(const MetricGraph& g, const EnumerationLimits& limits = {});

// Sum over collections of (-1)^alpha exp(i lambda (L_G - L_C)).
Complex adjacency_char_function(const MetricGraph& g, Complex lambda, const EnumerationLimits& limits = {});

struct CoefficientProfile {
    std::size_t n = 0;
    std::vector<std::int64_t> coeffs; // a_0 .. a_n

    std::int64_t a(std::size_t k) const { return k < coeffs.size() ? coeffs[k] : 0; }
    friend bool operator==(const CoefficientProfile&, const CoefficientProfile&) = default;
};

// Exact integer coefficients of p(t) = P(t, ..., t) from the collection expansion.
CoefficientProfile coefficient_profile(const MetricGraph& g, const EnumerationLimits& limits = {});

// Rounds a floating point polynomial's univariate specialization; throws
// std::domain_error when some coefficient is farther than tol from an integer.
CoefficientProfile profile_from_polynomial(const MultiPoly& p, double tol = 1e-6);

struct TopologyReport {
    std::size_t girth = 0;
    std::size_t loops = 0;
    std::map<std::size_t, std::int64_t> cycle_counts;      // lengths below 2 * girth, nonzero only
    std::map<std::size_t, std::int64_t> long_cycle_counts; // lengths above n - k, when k is given
    std::int64_t a_n1 = 0;
    std::int64_t a_n2 = 0;
    std::int64_t a_n3 = 0;
};

// Throws AcyclicGraph when every sub-leading coefficient vanishes.
TopologyReport topology_from_coefficients(const CoefficientProfile& profile,
                                          std::optional<std::size_t> k_connectivity = std::nullopt);

enum class Connectivity { Directed, Undirected };

// Smallest number of edges whose removal disconnects g (strongly, for Directed).
// Brute force over edge subsets; refuses graphs above max_edges.
std::size_t edge_connectivity(const MetricGraph& g, Connectivity kind = Connectivity::Directed,
                              std::size_t max_edges = 12);

} // namespace diracgraph
