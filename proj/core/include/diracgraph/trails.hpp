#pragma once

#include "diracgraph/boundary.hpp"
#include "diracgraph/spectrum.hpp"

#include <map>
#include <utility>
#include <vector>

namespace diracgraph {

/**
 * Edge bijection P with P(e) starting where e ends. Its matrix has a one at
 * (P(e), e), which makes it a unitary G-endomorphism.
 */
class GPermutation {
public:
    GPermutation(GraphPtr g, std::vector<std::size_t> successor);

    static GPermutation from_ids(GraphPtr g, const std::map<EdgeId, EdgeId>& map);

    const GraphPtr& graph() const { return graph_; }
    std::size_t operator()(std::size_t e) const { return successor_.at(e); }
    const std::vector<std::size_t>& successors() const { return successor_; }

    CMatrix matrix() const;
    GEndomorphism endomorphism() const;

    friend bool operator==(const GPermutation& a, const GPermutation& b)
    {
        return a.graph_ == b.graph_ && a.successor_ == b.successor_;
    }

private:
    GraphPtr graph_;
    std::vector<std::size_t> successor_;
};

// Closed directed trails covering every edge exactly once. Stored canonically: each
// trail rotated so that its lexicographically smallest edge id leads, trails sorted.
class TrailDecomposition {
public:
    TrailDecomposition(GraphPtr g, std::vector<std::vector<std::size_t>> trails);

    static TrailDecomposition from_ids(GraphPtr g, const std::vector<std::vector<EdgeId>>& trails);

    const GraphPtr& graph() const { return graph_; }
    const std::vector<std::vector<std::size_t>>& trails() const { return trails_; }
    std::size_t size() const { return trails_.size(); }
    std::vector<double> lengths() const;
    std::vector<std::vector<EdgeId>> trail_ids() const;

    friend bool operator==(const TrailDecomposition& a, const TrailDecomposition& b)
    {
        return a.graph_ == b.graph_ && a.trails_ == b.trails_;
    }

private:
    GraphPtr graph_;
    std::vector<std::vector<std::size_t>> trails_;
};

TrailDecomposition permutation_to_decomposition(const GPermutation& p);
GPermutation decomposition_to_permutation(const TrailDecomposition& d);

// Every G-permutation, as products of per-vertex bijections from incoming to outgoing
// edges. Empty when some vertex has in-degree != out-degree.
std::vector<GPermutation> enumerate_g_permutations(const GraphPtr& g, std::size_t limit = 1'000'000);

// Number of G-permutations without building them (saturates at SIZE_MAX).
std::size_t count_g_permutations(const MetricGraph& g);

std::size_t loop_count_via_trace(const GPermutation& p);

// Spectrum of the condition given by P in closed form: 2 pi k / L_i over the trails.
SpectrumReport permutation_spectrum(const GPermutation& p, const Window& window, double divisibility_rtol = 1e-9);

struct LongestTrail {
    double length = 0.0;
    int count = 0;
};

LongestTrail longest_trail_from_spectrum(const SpectrumReport& report, double tol = 1e-9);

} // namespace diracgraph
