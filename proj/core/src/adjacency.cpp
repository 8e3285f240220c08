#include "diracgraph/adjacency.hpp"

#include "diracgraph/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace diracgraph {

CMatrix adjacency_matrix(const MetricGraph& g)
{
    const auto n = static_cast<Eigen::Index>(g.edge_count());
    CMatrix m = CMatrix::Zero(n, n);
    for (Eigen::Index e = 0; e < n; ++e) {
        for (Eigen::Index f = 0; f < n; ++f) {
            if (structurally_allowed(g, e, f)) m(e, f) = 1.0;
        }
    }
    return m;
}

GEndomorphism build_adjacency(const GraphPtr& g)
{
    if (!g) throw PreconditionError("null graph");
    return GEndomorphism(g, adjacency_matrix(*g));
}

NonsingularResult adjacency_nonsingular(const MetricGraph& g)
{
    require_valid(g);
    NonsingularResult out;
    const CMatrix m = adjacency_matrix(g);
    out.numeric_det = m.size() == 0 ? 1.0 : m.real().partialPivLu().determinant();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (g.in_edges(v).size() != 1 || g.out_edges(v).size() != 1) return out;
    }
    // Every vertex has in- and out-degree one: G is itself a disjoint union of cycles.
    std::vector<char> seen(g.edge_count(), 0);
    long alpha = 0;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (seen[e]) continue;
        ++alpha;
        for (auto f = e; !seen[f]; f = g.out_edges(g.head(f)).front()) seen[f] = 1;
    }
    const long eta = static_cast<long>(g.edge_count());
    out.nonsingular = true;
    out.det = ((alpha - eta) % 2 == 0) ? 1 : -1;
    return out;
}

std::map<Mask, std::int64_t> collection_expansion(const MetricGraph& g, const EnumerationLimits& limits)
{
    const auto n = g.edge_count();
    if (n > kMaxVariables) throw EnumerationLimitExceeded("at most 64 edges are supported");
    const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    std::map<Mask, std::int64_t> out;
    for (const auto& c : enumerate_cycle_collections(g, limits)) {
        const std::int64_t sign = c.alpha() % 2 == 0 ? 1 : -1;
        out[all & ~c.subgraph.edge_mask()] += sign;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

MultiPoly charpoly_via_collections(const MetricGraph& g, const EnumerationLimits& limits)
{
    MultiPoly p(g.edge_count());
    for (const auto& [mask, c] : collection_expansion(g, limits)) p.add_term(mask, static_cast<double>(c));
    return p;
}

Complex adjacency_char_function(const MetricGraph& g, Complex lambda, const EnumerationLimits& limits)
{
    const Complex i(0.0, 1.0);
    const double total = g.total_length();
    Complex sum{};
    for (const auto& c : enumerate_cycle_collections(g, limits)) {
        const double sign = c.alpha() % 2 == 0 ? 1.0 : -1.0;
        sum += sign * std::exp(i * lambda * (total - c.subgraph.total_length()));
    }
    return sum;
}

CoefficientProfile coefficient_profile(const MetricGraph& g, const EnumerationLimits& limits)
{
    CoefficientProfile p;
    p.n = g.edge_count();
    p.coeffs.assign(p.n + 1, 0);
    for (const auto& c : enumerate_cycle_collections(g, limits)) {
        p.coeffs[p.n - c.eta()] += c.alpha() % 2 == 0 ? 1 : -1;
    }
    return p;
}

CoefficientProfile profile_from_polynomial(const MultiPoly& poly, double tol)
{
    CoefficientProfile p;
    p.n = poly.variables();
    std::vector<Complex> sums(p.n + 1);
    for (const auto& [mask, c] : poly.terms()) sums[std::popcount(mask)] += c;
    for (const auto& s : sums) {
        const double r = std::round(s.real());
        if (std::abs(s - Complex(r, 0.0)) > tol) {
            throw std::domain_error("coefficient " + std::to_string(s.real()) + " is not an integer");
        }
        p.coeffs.push_back(static_cast<std::int64_t>(r));
    }
    return p;
}

TopologyReport topology_from_coefficients(const CoefficientProfile& profile, std::optional<std::size_t> k)
{
    const auto n = profile.n;
    if (profile.coeffs.size() != n + 1) throw std::invalid_argument("profile needs n + 1 coefficients");
    TopologyReport r;
    for (std::size_t l = 1; l <= n; ++l) {
        if (profile.a(n - l) != 0) {
            r.girth = l;
            break;
        }
    }
    if (r.girth == 0) throw AcyclicGraph("all sub-leading coefficients vanish: the graph has no cycles");

    // Below twice the girth no two cycles fit disjointly, so each collection is a single cycle.
    for (std::size_t l = r.girth; l < 2 * r.girth && l <= n; ++l) {
        if (const auto c = -profile.a(n - l); c != 0) r.cycle_counts[l] = c;
    }
    if (k) {
        for (std::size_t l = 0; l < *k && l < n; ++l) {
            if (const auto c = -profile.a(l); c != 0) r.long_cycle_counts[n - l] = c;
        }
    }
    r.a_n1 = n >= 1 ? profile.a(n - 1) : 0;
    r.a_n2 = n >= 2 ? profile.a(n - 2) : 0;
    r.a_n3 = n >= 3 ? profile.a(n - 3) : 0;
    r.loops = static_cast<std::size_t>(-r.a_n1);
    return r;
}

namespace {

bool connected_without(const MetricGraph& g, Mask removed, Connectivity kind)
{
    const auto nv = g.vertex_count();
    if (nv <= 1) return true;
    auto reach = [&](bool forward) {
        std::vector<char> seen(nv, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                if ((removed >> e) & 1) continue;
                std::size_t next = npos;
                if (kind == Connectivity::Undirected) {
                    if (g.tail(e) == v) next = g.head(e);
                    else if (g.head(e) == v) next = g.tail(e);
                } else if (forward && g.tail(e) == v) {
                    next = g.head(e);
                } else if (!forward && g.head(e) == v) {
                    next = g.tail(e);
                }
                if (next != npos && !seen[next]) {
                    seen[next] = 1;
                    stack.push_back(next);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    };
    if (!reach(true)) return false;
    return kind == Connectivity::Undirected || reach(false);
}

} // namespace

std::size_t edge_connectivity(const MetricGraph& g, Connectivity kind, std::size_t max_edges)
{
    require_valid(g);
    const auto n = g.edge_count();
    if (n > max_edges) {
        throw EnumerationLimitExceeded("edge connectivity is brute force and capped at " + std::to_string(max_edges) +
                                       " edges");
    }
    for (std::size_t k = 0; k <= n; ++k) {
        // Subsets of size k in increasing order (Gosper's hack).
        if (k == 0) {
            if (!connected_without(g, 0, kind)) return 0;
            continue;
        }
        Mask s = (Mask{1} << k) - 1;
        const Mask limit = Mask{1} << n;
        while (s < limit) {
            if (!connected_without(g, s, kind)) return k;
            const Mask c = s & -s;
            const Mask r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    return n;
}

} // namespace diracgraph
