#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace diracgraph::testing {

double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Complex gaussian_complex(Rng& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    return {re, n(rng)};
}

CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols)
{
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = gaussian_complex(rng);
    }
    return m;
}

CMatrix random_unitary(Rng& rng, Eigen::Index n)
{
    // Haar: QR of a Ginibre matrix with the phases of diag(R) pushed into Q.
    const CMatrix z = random_matrix(rng, n, n);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Drops unused vertices and names everything.
GraphPtr assemble(Rng& rng, std::size_t nv, const std::vector<std::pair<std::size_t, std::size_t>>& arcs,
                  bool random_lengths)
{
    std::vector<bool> used(nv, false);
    for (auto [t, h] : arcs) used[t] = used[h] = true;
    std::vector<VertexId> vertices;
    std::vector<std::string> name(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        if (!used[v]) continue;
        name[v] = "v" + std::to_string(v);
        vertices.push_back(name[v]);
    }
    std::vector<EdgeRecord> edges;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const double len = random_lengths ? uniform(rng, 0.5, 2.0) : 1.0;
        edges.push_back({"e" + std::to_string(i), name[arcs[i].first], name[arcs[i].second], len});
    }
    return make_graph(std::move(vertices), std::move(edges));
}

} // namespace

GraphPtr random_graph(Rng& rng, std::size_t max_edges, bool random_lengths, std::size_t max_vertices)
{
    const std::size_t nv = pick(rng, 1, max_vertices);
    const std::size_t ne = pick(rng, 1, max_edges);
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (std::size_t i = 0; i < ne; ++i) arcs.emplace_back(pick(rng, 0, nv - 1), pick(rng, 0, nv - 1));
    return assemble(rng, nv, arcs, random_lengths);
}

GraphPtr random_eulerian_graph(Rng& rng, std::size_t max_edges, bool random_lengths, std::size_t max_vertices)
{
    const std::size_t nv = pick(rng, 1, max_vertices);
    const std::size_t target = pick(rng, 1, max_edges);
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    while (arcs.size() < target) {
        const std::size_t len = pick(rng, 1, std::min<std::size_t>(3, target - arcs.size()));
        std::vector<std::size_t> walk(len);
        for (auto& v : walk) v = pick(rng, 0, nv - 1);
        for (std::size_t i = 0; i < len; ++i) arcs.emplace_back(walk[i], walk[(i + 1) % len]);
    }
    return assemble(rng, nv, arcs, random_lengths);
}

GraphPtr subdivide_edge(const MetricGraph& g, std::size_t e, double split)
{
    std::vector<VertexId> vertices = g.vertices();
    std::vector<EdgeRecord> edges = g.edges();
    const VertexId mid = "mid";
    vertices.push_back(mid);
    const EdgeRecord old = edges[e];
    edges[e] = {old.id + "a", old.tail, mid, old.length * split};
    edges.push_back({old.id + "b", mid, old.head, old.length * (1.0 - split)});
    return make_graph(std::move(vertices), std::move(edges));
}

GEndomorphism random_endomorphism(Rng& rng, const GraphPtr& g)
{
    const auto n = static_cast<Eigen::Index>(g->edge_count());
    CMatrix m = CMatrix::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            if (structurally_allowed(*g, static_cast<std::size_t>(r), static_cast<std::size_t>(c))) {
                m(r, c) = gaussian_complex(rng);
            }
        }
    }
    return GEndomorphism(g, m);
}

GEndomorphism random_unitary_endomorphism(Rng& rng, const GraphPtr& g)
{
    const auto n = static_cast<Eigen::Index>(g->edge_count());
    CMatrix m = CMatrix::Zero(n, n);
    for (std::size_t v = 0; v < g->vertex_count(); ++v) {
        const auto& ins = g->in_edges(v);
        const auto& outs = g->out_edges(v);
        if (ins.size() != outs.size()) throw std::invalid_argument("unbalanced vertex");
        const CMatrix u = random_unitary(rng, static_cast<Eigen::Index>(ins.size()));
        for (std::size_t i = 0; i < outs.size(); ++i) {
            for (std::size_t j = 0; j < ins.size(); ++j) {
                m(static_cast<Eigen::Index>(outs[i]), static_cast<Eigen::Index>(ins[j])) =
                    u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    return GEndomorphism(g, m);
}

GPermutation random_g_permutation(Rng& rng, const GraphPtr& g)
{
    std::vector<std::size_t> succ(g->edge_count(), npos);
    for (std::size_t v = 0; v < g->vertex_count(); ++v) {
        std::vector<std::size_t> outs = g->out_edges(v);
        const auto& ins = g->in_edges(v);
        if (ins.size() != outs.size()) throw std::invalid_argument("unbalanced vertex");
        std::shuffle(outs.begin(), outs.end(), rng);
        for (std::size_t j = 0; j < ins.size(); ++j) succ[ins[j]] = outs[j];
    }
    return GPermutation(g, std::move(succ));
}

BoundarySubspace random_subspace(Rng& rng, const GraphPtr& g, Eigen::Index dim)
{
    return BoundarySubspace(g, random_matrix(rng, trace_dimension(*g), dim));
}

std::vector<BruteCollection> brute_force_collections(const MetricGraph& g)
{
    const std::size_t ne = g.edge_count();
    const std::size_t nv = g.vertex_count();
    if (ne > 24) throw std::invalid_argument("too many edges for brute force");
    std::vector<BruteCollection> out;
    std::vector<int> in(nv), outd(nv), parent(nv);
    for (Mask mask = 0; mask < (Mask{1} << ne); ++mask) {
        std::fill(in.begin(), in.end(), 0);
        std::fill(outd.begin(), outd.end(), 0);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int size = 0;
        for (std::size_t e = 0; e < ne; ++e) {
            if (!((mask >> e) & 1)) continue;
            ++size;
            ++outd[g.tail(e)];
            ++in[g.head(e)];
            parent[find(static_cast<int>(g.tail(e)))] = find(static_cast<int>(g.head(e)));
        }
        bool ok = true;
        std::set<int> roots;
        for (std::size_t v = 0; v < nv && ok; ++v) {
            if (in[v] == 0 && outd[v] == 0) continue;
            if (in[v] != 1 || outd[v] != 1) ok = false;
            roots.insert(find(static_cast<int>(v)));
        }
        if (ok) out.push_back({mask, static_cast<int>(roots.size()), size});
    }
    return out;
}

std::map<std::size_t, std::int64_t> brute_force_cycle_counts(const MetricGraph& g)
{
    std::map<std::size_t, std::int64_t> counts;
    for (const auto& c : brute_force_collections(g)) {
        if (c.components == 1) ++counts[static_cast<std::size_t>(c.size)];
    }
    return counts;
}

std::optional<std::size_t> brute_force_girth(const MetricGraph& g)
{
    const auto counts = brute_force_cycle_counts(g);
    if (counts.empty()) return std::nullopt;
    return counts.begin()->first;
}

Complex numeric_char_poly(const CMatrix& a, const std::vector<Complex>& x)
{
    CMatrix m = -a;
    for (Eigen::Index i = 0; i < a.rows(); ++i) m(i, i) += x[static_cast<std::size_t>(i)];
    if (m.rows() == 0) return 1.0;
    return m.partialPivLu().determinant();
}

namespace {

CMatrix constants_trace(const MetricGraph& g)
{
    const auto n = static_cast<Eigen::Index>(g.edge_count());
    CMatrix s = CMatrix::Zero(2 * n, n);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        s(minus_index(e), static_cast<Eigen::Index>(e)) = 1.0;
        s(plus_index(e), static_cast<Eigen::Index>(e)) = 1.0;
    }
    return s;
}

Eigen::Index nullity(const CMatrix& m, Eigen::Index cols)
{
    if (m.rows() == 0 || cols == 0) return cols;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-9 * std::max(1.0, sv(0)) ? 1 : 0;
    return cols - rank;
}

} // namespace

Eigen::Index direct_kernel_dim(const BoundarySubspace& b)
{
    const auto& g = *b.graph();
    const auto n = static_cast<Eigen::Index>(g.edge_count());
    const CMatrix& q = b.orthonormal_basis();
    const CMatrix out = CMatrix::Identity(2 * n, 2 * n) - q * q.adjoint();
    return nullity(out * constants_trace(g), n);
}

Eigen::Index direct_cokernel_dim(const BoundarySubspace& b)
{
    const auto& g = *b.graph();
    const auto n = static_cast<Eigen::Index>(g.edge_count());
    CMatrix sigma_s = constants_trace(g);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        sigma_s.row(minus_index(e)) *= Complex(0, -1);
        sigma_s.row(plus_index(e)) *= Complex(0, 1);
    }
    return nullity(b.orthonormal_basis().adjoint() * sigma_s, n);
}

std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots)
{
    std::vector<Complex> c{1.0};
    for (const auto& r : roots) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return c;
}

} // namespace diracgraph::testing
