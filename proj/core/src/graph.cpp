#include "diracgraph/graph.hpp"

#include "diracgraph/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace diracgraph {

MetricGraph::MetricGraph(std::vector<VertexId> vertices, std::vector<EdgeRecord> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges))
{
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        vertex_lookup_.try_emplace(vertices_[v], v);
    }
    in_edges_.resize(vertices_.size());
    out_edges_.resize(vertices_.size());
    tails_.reserve(edges_.size());
    heads_.reserve(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        edge_lookup_.try_emplace(edges_[e].id, e);
        const auto t = find_vertex(edges_[e].tail);
        const auto h = find_vertex(edges_[e].head);
        tails_.push_back(t.value_or(npos));
        heads_.push_back(h.value_or(npos));
        if (t) out_edges_[*t].push_back(e);
        if (h) in_edges_[*h].push_back(e);
    }
}

std::vector<double> MetricGraph::lengths() const
{
    std::vector<double> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.push_back(e.length);
    return out;
}

double MetricGraph::total_length() const
{
    double sum = 0.0;
    for (const auto& e : edges_) sum += e.length;
    return sum;
}

std::optional<std::size_t> MetricGraph::find_vertex(std::string_view id) const
{
    const auto it = vertex_lookup_.find(std::string(id));
    if (it == vertex_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> MetricGraph::find_edge(std::string_view id) const
{
    const auto it = edge_lookup_.find(std::string(id));
    if (it == edge_lookup_.end()) return std::nullopt;
    return it->second;
}

std::size_t MetricGraph::vertex_index(std::string_view id) const
{
    if (auto v = find_vertex(id)) return *v;
    throw std::out_of_range("unknown vertex '" + std::string(id) + "'");
}

std::size_t MetricGraph::edge_index(std::string_view id) const
{
    if (auto e = find_edge(id)) return *e;
    throw std::out_of_range("unknown edge '" + std::string(id) + "'");
}

GraphPtr make_graph(std::vector<VertexId> vertices, std::vector<EdgeRecord> edges)
{
    return std::make_shared<const MetricGraph>(std::move(vertices), std::move(edges));
}

GraphPtr induced_subgraph(const MetricGraph& g, std::span<const std::size_t> edges)
{
    std::vector<char> used(g.vertex_count(), 0);
    std::vector<EdgeRecord> records;
    records.reserve(edges.size());
    for (const auto e : edges) {
        records.push_back(g.edge(e));
        if (g.tail(e) != npos) used[g.tail(e)] = 1;
        if (g.head(e) != npos) used[g.head(e)] = 1;
    }
    std::vector<VertexId> vertices;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (used[v]) vertices.push_back(g.vertices()[v]);
    }
    return make_graph(std::move(vertices), std::move(records));
}

std::string_view to_string(Violation::Kind kind)
{
    switch (kind) {
    case Violation::Kind::IsolatedVertex: return "isolated vertex";
    case Violation::Kind::NonpositiveLength: return "nonpositive length";
    case Violation::Kind::DanglingEndpoint: return "dangling endpoint";
    case Violation::Kind::DuplicateId: return "duplicate id";
    }
    return "unknown";
}

std::vector<Violation> validate(const MetricGraph& g)
{
    std::vector<Violation> out;
    std::unordered_set<std::string> seen;
    for (const auto& v : g.vertices()) {
        if (!seen.insert(v).second) {
            out.push_back({Violation::Kind::DuplicateId, v, "vertex id '" + v + "' appears more than once"});
        }
    }
    seen.clear();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& rec = g.edge(e);
        if (!seen.insert(rec.id).second) {
            out.push_back({Violation::Kind::DuplicateId, rec.id, "edge id '" + rec.id + "' appears more than once"});
        }
        if (!(rec.length > 0.0)) {
            std::ostringstream msg;
            msg << "edge '" << rec.id << "' has nonpositive length " << rec.length;
            out.push_back({Violation::Kind::NonpositiveLength, rec.id, msg.str()});
        }
        if (g.tail(e) == npos) {
            out.push_back({Violation::Kind::DanglingEndpoint, rec.id,
                           "edge '" + rec.id + "' has unknown tail '" + rec.tail + "'"});
        }
        if (g.head(e) == npos) {
            out.push_back({Violation::Kind::DanglingEndpoint, rec.id,
                           "edge '" + rec.id + "' has unknown head '" + rec.head + "'"});
        }
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (g.in_edges(v).empty() && g.out_edges(v).empty()) {
            const auto& id = g.vertices()[v];
            out.push_back({Violation::Kind::IsolatedVertex, id, "vertex '" + id + "' is incident to no edge"});
        }
    }
    return out;
}

void require_valid(const MetricGraph& g)
{
    const auto violations = validate(g);
    if (violations.empty()) return;
    std::ostringstream msg;
    msg << "invalid metric graph:";
    for (const auto& v : violations) msg << ' ' << v.message << ';';
    throw InvalidGraph(msg.str());
}

Degrees degrees(const MetricGraph& g, std::size_t v)
{
    if (v >= g.vertex_count()) throw std::out_of_range("vertex index out of range");
    return {g.in_edges(v).size(), g.out_edges(v).size()};
}

Degrees degrees(const MetricGraph& g, std::string_view v)
{
    return degrees(g, g.vertex_index(v));
}

bool is_eulerian_components(const MetricGraph& g)
{
    // A weakly connected component whose vertices are all balanced is strongly
    // connected, so the degree test alone decides existence of Eulerian circuits.
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (g.in_edges(v).size() != g.out_edges(v).size()) return false;
    }
    return true;
}

std::vector<std::size_t> Subgraph::vertices() const
{
    std::vector<std::size_t> out;
    for (const auto e : edges) {
        out.push_back(parent->tail(e));
        out.push_back(parent->head(e));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<EdgeId> Subgraph::edge_ids() const
{
    std::vector<EdgeId> out;
    out.reserve(edges.size());
    for (const auto e : edges) out.push_back(parent->edge(e).id);
    return out;
}

double Subgraph::total_length() const
{
    double sum = 0.0;
    for (const auto e : edges) sum += parent->length(e);
    return sum;
}

std::uint64_t Subgraph::edge_mask() const
{
    std::uint64_t mask = 0;
    for (const auto e : edges) {
        if (e >= 64) throw std::length_error("edge mask needs at most 64 edges");
        mask |= std::uint64_t{1} << e;
    }
    return mask;
}

namespace {

void check_limits(const MetricGraph& g, const EnumerationLimits& limits)
{
    require_valid(g);
    if (g.edge_count() > limits.max_edges) {
        throw EnumerationLimitExceeded("graph has " + std::to_string(g.edge_count()) +
                                       " edges; cycle enumeration is capped at " +
                                       std::to_string(limits.max_edges));
    }
}

CycleCollection make_collection(const MetricGraph& g, std::vector<std::vector<std::size_t>> components)
{
    CycleCollection c;
    c.subgraph.parent = &g;
    for (const auto& comp : components) {
        c.subgraph.edges.insert(c.subgraph.edges.end(), comp.begin(), comp.end());
    }
    std::sort(c.subgraph.edges.begin(), c.subgraph.edges.end());
    c.components = std::move(components);
    return c;
}

// Cycles whose smallest vertex is `start`, found by depth-first search restricted to
// vertices above `start`. The smallest vertex occurs once per cycle, which makes the
// rotation class representative unique.
void cycles_from(const MetricGraph& g, std::size_t start, std::size_t at, std::vector<char>& on_path,
                 std::vector<std::size_t>& path, std::vector<std::vector<std::size_t>>& out)
{
    for (const auto e : g.out_edges(at)) {
        const auto next = g.head(e);
        if (next == start) {
            path.push_back(e);
            out.push_back(path);
            path.pop_back();
        } else if (next > start && !on_path[next]) {
            on_path[next] = 1;
            path.push_back(e);
            cycles_from(g, start, next, on_path, path, out);
            path.pop_back();
            on_path[next] = 0;
        }
    }
}

std::vector<std::vector<std::size_t>> raw_cycles(const MetricGraph& g)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<char> on_path(g.vertex_count(), 0);
    std::vector<std::size_t> path;
    for (std::size_t s = 0; s < g.vertex_count(); ++s) {
        on_path[s] = 1;
        cycles_from(g, s, s, on_path, path, out);
        on_path[s] = 0;
    }
    return out;
}

} // namespace

std::vector<CycleCollection> enumerate_cycles(const MetricGraph& g, const EnumerationLimits& limits)
{
    check_limits(g, limits);
    std::vector<CycleCollection> out;
    for (auto& cycle : raw_cycles(g)) out.push_back(make_collection(g, {std::move(cycle)}));
    return out;
}

std::vector<CycleCollection> enumerate_cycle_collections(const MetricGraph& g, const EnumerationLimits& limits)
{
    check_limits(g, limits);
    const auto cycles = raw_cycles(g);
    std::vector<std::vector<std::size_t>> cycle_vertices;
    cycle_vertices.reserve(cycles.size());
    for (const auto& c : cycles) {
        std::vector<std::size_t> vs;
        for (const auto e : c) vs.push_back(g.tail(e));
        cycle_vertices.push_back(std::move(vs));
    }

    std::vector<CycleCollection> out;
    std::vector<int> occupied(g.vertex_count(), 0);
    std::vector<std::size_t> chosen;

    auto extend = [&](auto&& self, std::size_t first) -> void {
        std::vector<std::vector<std::size_t>> comps;
        for (const auto i : chosen) comps.push_back(cycles[i]);
        out.push_back(make_collection(g, std::move(comps)));
        for (std::size_t i = first; i < cycles.size(); ++i) {
            const auto& vs = cycle_vertices[i];
            if (std::any_of(vs.begin(), vs.end(), [&](std::size_t v) { return occupied[v] != 0; })) continue;
            for (const auto v : vs) occupied[v] = 1;
            chosen.push_back(i);
            self(self, i + 1);
            chosen.pop_back();
            for (const auto v : vs) occupied[v] = 0;
        }
    };
    extend(extend, 0);
    return out;
}

std::optional<std::size_t> girth_bruteforce(const MetricGraph& g, const EnumerationLimits& limits)
{
    std::optional<std::size_t> best;
    for (const auto& c : enumerate_cycles(g, limits)) {
        if (!best || c.eta() < *best) best = c.eta();
    }
    return best;
}

} // namespace diracgraph
