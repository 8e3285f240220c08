#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace diracgraph {

using VertexId = std::string;
using EdgeId = std::string;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct EdgeRecord {
    EdgeId id;
    VertexId tail;
    VertexId head;
    double length = 1.0;
};

/**
 * Finite directed multigraph with an edge length function.
 *
 * Construction never throws on invariant violations: dangling endpoints, isolated
 * vertices, duplicate ids and nonpositive lengths are kept as given and reported by
 * validate(). Vertex and edge order is the input order and fixes every matrix layout
 * in the library (edge e is row/column e of every G-endomorphism).
 *
 * Instances are immutable; share them through GraphPtr.
 */
class MetricGraph {
public:
    MetricGraph() = default;
    MetricGraph(std::vector<VertexId> vertices, std::vector<EdgeRecord> edges);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<EdgeRecord>& edges() const { return edges_; }
    const EdgeRecord& edge(std::size_t e) const { return edges_.at(e); }

    // Vertex index of the tail/head of edge e, or npos for a dangling endpoint.
    std::size_t tail(std::size_t e) const { return tails_.at(e); }
    std::size_t head(std::size_t e) const { return heads_.at(e); }
    double length(std::size_t e) const { return edges_.at(e).length; }
    bool is_loop(std::size_t e) const { return tails_.at(e) != npos && tails_[e] == heads_[e]; }

    std::vector<double> lengths() const;
    double total_length() const;

    std::optional<std::size_t> find_vertex(std::string_view id) const;
    std::optional<std::size_t> find_edge(std::string_view id) const;
    // Throwing lookups (std::out_of_range).
    std::size_t vertex_index(std::string_view id) const;
    std::size_t edge_index(std::string_view id) const;

    // Edges whose head (resp. tail) is vertex v, in edge order.
    const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_edges_.at(v); }
    const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_edges_.at(v); }

private:
    std::vector<VertexId> vertices_;
    std::vector<EdgeRecord> edges_;
    std::vector<std::size_t> tails_;
    std::vector<std::size_t> heads_;
    std::vector<std::vector<std::size_t>> in_edges_;
    std::vector<std::vector<std::size_t>> out_edges_;
    std::unordered_map<std::string, std::size_t> vertex_lookup_;
    std::unordered_map<std::string, std::size_t> edge_lookup_;
};

using GraphPtr = std::shared_ptr<const MetricGraph>;

GraphPtr make_graph(std::vector<VertexId> vertices, std::vector<EdgeRecord> edges);

// Graph spanned by the given edges of `g` (vertices: their endpoints, in g's order).
GraphPtr induced_subgraph(const MetricGraph& g, std::span<const std::size_t> edges);

struct Violation {
    enum class Kind { IsolatedVertex, NonpositiveLength, DanglingEndpoint, DuplicateId };
    Kind kind;
    std::string subject;
    std::string message;
};

std::string_view to_string(Violation::Kind kind);

// Reports every violated invariant; an empty result means the graph is valid.
std::vector<Violation> validate(const MetricGraph& g);

// Throws InvalidGraph listing the violations when validate() is nonempty.
void require_valid(const MetricGraph& g);

struct Degrees {
    std::size_t in = 0;
    std::size_t out = 0;
    friend bool operator==(const Degrees&, const Degrees&) = default;
};

// A loop counts once in each direction. Throws std::out_of_range for an unknown vertex.
Degrees degrees(const MetricGraph& g, std::string_view v);
Degrees degrees(const MetricGraph& g, std::size_t v);

// True iff every connected component admits an Eulerian circuit.
bool is_eulerian_components(const MetricGraph& g);

struct Subgraph {
    const MetricGraph* parent = nullptr;
    std::vector<std::size_t> edges; // sorted edge indices into *parent

    std::vector<std::size_t> vertices() const;
    std::vector<EdgeId> edge_ids() const;
    double total_length() const;
    std::uint64_t edge_mask() const;
};

// Vertex-disjoint union of directed cycles. Each component is an edge sequence
// starting at the edge that leaves the component's smallest vertex index.
struct CycleCollection {
    Subgraph subgraph;
    std::vector<std::vector<std::size_t>> components;

    std::size_t alpha() const { return components.size(); }
    std::size_t eta() const { return subgraph.edges.size(); }
};

struct EnumerationLimits {
    std::size_t max_edges = 24;
};

// All directed cycles, one per rotation class. Loops are cycles of length one.
std::vector<CycleCollection> enumerate_cycles(const MetricGraph& g, const EnumerationLimits& limits = {});

// All disjoint collections of cycles, the empty collection first.
std::vector<CycleCollection> enumerate_cycle_collections(const MetricGraph& g,
                                                         const EnumerationLimits& limits = {});

// Edge count of the shortest directed cycle; nullopt for acyclic graphs.
std::optional<std::size_t> girth_bruteforce(const MetricGraph& g, const EnumerationLimits& limits = {});

} // namespace diracgraph
