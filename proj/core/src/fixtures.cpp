#include "diracgraph/fixtures.hpp"

#include <stdexcept>
#include <string>

namespace diracgraph::fixtures {

namespace {
std::string edge_name(std::size_t i) { return "e" + std::to_string(i); }
std::string vertex_name(std::size_t i) { return "v" + std::to_string(i); }
} // namespace

GraphPtr rose(std::size_t n)
{
    std::vector<EdgeRecord> edges;
    for (std::size_t i = 1; i <= n; ++i) edges.push_back({edge_name(i), "v", "v", 1.0});
    return make_graph({"v"}, std::move(edges));
}

GraphPtr directed_cycle(std::size_t n, std::vector<double> lengths)
{
    if (n == 0) throw std::invalid_argument("directed_cycle needs n >= 1");
    if (lengths.empty()) lengths.assign(n, 1.0);
    if (lengths.size() != n) throw std::invalid_argument("directed_cycle: one length per edge");
    std::vector<VertexId> vertices;
    std::vector<EdgeRecord> edges;
    for (std::size_t i = 1; i <= n; ++i) {
        vertices.push_back(vertex_name(i));
        edges.push_back({edge_name(i), vertex_name(i), vertex_name(i % n + 1), lengths[i - 1]});
    }
    return make_graph(std::move(vertices), std::move(edges));
}

GraphPtr directed_path(std::size_t n, double length)
{
    std::vector<VertexId> vertices{vertex_name(0)};
    std::vector<EdgeRecord> edges;
    for (std::size_t i = 1; i <= n; ++i) {
        vertices.push_back(vertex_name(i));
        edges.push_back({edge_name(i), vertex_name(i - 1), vertex_name(i), length});
    }
    return make_graph(std::move(vertices), std::move(edges));
}

GraphPtr single_edge(double length)
{
    return make_graph({"u", "v"}, {{"e1", "u", "v", length}});
}

GraphPtr g1()
{
    return make_graph({"a", "b"}, {
        {"la", "a", "a", 1.0},
        {"ab", "a", "b", 1.0},
        {"ba", "b", "a", 1.0},
        {"lb", "b", "b", 1.0},
    });
}

GraphPtr g3()
{
    return make_graph({"a", "b", "c"}, {
        {"ab", "a", "b", 1.0},
        {"ba", "b", "a", 1.0},
        {"bc", "b", "c", 1.0},
        {"cb", "c", "b", 1.0},
        {"ca", "c", "a", 1.0},
        {"ac", "a", "c", 1.0},
    });
}

} // namespace diracgraph::fixtures
