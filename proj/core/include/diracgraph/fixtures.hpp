#pragma once

#include "diracgraph/graph.hpp"

#include <vector>

// Small named graphs used throughout the tests, benchmarks and CLI examples.
namespace diracgraph::fixtures {

// One vertex "v" carrying n loops e1..en of unit length.
GraphPtr rose(std::size_t n);

// Directed cycle v1 -> v2 -> ... -> vn -> v1 on edges e1..en. Empty lengths mean unit.
GraphPtr directed_cycle(std::size_t n, std::vector<double> lengths = {});

// Directed path v0 -> v1 -> ... -> vn on edges e1..en.
GraphPtr directed_path(std::size_t n, double length = 1.0);

// u -> v, the smallest non-Eulerian graph.
GraphPtr single_edge(double length = 1.0);

// Two vertices joined by a 2-cycle, with a loop on each vertex.
GraphPtr g1();

// Bidirected triangle.
GraphPtr g3();

} // namespace diracgraph::fixtures
