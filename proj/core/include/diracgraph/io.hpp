#pragma once

#include "diracgraph/adjacency.hpp"
#include "diracgraph/boundary.hpp"
#include "diracgraph/charpoly.hpp"
#include "diracgraph/spectrum.hpp"
#include "diracgraph/trails.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace diracgraph::io {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path);

// {"vertices": [...], "edges": [{"id","tail","head","length"?}, ...]}
GraphPtr parse_graph(const json& doc);
GraphPtr load_graph(const std::filesystem::path& path);
json to_json(const MetricGraph& g);

// [re, im] or a bare real number.
Complex parse_complex(const json& value);
json to_json(Complex z);
CMatrix parse_matrix(const json& rows);
json to_json(const CMatrix& m);

struct BoundarySpec {
    enum class Kind { Subspace, Endomorphism, Adjacency, Permutation, Zero, Full };
    Kind kind = Kind::Subspace;
    BoundarySubspace subspace;
    std::optional<GEndomorphism> endomorphism; // set unless kind is Subspace, Zero or Full
    std::optional<GPermutation> permutation;   // set for Permutation
};

BoundarySpec parse_boundary(const json& doc, const GraphPtr& g);
BoundarySpec load_boundary(const std::filesystem::path& path, const GraphPtr& g);

json to_json(const MultiPoly& p, const MetricGraph& g);
json univariate_to_json(const std::vector<Complex>& coeffs);
// "t^6 - 3 t^4 - 2 t^3"; complex coefficients are printed as (a+bi).
std::string format_univariate(const std::vector<Complex>& coeffs, const std::string& var = "t");

json to_json(const SpectrumReport& r);
std::string to_csv(const SpectrumReport& r);

json to_json(const TrailDecomposition& d);
TrailDecomposition parse_decomposition(const json& doc, const GraphPtr& g);

json to_json(const CoefficientProfile& p);
json to_json(const TopologyReport& r);

} // namespace diracgraph::io
