#include "diracgraph/io.hpp"

#include "diracgraph/errors.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_set>

namespace diracgraph::io {

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

GraphPtr parse_graph(const json& doc)
{
    if (!doc.is_object()) throw ParseError("graph document must be an object");
    if (!doc.contains("vertices") || !doc["vertices"].is_array()) throw ParseError("graph needs a \"vertices\" array");
    if (!doc.contains("edges") || !doc["edges"].is_array()) throw ParseError("graph needs an \"edges\" array");

    std::vector<VertexId> vertices;
    std::unordered_set<std::string> vset;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_string()) throw ParseError("vertex ids must be strings");
        if (!vset.insert(v.get<std::string>()).second) throw ParseError("duplicate vertex id '" + v.get<std::string>() + "'");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<EdgeRecord> edges;
    std::unordered_set<std::string> eset;
    for (const auto& e : doc["edges"]) {
        if (!e.is_object()) throw ParseError("edges must be objects");
        EdgeRecord rec;
        try {
            rec.id = e.at("id").get<std::string>();
            rec.tail = e.at("tail").get<std::string>();
            rec.head = e.at("head").get<std::string>();
            if (e.contains("length")) rec.length = e["length"].get<double>();
        } catch (const json::exception& ex) {
            throw ParseError(std::string("bad edge record: ") + ex.what());
        }
        if (!eset.insert(rec.id).second) throw ParseError("duplicate edge id '" + rec.id + "'");
        if (!vset.count(rec.tail)) throw ParseError("edge '" + rec.id + "' has unknown tail '" + rec.tail + "'");
        if (!vset.count(rec.head)) throw ParseError("edge '" + rec.id + "' has unknown head '" + rec.head + "'");
        edges.push_back(std::move(rec));
    }
    return make_graph(std::move(vertices), std::move(edges));
}

GraphPtr load_graph(const std::filesystem::path& path)
{
    return parse_graph(read_json_file(path));
}

json to_json(const MetricGraph& g)
{
    json edges = json::array();
    for (const auto& e : g.edges()) {
        edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"length", e.length}});
    }
    return {{"vertices", g.vertices()}, {"edges", edges}};
}

Complex parse_complex(const json& value)
{
    if (value.is_number()) return {value.get<double>(), 0.0};
    if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
        return {value[0].get<double>(), value[1].get<double>()};
    }
    throw ParseError("complex numbers are written as [re, im] or as a real number");
}

json to_json(Complex z)
{
    return json::array({z.real(), z.imag()});
}

CMatrix parse_matrix(const json& rows)
{
    if (!rows.is_array()) throw ParseError("matrix must be an array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto m = n == 0 ? 0 : static_cast<Eigen::Index>(rows[0].size());
    CMatrix out(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<Eigen::Index>(rows[i].size()) != m) {
            throw ParseError("matrix rows must have equal length");
        }
        for (Eigen::Index j = 0; j < m; ++j) out(i, j) = parse_complex(rows[i][j]);
    }
    return out;
}

json to_json(const CMatrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

BoundarySpec parse_boundary(const json& doc, const GraphPtr& g)
{
    using Kind = BoundarySpec::Kind;
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
        throw ParseError("boundary condition needs a \"type\"");
    }
    const auto type = doc["type"].get<std::string>();
    const int r = doc.value("r", 1);
    try {
        if (type == "subspace") {
            if (!doc.contains("basis")) throw ParseError("subspace condition needs a \"basis\"");
            const CMatrix rows = parse_matrix(doc["basis"]);
            const auto dim = trace_dimension(*g, r);
            if (rows.rows() != 0 && rows.cols() != dim) {
                throw ParseError("basis vectors must have " + std::to_string(dim) + " entries");
            }
            CMatrix basis = rows.rows() == 0 ? CMatrix(dim, 0) : CMatrix(rows.transpose());
            return {Kind::Subspace, BoundarySubspace(g, std::move(basis), r), std::nullopt, std::nullopt};
        }
        if (type == "endomorphism") {
            if (!doc.contains("matrix")) throw ParseError("endomorphism condition needs a \"matrix\"");
            GEndomorphism a(g, parse_matrix(doc["matrix"]), doc.value("structure_tol", 0.0));
            auto b = graph_of(a);
            return {Kind::Endomorphism, std::move(b), std::move(a), std::nullopt};
        }
        if (type == "adjacency") {
            auto a = build_adjacency(g);
            auto b = graph_of(a);
            return {Kind::Adjacency, std::move(b), std::move(a), std::nullopt};
        }
        if (type == "permutation") {
            if (!doc.contains("map") || !doc["map"].is_object()) throw ParseError("permutation needs a \"map\" object");
            std::map<EdgeId, EdgeId> map;
            for (const auto& [k, v] : doc["map"].items()) map[k] = v.get<std::string>();
            auto p = GPermutation::from_ids(g, map);
            auto a = p.endomorphism();
            auto b = graph_of(a);
            return {Kind::Permutation, std::move(b), std::move(a), std::move(p)};
        }
        if (type == "zero") return {Kind::Zero, BoundarySubspace::zero(g, r), std::nullopt, std::nullopt};
        if (type == "full") return {Kind::Full, BoundarySubspace::full(g, r), std::nullopt, std::nullopt};
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad boundary condition: ") + e.what());
    }
    throw ParseError("unknown boundary condition type '" + type + "'");
}

BoundarySpec load_boundary(const std::filesystem::path& path, const GraphPtr& g)
{
    return parse_boundary(read_json_file(path), g);
}

json to_json(const MultiPoly& p, const MetricGraph& g)
{
    json terms = json::array();
    for (const auto& [mask, c] : p.terms()) {
        json edges = json::array();
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            if ((mask >> e) & 1) edges.push_back(g.edge(e).id);
        }
        terms.push_back({{"edges", edges}, {"coeff", to_json(c)}});
    }
    return {{"terms", terms}};
}

json univariate_to_json(const std::vector<Complex>& coeffs)
{
    json out = json::array();
    for (const auto& c : coeffs) out.push_back(to_json(c));
    return out;
}

namespace {

std::string number(double x)
{
    if (std::abs(x - std::round(x)) < 1e-9 && std::abs(x) < 1e15) {
        return std::to_string(static_cast<long long>(std::llround(x)));
    }
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

} // namespace

std::string format_univariate(const std::vector<Complex>& coeffs, const std::string& var)
{
    std::string out;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        const Complex c = coeffs[k];
        if (std::abs(c) < 1e-12) continue;
        const bool real = std::abs(c.imag()) < 1e-12;
        const bool negative = real && c.real() < 0;
        std::string mag;
        if (real) {
            const double a = std::abs(c.real());
            if (std::abs(a - 1.0) > 1e-12 || k == 0) mag = number(a);
        } else {
            mag = "(" + number(c.real()) + (c.imag() < 0 ? "-" : "+") + number(std::abs(c.imag())) + "i)";
        }
        std::string mono;
        if (k == 1) mono = var;
        else if (k > 1) mono = var + "^" + std::to_string(k);

        std::string term = mag;
        if (!mag.empty() && !mono.empty()) term += " ";
        term += mono;

        if (out.empty()) {
            out = (negative ? "-" : "") + term;
        } else {
            out += negative ? " - " : " + ";
            out += term;
        }
    }
    return out.empty() ? "0" : out;
}

json to_json(const SpectrumReport& r)
{
    json eig = json::array();
    for (const auto& p : r.eigenvalues) {
        eig.push_back({{"re", p.lambda.real()}, {"im", p.lambda.imag()}, {"mult", p.multiplicity},
                       {"residual", p.residual}});
    }
    json out = {{"solver", std::string(to_string(r.solver))}, {"eigenvalues", eig}, {"warnings", r.warnings}};
    json window = {{"re", {r.window.re_min, r.window.re_max}}};
    if (!r.window.is_real_strip()) window["im"] = {r.window.im_min, r.window.im_max};
    out["window"] = window;
    if (r.winding_number) out["winding_number"] = *r.winding_number;
    return out;
}

std::string to_csv(const SpectrumReport& r)
{
    std::ostringstream s;
    s << std::setprecision(17);
    s << "re,im,mult\n";
    for (const auto& p : r.eigenvalues) s << p.lambda.real() << ',' << p.lambda.imag() << ',' << p.multiplicity << '\n';
    return s.str();
}

json to_json(const TrailDecomposition& d)
{
    return {{"trails", d.trail_ids()}};
}

TrailDecomposition parse_decomposition(const json& doc, const GraphPtr& g)
{
    if (!doc.is_object() || !doc.contains("trails") || !doc["trails"].is_array()) {
        throw ParseError("decomposition needs a \"trails\" array");
    }
    try {
        return TrailDecomposition::from_ids(g, doc["trails"].get<std::vector<std::vector<EdgeId>>>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad decomposition: ") + e.what());
    }
}

json to_json(const CoefficientProfile& p)
{
    return {{"n", p.n}, {"coeffs_low_to_high", p.coeffs}};
}

json to_json(const TopologyReport& r)
{
    json counts = json::object();
    for (const auto& [l, c] : r.cycle_counts) counts[std::to_string(l)] = c;
    json out = {{"girth", r.girth}, {"loops", r.loops}, {"cycle_counts", counts},
                {"a_n_minus_1", r.a_n1}, {"a_n_minus_2", r.a_n2}, {"a_n_minus_3", r.a_n3}};
    if (!r.long_cycle_counts.empty()) {
        json longc = json::object();
        for (const auto& [l, c] : r.long_cycle_counts) longc[std::to_string(l)] = c;
        out["long_cycle_counts"] = longc;
    }
    return out;
}

} // namespace diracgraph::io
