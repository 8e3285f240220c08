#include "cli.hpp"

#include "diracgraph/diracgraph.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace diracgraph::cli {

namespace {

using io::json;

struct Refusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string graph_path;
    std::string bc_path;
    std::vector<double> window;
    std::vector<double> rect;
    std::string format = "auto";
    double tol = 0.0;
    unsigned threads = 0;
    std::size_t cap = 24;
    unsigned long seed = 0;

    bool verify = false;
    bool exact = false, scan = false, contour = false;
    bool multivariate = false, univariate = false, adjacency = false;
    bool enumerate = false, trail_spectrum = false;
    std::string permutation_path;
    std::string decomposition_path;
    std::optional<std::size_t> k;
    bool compute_k = false;
    std::string connectivity = "directed";
};

std::string pick_format(const Config& c, const std::string& fallback)
{
    return c.format == "auto" ? fallback : c.format;
}

void emit(std::ostream& out, const json& j, const std::string& format)
{
    if (format == "pretty") {
        out << j.dump(2) << '\n';
    } else {
        out << j.dump() << '\n';
    }
}

SpectrumOptions spectrum_options(const Config& c)
{
    SpectrumOptions o;
    if (c.tol > 0.0) o.tol.root_residual = c.tol;
    o.threads = c.threads;
    return o;
}

Window window_of(const Config& c)
{
    if (!c.rect.empty()) return Window::rect(c.rect[0], c.rect[1], c.rect[2], c.rect[3]);
    if (!c.window.empty()) return Window::real(c.window[0], c.window[1]);
    return Window::real(-10.0, 10.0);
}

GraphPtr load_valid_graph(const Config& c)
{
    auto g = io::load_graph(c.graph_path);
    require_valid(*g);
    return g;
}

// Recovers A with B = Gamma(A) from a subspace condition when possible.
std::optional<GEndomorphism> endomorphism_of(const BoundarySubspace& b)
{
    const auto& g = b.graph();
    const auto m = static_cast<Eigen::Index>(g->edge_count());
    if (b.r() != 1 || b.dim() != m) return std::nullopt;
    CMatrix plus(m, m), minus(m, m);
    const auto& q = b.orthonormal_basis();
    for (Eigen::Index e = 0; e < m; ++e) {
        plus.row(e) = q.row(plus_index(e));
        minus.row(e) = q.row(minus_index(e));
    }
    Eigen::FullPivLU<CMatrix> lu(plus);
    if (!lu.isInvertible()) return std::nullopt;
    const CMatrix a = minus * lu.inverse();
    try {
        return GEndomorphism(g, a, 1e-10);
    } catch (const PreconditionError&) {
        return std::nullopt;
    }
}

int cmd_validate(const Config& c, std::ostream& out)
{
    const auto g = io::load_graph(c.graph_path);
    const auto violations = validate(*g);
    json list = json::array();
    for (const auto& v : violations) {
        list.push_back({{"kind", std::string(to_string(v.kind))}, {"subject", v.subject}, {"message", v.message}});
    }
    emit(out, {{"valid", violations.empty()}, {"violations", list}}, pick_format(c, "json"));
    return violations.empty() ? kOk : kRefused;
}

int cmd_index(const Config& c, std::ostream& out)
{
    const auto g = load_valid_graph(c);
    const auto spec = io::load_boundary(c.bc_path, g);
    const auto ind = index(spec.subspace);
    if (!c.verify) {
        out << ind << '\n';
        return kOk;
    }
    const auto form = TraceForm::scalar_dirac(*g);
    const auto ker = scalar_kernel_dim(spec.subspace);
    const auto coker = scalar_cokernel_dim(spec.subspace, form);
    emit(out,
         {{"index", ind},
          {"dim_B", spec.subspace.dim()},
          {"kernel_dim", ker},
          {"cokernel_dim", coker},
          {"consistent", ker - coker == ind}},
         pick_format(c, "json"));
    return ker - coker == ind ? kOk : kRefused;
}

void emit_spectrum(std::ostream& out, const SpectrumReport& r, const Config& c, json extra = json::object())
{
    const auto format = pick_format(c, "json");
    if (format == "csv") {
        out << io::to_csv(r);
        return;
    }
    auto j = io::to_json(r);
    for (auto& [k, v] : extra.items()) j[k] = v;
    emit(out, j, format);
}

int cmd_spectrum(const Config& c, std::ostream& out, std::ostream& err)
{
    const auto g = load_valid_graph(c);
    const auto spec = io::load_boundary(c.bc_path, g);
    const auto window = window_of(c);
    const auto options = spectrum_options(c);

    std::optional<GEndomorphism> a = spec.endomorphism;
    if (!a) a = endomorphism_of(spec.subspace);
    if (!a) {
        const auto m = static_cast<Eigen::Index>(g->edge_count());
        if (spec.subspace.dim() != m) {
            emit(out,
                 {{"whole_plane_expected", true},
                  {"dim_B", spec.subspace.dim()},
                  {"edges", m},
                  {"warnings", {"dim B != |E|: every complex number is expected in the spectrum"}}},
                 pick_format(c, "json"));
            err << "boundary condition has dim " << spec.subspace.dim() << " != |E| = " << m
                << "; the spectrum is expected to be the whole plane\n";
            return kRefused;
        }
        throw Refusal("boundary condition is not the graph of a G-endomorphism; no solver applies");
    }

    SpectrumReport report;
    if (c.exact) {
        const auto comm = detect_commensurable(g->lengths());
        if (!comm) throw Refusal("edge lengths are not commensurable; use --scan or --contour");
        report = spectrum_exact_commensurable(*a, comm->multipliers, comm->delta, window, options);
    } else if (c.scan) {
        report = spectrum_numeric(*a, window, options);
    } else if (c.contour) {
        if (!window.is_bounded()) throw PreconditionError("--contour needs --rect RE_MIN RE_MAX IM_MIN IM_MAX");
        report = spectrum_complex(*a, window, options);
    } else {
        report = solve_spectrum(*a, window, options);
        if (!is_unitary(*a, 1e-8) && window.is_real_strip() && report.solver == SolverKind::RealScan) {
            err << "warning: A is not unitary; eigenvalues off the real axis need --contour --rect\n";
        }
    }
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    emit_spectrum(out, report, c);
    return kOk;
}

int cmd_charpoly(const Config& c, std::ostream& out)
{
    const auto g = load_valid_graph(c);
    const EnumerationLimits limits{c.cap};
    const bool adjacency = c.adjacency || c.bc_path.empty();

    MultiPoly p;
    if (adjacency) {
        p = charpoly_via_collections(*g, limits);
    } else {
        const auto spec = io::load_boundary(c.bc_path, g);
        std::optional<GEndomorphism> a = spec.endomorphism;
        if (!a) a = endomorphism_of(spec.subspace);
        if (!a) throw Refusal("boundary condition is not the graph of a G-endomorphism");
        p = char_poly(*a);
    }

    if (c.multivariate) {
        emit(out, io::to_json(p, *g), pick_format(c, "json"));
        return kOk;
    }
    const std::vector<long> ones(g->edge_count(), 1);
    const auto coeffs = specialize_univariate(p, ones);
    const auto format = pick_format(c, "text");
    if (format == "text") {
        out << io::format_univariate(coeffs) << '\n';
        return kOk;
    }
    json j = {{"text", io::format_univariate(coeffs)}};
    if (adjacency) {
        const auto profile = coefficient_profile(*g, limits);
        j["n"] = profile.n;
        j["coeffs_low_to_high"] = profile.coeffs;
    } else {
        j["coeffs_low_to_high"] = io::univariate_to_json(coeffs);
    }
    emit(out, j, format);
    return kOk;
}

GPermutation load_permutation(const std::string& path, const GraphPtr& g)
{
    auto doc = io::read_json_file(path);
    if (doc.is_object() && !doc.contains("type")) doc["type"] = "permutation";
    auto spec = io::parse_boundary(doc, g);
    if (!spec.permutation) throw ParseError(path + " does not describe a permutation");
    return *spec.permutation;
}

int cmd_trails(const Config& c, std::ostream& out, std::ostream& err)
{
    const auto g = load_valid_graph(c);
    const auto format = pick_format(c, "json");

    std::optional<GPermutation> perm;
    if (!c.permutation_path.empty()) perm = load_permutation(c.permutation_path, g);
    if (!c.decomposition_path.empty()) {
        perm = decomposition_to_permutation(io::parse_decomposition(io::read_json_file(c.decomposition_path), g));
    }

    if (c.trail_spectrum) {
        if (!perm) throw PreconditionError("--spectrum needs --from-permutation FILE or --decomposition FILE");
        const auto report = permutation_spectrum(*perm, window_of(c));
        json extra = {{"trail_count", permutation_to_decomposition(*perm).size()}};
        try {
            const auto longest = longest_trail_from_spectrum(report);
            extra["longest_trail"] = {{"length", longest.length}, {"count", longest.count}};
        } catch (const NoPositiveEigenvalue&) {
            err << "warning: no positive eigenvalue in the window\n";
        }
        emit_spectrum(out, report, c, extra);
        return kOk;
    }
    if (c.enumerate || !perm) {
        const auto perms = enumerate_g_permutations(g);
        if (perms.empty()) throw Refusal("no G-permutations exist: the graph is not Eulerian");
        json list = json::array();
        for (const auto& p : perms) list.push_back(io::to_json(permutation_to_decomposition(p)));
        emit(out, {{"count", perms.size()}, {"decompositions", list}}, format);
        return kOk;
    }
    if (!c.decomposition_path.empty()) {
        json map = json::object();
        for (std::size_t e = 0; e < g->edge_count(); ++e) map[g->edge(e).id] = g->edge((*perm)(e)).id;
        emit(out, {{"type", "permutation"}, {"map", map}}, format);
        return kOk;
    }
    auto j = io::to_json(permutation_to_decomposition(*perm));
    j["loops"] = loop_count_via_trace(*perm);
    emit(out, j, format);
    return kOk;
}

int cmd_topology(const Config& c, std::ostream& out)
{
    const auto g = load_valid_graph(c);
    const EnumerationLimits limits{c.cap};
    const auto profile = coefficient_profile(*g, limits);
    auto k = c.k;
    if (c.compute_k) {
        k = edge_connectivity(*g, c.connectivity == "undirected" ? Connectivity::Undirected : Connectivity::Directed);
    }
    TopologyReport report;
    try {
        report = topology_from_coefficients(profile, k);
    } catch (const AcyclicGraph&) {
        throw Refusal("no cycles: girth is undefined");
    }
    auto j = io::to_json(report);
    j["profile"] = io::to_json(profile);
    if (k) j["k_connectivity"] = *k;
    emit(out, j, pick_format(c, "json"));
    return kOk;
}

int cmd_selfadjoint(const Config& c, std::ostream& out, std::ostream& err)
{
    const auto g = load_valid_graph(c);
    const auto spec = io::load_boundary(c.bc_path, g);
    const auto result = self_adjointness_witness(spec.subspace, TraceForm::scalar_dirac(*g));
    const auto format = pick_format(c, "json");
    if (!result) {
        const auto reason = std::string(to_string(*result.refusal));
        emit(out, {{"self_adjoint", false}, {"reason", reason}}, format);
        err << "not self-adjoint: " << reason << '\n';
        return kRefused;
    }
    emit(out,
         {{"self_adjoint", true},
          {"unitary", is_unitary(*result.endomorphism)},
          {"matrix", io::to_json(result.endomorphism->matrix())}},
         format);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Dirac operators on metric directed multigraphs"};
    app.require_subcommand(1);
    app.fallthrough();

    Config c;
    app.add_option("--tol", c.tol, "Root residual tolerance")->check(CLI::PositiveNumber);
    app.add_option("--window", c.window, "Real search interval A B")->expected(2);
    app.add_option("--rect", c.rect, "Complex rectangle RE_MIN RE_MAX IM_MIN IM_MAX")->expected(4);
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"auto", "json", "csv", "pretty", "text"}));
    app.add_option("--threads", c.threads, "Solver threads (0: all cores)");
    app.add_option("--cap", c.cap, "Edge-count cap for cycle enumeration")->check(CLI::PositiveNumber);
    app.add_option("--seed", c.seed, "Seed for randomized helpers (core computations ignore it)");

    auto* validate = app.add_subcommand("validate", "Check the metric graph invariants");
    validate->add_option("graph", c.graph_path)->required();

    auto* index_cmd = app.add_subcommand("index", "Index of the boundary condition");
    index_cmd->add_option("graph", c.graph_path)->required();
    index_cmd->add_option("--bc", c.bc_path, "Boundary condition file")->required();
    index_cmd->add_flag("--verify", c.verify, "Also count kernel and cokernel");

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the scalar Dirac operator");
    spectrum->add_option("graph", c.graph_path)->required();
    spectrum->add_option("--bc", c.bc_path, "Boundary condition file")->required();
    auto* exact = spectrum->add_flag("--exact", c.exact, "Commensurable-length solver");
    auto* scan = spectrum->add_flag("--scan", c.scan, "Real-line scan");
    auto* contour = spectrum->add_flag("--contour", c.contour, "Argument-principle solver");
    exact->excludes(scan, contour);
    scan->excludes(contour);

    auto* charpoly = app.add_subcommand("charpoly", "Characteristic polynomial");
    charpoly->add_option("graph", c.graph_path)->required();
    charpoly->add_option("--bc", c.bc_path, "Boundary condition file");
    auto* multi = charpoly->add_flag("--multivariate", c.multivariate, "Print P_A(x)");
    auto* uni = charpoly->add_flag("--univariate", c.univariate, "Print P_A(t, ..., t)");
    multi->excludes(uni);
    charpoly->add_flag("--adjacency", c.adjacency, "Use the directed adjacency condition");

    auto* trails = app.add_subcommand("trails", "Closed-trail decompositions");
    trails->add_option("graph", c.graph_path)->required();
    trails->add_flag("--enumerate", c.enumerate, "List every decomposition");
    trails->add_option("--from-permutation", c.permutation_path, "Permutation file")->check(CLI::ExistingFile);
    trails->add_option("--decomposition", c.decomposition_path, "Decomposition file")->check(CLI::ExistingFile);
    trails->add_flag("--spectrum", c.trail_spectrum, "Closed-form spectrum of the permutation condition");

    auto* topology = app.add_subcommand("topology", "Girth and cycle counts from coefficients");
    topology->add_option("graph", c.graph_path)->required();
    topology->add_option("--k", c.k, "Known edge connectivity");
    topology->add_flag("--compute-k", c.compute_k, "Compute edge connectivity by brute force (small graphs)");
    topology->add_option("--connectivity", c.connectivity, "directed or undirected")
        ->check(CLI::IsMember({"directed", "undirected"}));

    auto* selfadjoint = app.add_subcommand("selfadjoint", "Unitary witness or refusal reason");
    selfadjoint->add_option("graph", c.graph_path)->required();
    selfadjoint->add_option("--bc", c.bc_path, "Boundary condition file")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        if (validate->parsed()) return cmd_validate(c, out);
        if (index_cmd->parsed()) return cmd_index(c, out);
        if (spectrum->parsed()) return cmd_spectrum(c, out, err);
        if (charpoly->parsed()) return cmd_charpoly(c, out);
        if (trails->parsed()) return cmd_trails(c, out, err);
        if (topology->parsed()) return cmd_topology(c, out);
        if (selfadjoint->parsed()) return cmd_selfadjoint(c, out, err);
    } catch (const Refusal& e) {
        err << "error: " << e.what() << '\n';
        return kRefused;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvalidGraph& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvalidDecomposition& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const PreconditionError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kRefused;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRefused;
    }
    return kInputError;
}

} // namespace diracgraph::cli
