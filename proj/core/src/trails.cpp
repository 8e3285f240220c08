#include "diracgraph/trails.hpp"

#include "diracgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace diracgraph {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

GPermutation::GPermutation(GraphPtr g, std::vector<std::size_t> successor)
    : graph_(std::move(g)), successor_(std::move(successor))
{
    if (!graph_) throw PreconditionError("null graph");
    require_valid(*graph_);
    const auto n = graph_->edge_count();
    if (successor_.size() != n) throw PreconditionError("G-permutation needs one image per edge");
    std::vector<char> hit(n, 0);
    for (std::size_t e = 0; e < n; ++e) {
        const auto f = successor_[e];
        if (f >= n) throw PreconditionError("G-permutation maps to an unknown edge");
        if (hit[f]++) throw PreconditionError("G-permutation is not injective at " + graph_->edge(f).id);
        if (graph_->head(e) != graph_->tail(f)) {
            throw PreconditionError(graph_->edge(f).id + " does not start where " + graph_->edge(e).id + " ends");
        }
    }
}

GPermutation GPermutation::from_ids(GraphPtr g, const std::map<EdgeId, EdgeId>& map)
{
    if (!g) throw PreconditionError("null graph");
    std::vector<std::size_t> succ(g->edge_count(), npos);
    for (const auto& [from, to] : map) {
        const auto e = g->find_edge(from);
        const auto f = g->find_edge(to);
        if (!e || !f) throw PreconditionError("permutation names unknown edge '" + (e ? to : from) + "'");
        succ[*e] = *f;
    }
    for (std::size_t e = 0; e < succ.size(); ++e) {
        if (succ[e] == npos) throw PreconditionError("permutation leaves edge '" + g->edge(e).id + "' unmapped");
    }
    return GPermutation(std::move(g), std::move(succ));
}

CMatrix GPermutation::matrix() const
{
    const auto n = static_cast<Eigen::Index>(successor_.size());
    CMatrix m = CMatrix::Zero(n, n);
    for (Eigen::Index e = 0; e < n; ++e) m(successor_[e], e) = 1.0;
    return m;
}

GEndomorphism GPermutation::endomorphism() const
{
    return GEndomorphism(graph_, matrix());
}

TrailDecomposition::TrailDecomposition(GraphPtr g, std::vector<std::vector<std::size_t>> trails)
    : graph_(std::move(g)), trails_(std::move(trails))
{
    if (!graph_) throw InvalidDecomposition("null graph");
    const auto& gr = *graph_;
    std::vector<char> seen(gr.edge_count(), 0);
    for (auto& t : trails_) {
        if (t.empty()) throw InvalidDecomposition("empty trail");
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto e = t[i];
            if (e >= gr.edge_count()) throw InvalidDecomposition("trail uses an unknown edge");
            if (seen[e]++) throw InvalidDecomposition("edge '" + gr.edge(e).id + "' is used twice");
            const auto next = t[(i + 1) % t.size()];
            if (next < gr.edge_count() && gr.head(e) != gr.tail(next)) {
                throw InvalidDecomposition("'" + gr.edge(next).id + "' does not start where '" + gr.edge(e).id +
                                           "' ends");
            }
        }
        const auto lead = std::min_element(t.begin(), t.end(), [&](std::size_t a, std::size_t b) {
            return gr.edge(a).id < gr.edge(b).id;
        });
        std::rotate(t.begin(), lead, t.end());
    }
    for (std::size_t e = 0; e < gr.edge_count(); ++e) {
        if (!seen[e]) throw InvalidDecomposition("edge '" + gr.edge(e).id + "' is not covered");
    }
    std::sort(trails_.begin(), trails_.end(), [&](const auto& a, const auto& b) {
        return gr.edge(a.front()).id < gr.edge(b.front()).id;
    });
}

TrailDecomposition TrailDecomposition::from_ids(GraphPtr g, const std::vector<std::vector<EdgeId>>& trails)
{
    if (!g) throw InvalidDecomposition("null graph");
    std::vector<std::vector<std::size_t>> idx;
    for (const auto& t : trails) {
        auto& out = idx.emplace_back();
        for (const auto& id : t) {
            const auto e = g->find_edge(id);
            if (!e) throw InvalidDecomposition("unknown edge '" + id + "'");
            out.push_back(*e);
        }
    }
    return TrailDecomposition(std::move(g), std::move(idx));
}

std::vector<double> TrailDecomposition::lengths() const
{
    std::vector<double> out;
    for (const auto& t : trails_) {
        double l = 0.0;
        for (const auto e : t) l += graph_->length(e);
        out.push_back(l);
    }
    return out;
}

std::vector<std::vector<EdgeId>> TrailDecomposition::trail_ids() const
{
    std::vector<std::vector<EdgeId>> out;
    for (const auto& t : trails_) {
        auto& ids = out.emplace_back();
        for (const auto e : t) ids.push_back(graph_->edge(e).id);
    }
    return out;
}

TrailDecomposition permutation_to_decomposition(const GPermutation& p)
{
    const auto n = p.successors().size();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<std::size_t>> trails;
    for (std::size_t e = 0; e < n; ++e) {
        if (seen[e]) continue;
        auto& t = trails.emplace_back();
        for (auto f = e; !seen[f]; f = p(f)) {
            seen[f] = 1;
            t.push_back(f);
        }
    }
    return TrailDecomposition(p.graph(), std::move(trails));
}

GPermutation decomposition_to_permutation(const TrailDecomposition& d)
{
    std::vector<std::size_t> succ(d.graph()->edge_count());
    for (const auto& t : d.trails()) {
        for (std::size_t i = 0; i < t.size(); ++i) succ[t[i]] = t[(i + 1) % t.size()];
    }
    return GPermutation(d.graph(), std::move(succ));
}

std::size_t count_g_permutations(const MetricGraph& g)
{
    constexpr auto cap = std::numeric_limits<std::size_t>::max();
    std::size_t total = 1;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto d = g.in_edges(v).size();
        if (d != g.out_edges(v).size()) return 0;
        for (std::size_t k = 2; k <= d; ++k) {
            if (total > cap / k) return cap;
            total *= k;
        }
    }
    return total;
}

std::vector<GPermutation> enumerate_g_permutations(const GraphPtr& g, std::size_t limit)
{
    if (!g) throw PreconditionError("null graph");
    require_valid(*g);
    const auto total = count_g_permutations(*g);
    if (total == 0) return {};
    if (total > limit) {
        throw EnumerationLimitExceeded("graph has " +
                                       (total == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                                         : std::to_string(total)) +
                                       " G-permutations (limit " + std::to_string(limit) +
                                       "); sample per-vertex bijections instead");
    }

    // Per vertex, the images of its incoming edges (in edge order) run through all
    // arrangements of its outgoing edges in lexicographic order; the last vertex
    // varies fastest.
    const auto nv = g->vertex_count();
    std::vector<std::vector<std::size_t>> arrangement(nv);
    for (std::size_t v = 0; v < nv; ++v) arrangement[v] = g->out_edges(v);

    std::vector<GPermutation> out;
    out.reserve(total);
    std::vector<std::size_t> succ(g->edge_count());
    while (true) {
        for (std::size_t v = 0; v < nv; ++v) {
            const auto& ins = g->in_edges(v);
            for (std::size_t i = 0; i < ins.size(); ++i) succ[ins[i]] = arrangement[v][i];
        }
        out.emplace_back(g, succ);
        std::size_t v = nv;
        while (v > 0) {
            --v;
            if (std::next_permutation(arrangement[v].begin(), arrangement[v].end())) break;
            if (v == 0) return out;
        }
        if (nv == 0) return out;
    }
}

std::size_t loop_count_via_trace(const GPermutation& p)
{
    return static_cast<std::size_t>(std::llround(p.matrix().trace().real()));
}

SpectrumReport permutation_spectrum(const GPermutation& p, const Window& window, double divisibility_rtol)
{
    if (!std::isfinite(window.re_min) || !std::isfinite(window.re_max)) {
        throw PreconditionError("the real part of the window must be bounded");
    }
    const auto d = permutation_to_decomposition(p);
    const auto trail_lengths = d.lengths();
    const auto& g = *p.graph();
    const auto m = trail_lengths.size();

    SpectrumReport report;
    report.solver = SolverKind::ClosedForm;
    report.window = window;
    if (window.im_min > 0.0 || window.im_max < 0.0) return report;

    auto divisible = [&](double x) { return std::abs(x - std::round(x)) <= divisibility_rtol * std::max(1.0, std::abs(x)); };

    std::vector<double> lambdas;
    for (const auto L : trail_lengths) {
        const auto k_lo = static_cast<long>(std::ceil(window.re_min * L / kTwoPi - 1e-12));
        const auto k_hi = static_cast<long>(std::floor(window.re_max * L / kTwoPi + 1e-12));
        for (long k = k_lo; k <= k_hi; ++k) lambdas.push_back(kTwoPi * static_cast<double>(k) / L);
    }
    std::sort(lambdas.begin(), lambdas.end());

    const Complex i(0.0, 1.0);
    const double scale = std::ldexp(1.0, static_cast<int>(m));
    std::vector<double> kept;
    for (const auto lambda : lambdas) {
        if (!kept.empty() && std::abs(lambda - kept.back()) <= 1e-9 * std::max(1.0, std::abs(lambda))) continue;
        kept.push_back(lambda);

        SpectralPoint pt;
        pt.lambda = Complex(lambda, 0.0);
        Complex prod = 1.0;
        std::vector<std::size_t> members;
        for (std::size_t j = 0; j < m; ++j) {
            prod *= std::exp(i * lambda * trail_lengths[j]) - 1.0;
            if (lambda == 0.0 || divisible(trail_lengths[j] * lambda / kTwoPi)) members.push_back(j);
        }
        pt.residual = std::abs(prod) / scale;
        pt.multiplicity = static_cast<int>(members.size());

        // One mode per resonant trail: w_{P(e)} = w_e exp(-i lambda l_e) along the trail.
        pt.modes = CMatrix::Zero(static_cast<Eigen::Index>(g.edge_count()), pt.multiplicity);
        for (std::size_t c = 0; c < members.size(); ++c) {
            const auto& t = d.trails()[members[c]];
            Complex w = 1.0;
            for (const auto e : t) {
                pt.modes(e, c) = w;
                w *= std::exp(-i * lambda * g.length(e));
            }
            pt.modes.col(c).normalize();
        }
        report.eigenvalues.push_back(std::move(pt));
    }
    return report;
}

LongestTrail longest_trail_from_spectrum(const SpectrumReport& report, double tol)
{
    const SpectralPoint* best = nullptr;
    for (const auto& p : report.eigenvalues) {
        if (p.lambda.real() <= tol || std::abs(p.lambda.imag()) > tol) continue;
        if (!best || p.lambda.real() < best->lambda.real()) best = &p;
    }
    if (!best) throw NoPositiveEigenvalue("spectrum has no positive eigenvalue in the window");
    return {kTwoPi / best->lambda.real(), best->multiplicity};
}

} // namespace diracgraph
