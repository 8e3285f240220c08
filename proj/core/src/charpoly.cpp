#include "diracgraph/charpoly.hpp"

#include "diracgraph/errors.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace diracgraph {

MultiPoly::MultiPoly(std::size_t variables) : variables_(variables)
{
    if (variables > kMaxVariables) throw std::length_error("MultiPoly supports at most 64 variables");
}

Complex MultiPoly::coefficient(Mask m) const
{
    const auto it = terms_.find(m);
    return it == terms_.end() ? Complex{} : it->second;
}

void MultiPoly::add_term(Mask m, Complex c)
{
    if (variables_ < kMaxVariables && (m >> variables_) != 0) {
        throw std::out_of_range("monomial uses a variable beyond the polynomial's range");
    }
    if (c == Complex{}) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex{}) terms_.erase(it);
    }
}

void MultiPoly::prune(double rtol)
{
    double biggest = 1.0;
    for (const auto& [m, c] : terms_) biggest = std::max(biggest, std::abs(c));
    const double cut = rtol * biggest;
    std::erase_if(terms_, [cut](const auto& kv) { return std::abs(kv.second) <= cut; });
}

Complex MultiPoly::evaluate(std::span<const Complex> x) const
{
    if (x.size() != variables_) throw std::invalid_argument("MultiPoly::evaluate: wrong number of values");
    Complex sum{};
    for (const auto& [m, c] : terms_) {
        Complex term = c;
        for (Mask rest = m; rest != 0; rest &= rest - 1) term *= x[std::countr_zero(rest)];
        sum += term;
    }
    return sum;
}

double MultiPoly::scale() const
{
    double s = 0.0;
    for (const auto& [m, c] : terms_) s += std::abs(c);
    return s;
}

MultiPoly MultiPoly::embed(std::span<const std::size_t> positions, std::size_t variables) const
{
    if (positions.size() != variables_) throw std::invalid_argument("embed: one position per variable");
    MultiPoly out(variables);
    for (const auto& [m, c] : terms_) {
        Mask mapped = 0;
        for (Mask rest = m; rest != 0; rest &= rest - 1) {
            mapped |= Mask{1} << positions[std::countr_zero(rest)];
        }
        out.add_term(mapped, c);
    }
    return out;
}

MultiPoly MultiPoly::substitute(std::size_t var, Complex value) const
{
    if (var >= variables_) throw std::out_of_range("substitute: no such variable");
    const Mask low = (Mask{1} << var) - 1;
    MultiPoly out(variables_ - 1);
    for (const auto& [m, c] : terms_) {
        const bool has = (m >> var) & 1;
        const Mask shifted = (m & low) | ((m >> (var + 1)) << var);
        out.add_term(shifted, has ? c * value : c);
    }
    return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly out(std::max(a.variables_, b.variables_));
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            if (ma & mb) throw std::domain_error("product would leave the multilinear range");
            out.add_term(ma | mb, ca * cb);
        }
    }
    return out;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly out(std::max(a.variables_, b.variables_));
    for (const auto& [m, c] : a.terms_) out.add_term(m, c);
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly out(std::max(a.variables_, b.variables_));
    for (const auto& [m, c] : a.terms_) out.add_term(m, c);
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
}

double MultiPoly::max_abs_difference(const MultiPoly& other) const
{
    double worst = 0.0;
    for (const auto& [m, c] : (*this - other).terms_) worst = std::max(worst, std::abs(c));
    return worst;
}

MultiPoly char_poly(const CMatrix& a)
{
    const auto n = static_cast<std::size_t>(a.rows());
    if (a.cols() != a.rows()) throw std::invalid_argument("char_poly needs a square matrix");
    if (n > kMaxVariables) throw std::length_error("char_poly supports at most 64 edges");

    // Row k of diag(x) - A is expanded against every column subset reachable from the
    // rows above it. Keys are the used columns; the sign is that of the Laplace cofactor.
    using Poly = std::unordered_map<Mask, Complex>;
    std::unordered_map<Mask, Poly> layer{{Mask{0}, Poly{{Mask{0}, Complex{1.0}}}}};
    for (std::size_t k = 0; k < n; ++k) {
        std::unordered_map<Mask, Poly> next;
        for (const auto& [used, poly] : layer) {
            int unused_before = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if ((used >> j) & 1) continue;
                const double sign = (unused_before++ % 2 == 0) ? 1.0 : -1.0;
                const Complex off = -a(k, j);
                const bool diagonal = j == k;
                if (!diagonal && off == Complex{}) continue;
                auto& target = next[used | (Mask{1} << j)];
                for (const auto& [m, c] : poly) {
                    if (off != Complex{}) target[m] += sign * off * c;
                    if (diagonal) target[m | (Mask{1} << k)] += sign * c;
                }
            }
        }
        layer = std::move(next);
    }

    MultiPoly out(n);
    const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    if (auto it = layer.find(all); it != layer.end()) {
        for (const auto& [m, c] : it->second) out.add_term(m, c);
    }
    out.prune();
    return out;
}

MultiPoly char_poly(const GEndomorphism& a)
{
    return char_poly(a.matrix());
}

ReducedSystem reduce_vertex(const GEndomorphism& a, std::string_view vertex)
{
    const auto& g = *a.graph();
    const auto v = g.find_vertex(vertex);
    if (!v) throw PreconditionError("unknown vertex '" + std::string(vertex) + "'");
    const auto& ins = g.in_edges(*v);
    const auto& outs = g.out_edges(*v);
    if (ins.size() != 1 || outs.size() != 1) {
        throw PreconditionError("vertex '" + std::string(vertex) + "' must have in- and out-degree one");
    }
    const auto e1 = ins.front();
    const auto e2 = outs.front();
    if (e1 == e2) throw PreconditionError("vertex '" + std::string(vertex) + "' carries a loop");

    const auto& m = a.matrix();
    const Complex alpha = m(e2, e1);

    std::vector<EdgeRecord> edges;
    std::vector<std::size_t> kept; // old indices in new order
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (e == e2) continue;
        if (e == e1) {
            const auto& r1 = g.edge(e1);
            const auto& r2 = g.edge(e2);
            edges.push_back({r1.id + "~" + r2.id, r1.tail, r2.head, r1.length + r2.length});
        } else {
            edges.push_back(g.edge(e));
        }
        kept.push_back(e);
    }
    std::vector<VertexId> vertices;
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        if (u != *v) vertices.push_back(g.vertices()[u]);
    }
    auto reduced = make_graph(std::move(vertices), std::move(edges));

    const auto n = static_cast<Eigen::Index>(kept.size());
    const auto merged = static_cast<Eigen::Index>(std::find(kept.begin(), kept.end(), e1) - kept.begin());
    CMatrix t(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto oi = kept[i];
            const auto oj = kept[j];
            if (i == merged && j == merged) {
                t(i, j) = alpha * m(e1, e2);
            } else if (i == merged) {
                t(i, j) = alpha * m(e1, oj);
            } else if (j == merged) {
                t(i, j) = m(oi, e2);
            } else {
                t(i, j) = m(oi, oj);
            }
        }
    }
    return {reduced, GEndomorphism(reduced, std::move(t)), static_cast<std::size_t>(merged)};
}

std::vector<ReducibleBlock> split_reducible(const GEndomorphism& a)
{
    const auto& g = *a.graph();
    const auto n = g.edge_count();
    using Digraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
    Digraph support(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (a.matrix()(r, c) != Complex{}) boost::add_edge(c, r, support);
        }
    }
    std::vector<int> component(n);
    const int count = n == 0 ? 0 : boost::strong_components(support, component.data());

    std::vector<std::vector<std::size_t>> groups(count);
    for (std::size_t e = 0; e < n; ++e) groups[component[e]].push_back(e);
    std::sort(groups.begin(), groups.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });

    std::vector<ReducibleBlock> blocks;
    for (auto& edges : groups) {
        auto sub = induced_subgraph(g, edges);
        const auto k = static_cast<Eigen::Index>(edges.size());
        CMatrix block(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) block(i, j) = a.matrix()(edges[i], edges[j]);
        }
        blocks.push_back({std::move(edges), sub, GEndomorphism(sub, std::move(block))});
    }
    return blocks;
}

CharFunction::CharFunction(MultiPoly poly, std::vector<double> lengths)
    : poly_(std::move(poly)), lengths_(std::move(lengths))
{
    if (lengths_.size() != poly_.variables()) {
        throw std::invalid_argument("CharFunction: one length per polynomial variable");
    }
    for (const auto& [m, c] : poly_.terms()) {
        double total = 0.0;
        for (Mask rest = m; rest != 0; rest &= rest - 1) total += lengths_[std::countr_zero(rest)];
        terms_.push_back({total, c});
    }
    scale_ = poly_.scale();
}

Complex CharFunction::value(Complex lambda) const
{
    const Complex i(0.0, 1.0);
    Complex sum{};
    for (const auto& t : terms_) sum += t.coeff * std::exp(i * lambda * t.length);
    return sum;
}

Complex CharFunction::derivative(Complex lambda) const
{
    return jet(lambda).d1;
}

CharFunction::Jet CharFunction::jet(Complex lambda) const
{
    const Complex i(0.0, 1.0);
    Jet j{};
    for (const auto& t : terms_) {
        const Complex w = t.coeff * std::exp(i * lambda * t.length);
        const Complex f = i * t.length;
        j.value += w;
        j.d1 += f * w;
        j.d2 += f * f * w;
    }
    return j;
}

CharFunction char_function(const GEndomorphism& a)
{
    return CharFunction(char_poly(a), a.graph()->lengths());
}

std::vector<Complex> specialize_univariate(const MultiPoly& p, std::span<const long> multipliers)
{
    if (multipliers.size() != p.variables()) {
        throw std::invalid_argument("specialize_univariate: one multiplier per variable");
    }
    long top = 0;
    for (const auto m : multipliers) {
        if (m <= 0) throw std::invalid_argument("specialize_univariate: multipliers must be positive");
        top += m;
    }
    std::vector<Complex> out(static_cast<std::size_t>(top) + 1);
    for (const auto& [mask, c] : p.terms()) {
        long degree = 0;
        for (Mask rest = mask; rest != 0; rest &= rest - 1) degree += multipliers[std::countr_zero(rest)];
        out[degree] += c;
    }
    while (!out.empty() && out.back() == Complex{}) out.pop_back();
    return out;
}

namespace {

// Best rational approximation p/q of x with q <= max_den (continued fractions).
std::pair<long, long> rational_approximation(double x, long max_den)
{
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double rest = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(rest);
        if (a > 9.0e15) break;
        const auto ai = static_cast<long>(a);
        const long q2 = q0 + ai * q1;
        if (q2 > max_den) break;
        const long p2 = p0 + ai * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = rest - a;
        if (frac < 1e-15) break;
        rest = 1.0 / frac;
    }
    return {p1, q1};
}

} // namespace

std::optional<Commensurability> detect_commensurable(std::span<const double> lengths,
                                                     const CommensurabilityOptions& options)
{
    if (lengths.empty()) return std::nullopt;
    for (const auto l : lengths) {
        if (!(l > 0.0) || !std::isfinite(l)) return std::nullopt;
    }
    const double base = *std::min_element(lengths.begin(), lengths.end());
    long common = 1;
    for (const auto l : lengths) {
        const double ratio = l / base;
        const auto [p, q] = rational_approximation(ratio, options.max_denominator);
        if (q == 0 || std::abs(ratio - static_cast<double>(p) / q) > options.rtol * ratio) return std::nullopt;
        common = std::lcm(common, q);
        if (common > options.max_denominator) return std::nullopt;
    }
    const double delta0 = base / static_cast<double>(common);
    std::vector<long> mult;
    long g = 0;
    long total = 0;
    for (const auto l : lengths) {
        const auto m = std::llround(l / delta0);
        if (m <= 0 || std::abs(m * delta0 - l) > 1e-9 * l) return std::nullopt;
        mult.push_back(static_cast<long>(m));
        g = std::gcd(g, static_cast<long>(m));
    }
    for (auto& m : mult) {
        m /= g;
        total += m;
    }
    if (total > options.max_degree) return std::nullopt;
    // Average over edges so that delta carries no bias from the reference edge.
    double delta = 0.0;
    for (std::size_t e = 0; e < lengths.size(); ++e) delta += lengths[e] / static_cast<double>(mult[e]);
    delta /= static_cast<double>(lengths.size());
    return Commensurability{std::move(mult), delta};
}

} // namespace diracgraph
