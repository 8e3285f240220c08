#include "diracgraph/spectrum.hpp"

#include "diracgraph/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

namespace diracgraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI(0.0, 1.0);

unsigned resolve_threads(unsigned requested)
{
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(i) for i in [0, n) on up to `threads` workers; each index is visited once.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn)
{
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
}

MultiplicityResult kernel_of(const CMatrix& a, const CVector& diag, double rank_rtol)
{
    const auto n = a.rows();
    MultiplicityResult out;
    if (n == 0) return out;
    CMatrix m = -a;
    m.diagonal() += diag;
    const double reference = std::max({1.0, diag.cwiseAbs().maxCoeff(), a.norm()});
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > rank_rtol * reference) ++rank;
    out.multiplicity = static_cast<int>(n - rank);
    out.kernel = svd.matrixV().rightCols(n - rank);
    return out;
}

CVector phase_diagonal(std::span<const double> lengths, Complex lambda)
{
    CVector d(static_cast<Eigen::Index>(lengths.size()));
    for (std::size_t e = 0; e < lengths.size(); ++e) d(e) = std::exp(kI * lambda * lengths[e]);
    return d;
}

bool only_full_monomial(const MultiPoly& p)
{
    const Mask all = p.variables() == 64 ? ~Mask{0} : (Mask{1} << p.variables()) - 1;
    return p.size() == 1 && p.terms().begin()->first == all;
}

const char* kSingularWarning = "singular A: P ≡ Π x_e has no zeros";

SpectralPoint make_point(const GEndomorphism& a, const CharFunction& cf, Complex lambda, double rank_rtol)
{
    SpectralPoint p;
    p.lambda = lambda;
    p.residual = std::abs(cf(lambda)) / std::max(cf.scale(), 1e-300);
    const auto k = multiplicity(a, cf.lengths(), lambda, rank_rtol);
    p.multiplicity = k.multiplicity;
    p.modes = amplitudes_from_kernel(cf.lengths(), lambda, k.kernel);
    return p;
}

std::string describe(Complex z)
{
    std::ostringstream s;
    s.precision(12);
    s << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return s.str();
}

// Accepts p into the report when it is a genuine zero, otherwise records why not.
void admit(SpectrumReport& report, SpectralPoint p, const SpectrumTolerances& tol)
{
    if (p.residual > tol.root_residual) {
        report.warnings.push_back("dropped candidate " + describe(p.lambda) + ": residual " +
                                  std::to_string(p.residual) + " above tolerance");
        return;
    }
    if (p.multiplicity < 1) {
        report.warnings.push_back("dropped candidate " + describe(p.lambda) + ": kernel is trivial at rank cutoff");
        return;
    }
    report.eigenvalues.push_back(std::move(p));
}

} // namespace

std::string_view to_string(SolverKind kind)
{
    switch (kind) {
    case SolverKind::ExactCommensurable: return "exact-commensurable";
    case SolverKind::RealScan: return "real-scan";
    case SolverKind::ComplexContour: return "complex-contour";
    case SolverKind::ClosedForm: return "closed-form";
    }
    return "unknown";
}

Window Window::real(double a, double b)
{
    Window w;
    w.re_min = std::min(a, b);
    w.re_max = std::max(a, b);
    return w;
}

Window Window::rect(double re_a, double re_b, double im_a, double im_b)
{
    Window w = real(re_a, re_b);
    w.im_min = std::min(im_a, im_b);
    w.im_max = std::max(im_a, im_b);
    return w;
}

bool Window::is_real_strip() const
{
    return std::isinf(im_min) && std::isinf(im_max);
}

bool Window::is_bounded() const
{
    return std::isfinite(re_min) && std::isfinite(re_max) && std::isfinite(im_min) && std::isfinite(im_max);
}

bool Window::contains(Complex z, double slack) const
{
    return z.real() >= re_min - slack && z.real() <= re_max + slack && z.imag() >= im_min - slack &&
           z.imag() <= im_max + slack;
}

void sort_and_dedupe(std::vector<SpectralPoint>& points, double radius)
{
    std::sort(points.begin(), points.end(), [](const SpectralPoint& x, const SpectralPoint& y) {
        if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
        return x.lambda.imag() < y.lambda.imag();
    });
    std::vector<SpectralPoint> kept;
    for (auto& p : points) {
        const bool dup = std::any_of(kept.begin(), kept.end(),
                                     [&](const SpectralPoint& k) { return std::abs(k.lambda - p.lambda) < radius; });
        if (!dup) kept.push_back(std::move(p));
    }
    points = std::move(kept);
}

CMatrix amplitudes_from_kernel(std::span<const double> lengths, Complex lambda, const CMatrix& kernel)
{
    return phase_diagonal(lengths, lambda).asDiagonal() * kernel;
}

MultiplicityResult multiplicity(const GEndomorphism& a, std::span<const double> lengths, Complex lambda,
                                double rank_rtol)
{
    if (lengths.size() != static_cast<std::size_t>(a.size())) {
        throw PreconditionError("multiplicity: one length per edge");
    }
    return kernel_of(a.matrix(), phase_diagonal(lengths, lambda), rank_rtol);
}

// ---------------------------------------------------------------------------
// commensurable lengths

SpectrumReport spectrum_exact_commensurable(const GEndomorphism& a, std::span<const long> multipliers,
                                            double delta, const Window& window, const SpectrumOptions& options)
{
    const auto& g = *a.graph();
    const auto n = g.edge_count();
    if (multipliers.size() != n) throw PreconditionError("one multiplier per edge");
    if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
    if (!std::isfinite(window.re_min) || !std::isfinite(window.re_max)) {
        throw PreconditionError("the real part of the window must be bounded");
    }

    SpectrumReport report;
    report.solver = SolverKind::ExactCommensurable;
    report.window = window;

    std::vector<double> lengths(n);
    for (std::size_t e = 0; e < n; ++e) {
        if (multipliers[e] <= 0) throw PreconditionError("multipliers must be positive");
        lengths[e] = static_cast<double>(multipliers[e]) * delta;
        if (std::abs(lengths[e] - g.length(e)) > 1e-9 * g.length(e)) {
            report.warnings.push_back("edge " + g.edge(e).id + " has length " + std::to_string(g.length(e)) +
                                      ", not multiplier * delta; using multiplier * delta");
        }
    }

    const auto poly = char_poly(a);
    const CharFunction cf(poly, lengths);
    const auto q = specialize_univariate(poly, multipliers);
    if (q.empty()) throw DegeneratePolynomial("characteristic polynomial vanishes identically");

    const double cut = kCoefficientCleanup * std::max(1.0, cf.scale());
    std::size_t k0 = 0;
    while (k0 + 1 < q.size() && std::abs(q[k0]) <= cut) ++k0;
    if (k0 + 1 == q.size()) {
        report.warnings.push_back(only_full_monomial(poly) ? kSingularWarning
                                                           : "characteristic function has no zeros");
        return report;
    }

    // Companion-type linearization on the edge subdivision: edge e becomes a chain of
    // m_e unit segments and A feeds the last segment of e into the first of f.
    std::vector<Eigen::Index> first(n), last(n);
    Eigen::Index size = 0;
    for (std::size_t e = 0; e < n; ++e) {
        first[e] = size;
        size += multipliers[e];
        last[e] = size - 1;
    }
    CMatrix lin = CMatrix::Zero(size, size);
    for (std::size_t e = 0; e < n; ++e) {
        for (Eigen::Index s = first[e]; s < last[e]; ++s) lin(s + 1, s) = 1.0;
        for (std::size_t f = 0; f < n; ++f) lin(first[f], last[e]) = a.matrix()(f, e);
    }
    Eigen::ComplexEigenSolver<CMatrix> es(lin, false);
    std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + size);
    std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
    roots.erase(roots.begin(), roots.begin() + static_cast<std::ptrdiff_t>(k0));

    // Q(z) / z^k0 and its derivative, for polishing.
    auto deflated = [&](Complex z) {
        Complex p{}, dp{};
        for (std::size_t k = q.size(); k-- > k0;) {
            dp = dp * z + p;
            p = p * z + q[k];
        }
        return std::pair{p, dp};
    };

    // Multiple roots come out of the eigensolver as small clusters.
    std::vector<std::vector<Complex>> clusters;
    for (const auto z : roots) {
        bool placed = false;
        for (auto& c : clusters) {
            if (std::abs(c.front() - z) <= 1e-4 * std::max(1.0, std::abs(z))) {
                c.push_back(z);
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({z});
    }

    for (const auto& c : clusters) {
        Complex z{};
        for (const auto w : c) z += w;
        z /= static_cast<double>(c.size());
        const double k = static_cast<double>(c.size());
        for (int it = 0; it < 30; ++it) {
            const auto [p, dp] = deflated(z);
            if (dp == Complex{}) break;
            const Complex step = k * p / dp;
            const Complex next = z - step;
            if (std::abs(deflated(next).first) > std::abs(p)) break;
            z = next;
            if (std::abs(step) <= 1e-16 * std::abs(z)) break;
        }
        if (std::abs(z) == 0.0) continue;

        const double theta = std::arg(z);
        const double rho = std::log(std::abs(z));
        const double im = -rho / delta + 0.0; // no negative zero
        if (im < window.im_min - 1e-12 || im > window.im_max + 1e-12) continue;

        const auto kernel = kernel_of(a.matrix(), phase_diagonal(lengths, (theta - kI * rho) / delta),
                                      options.tol.rank_rtol);
        const double slack = 1e-12 * std::max(1.0, std::max(std::abs(window.re_min), std::abs(window.re_max)));
        const auto k_lo = static_cast<long>(std::ceil((window.re_min * delta - theta) / kTwoPi - 1e-12));
        const auto k_hi = static_cast<long>(std::floor((window.re_max * delta - theta) / kTwoPi + 1e-12));
        for (long kk = k_lo; kk <= k_hi; ++kk) {
            const Complex lambda((theta + kTwoPi * static_cast<double>(kk)) / delta, im);
            if (!window.contains(lambda, slack)) continue;
            SpectralPoint p;
            p.lambda = lambda;
            p.residual = std::abs(cf(lambda)) / cf.scale();
            p.multiplicity = kernel.multiplicity;
            p.modes = amplitudes_from_kernel(lengths, lambda, kernel.kernel);
            admit(report, std::move(p), options.tol);
        }
    }
    sort_and_dedupe(report.eigenvalues, options.tol.dedupe);
    return report;
}

// ---------------------------------------------------------------------------
// real scan

namespace {

// Phase of the eigenvalue of diag(exp(-i lambda l)) A closest to 1. For unitary A it
// decreases through 0 exactly at eigenvalues, whatever their multiplicity.
double eigenphase(const CMatrix& a, std::span<const double> lengths, double lambda)
{
    const CVector d = phase_diagonal(lengths, Complex(-lambda, 0.0));
    const CMatrix u = d.asDiagonal() * a;
    Eigen::ComplexEigenSolver<CMatrix> es(u, false);
    double best = std::numbers::pi;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double phi = std::arg(es.eigenvalues()(i));
        if (std::abs(phi) < std::abs(best)) best = phi;
    }
    return best;
}

std::optional<double> bisect_eigenphase(const CMatrix& a, std::span<const double> lengths, double lo, double hi)
{
    double flo = eigenphase(a, lengths, lo);
    double fhi = eigenphase(a, lengths, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0) || std::abs(flo) > 1.5 || std::abs(fhi) > 1.5) return std::nullopt;
    for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eigenphase(a, lengths, mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::optional<Complex> newton(const CharFunction& cf, Complex z, int max_iter = 60, double multiplicity = 1.0)
{
    for (int it = 0; it < max_iter; ++it) {
        const auto j = cf.jet(z);
        if (j.d1 == Complex{}) return std::nullopt;
        const Complex step = multiplicity * j.value / j.d1;
        z -= step;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) return z;
    }
    return z;
}

} // namespace

SpectrumReport spectrum_numeric(const GEndomorphism& a, const Window& window, const SpectrumOptions& options)
{
    if (!std::isfinite(window.re_min) || !std::isfinite(window.re_max) || !(window.re_max > window.re_min)) {
        throw PreconditionError("the scan needs a nonempty bounded real interval");
    }
    SpectrumReport report;
    report.solver = SolverKind::RealScan;
    report.window = window;

    const auto& g = *a.graph();
    const auto cf = char_function(a);
    const double total = g.total_length();
    const bool unitary = is_unitary(a, 1e-8);
    if (!unitary) {
        report.warnings.push_back("A is not unitary: eigenvalues may be complex and the real scan can miss "
                                  "them; use the contour solver");
    }
    if (only_full_monomial(cf.poly())) {
        report.warnings.push_back(kSingularWarning);
        return report;
    }

    const double width = window.re_max - window.re_min;
    const double expected = width * total / kTwoPi;
    if (expected > 1e5) {
        std::ostringstream msg;
        msg << "window holds about " << static_cast<long>(expected)
            << " eigenvalues (limit 1e5); narrow the window or use commensurable lengths";
        throw WindowTooLarge(msg.str());
    }

    const auto steps = static_cast<std::size_t>(std::ceil(width / std::min(0.01, std::numbers::pi / (4.0 * total))));
    const double h = width / static_cast<double>(steps);
    const auto threads = resolve_threads(options.threads);

    std::vector<double> values(steps + 1);
    parallel_for(steps + 1, threads, [&](std::size_t i) {
        values[i] = std::abs(cf(Complex(window.re_min + h * static_cast<double>(i), 0.0)));
    });

    // |P'| <= L_G * scale on the real line, so a zero within h/2 of a grid point
    // keeps |P| below this bound there.
    const double promote = cf.scale() * total * h;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i <= steps; ++i) {
        if (values[i] > promote) continue;
        const bool left = i == 0 || values[i] <= values[i - 1];
        const bool right = i == steps || values[i] <= values[i + 1];
        if (left && right) candidates.push_back(i);
    }

    std::vector<std::optional<SpectralPoint>> found(candidates.size());
    parallel_for(candidates.size(), threads, [&](std::size_t c) {
        const double x0 = window.re_min + h * static_cast<double>(candidates[c]);
        std::optional<Complex> root;
        if (unitary) {
            if (auto x = bisect_eigenphase(a.matrix(), cf.lengths(), x0 - h, x0 + h)) root = Complex(*x, 0.0);
        }
        if (!root) root = newton(cf, Complex(x0, 0.0));
        if (!root) return;
        Complex z = *root;
        if (unitary && std::abs(z.imag()) < 1e-8) z = Complex(z.real(), 0.0);
        if (std::abs(z.real() - x0) > 2.0 * h || !window.contains(z, 1e-12)) return;
        found[c] = make_point(a, cf, z, options.tol.rank_rtol);
    });

    for (auto& p : found) {
        if (p) admit(report, std::move(*p), options.tol);
    }
    sort_and_dedupe(report.eigenvalues, options.tol.dedupe);
    return report;
}

// ---------------------------------------------------------------------------
// argument principle on rectangles

namespace {

struct ZeroOnContour {};

struct Rect {
    double x0, x1, y0, y1;
    Complex center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
    double diameter() const { return std::hypot(x1 - x0, y1 - y0); }
    bool contains(Complex z, double slack) const
    {
        return z.real() >= x0 - slack && z.real() <= x1 + slack && z.imag() >= y0 - slack && z.imag() <= y1 + slack;
    }
};

class ArgumentCounter {
public:
    ArgumentCounter(const CharFunction& cf, double total_length)
        : cf_(cf), rate_(std::max(1.0, total_length)), floor_(1e-13 * std::max(cf.scale(), 1e-300))
    {
    }

    // Winding number of P around the rectangle. Throws ZeroOnContour when the boundary
    // passes (numerically) through a zero.
    int count(const Rect& r) const
    {
        const Complex corners[4] = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
        double turn = 0.0;
        for (int s = 0; s < 4; ++s) turn += side(corners[s], corners[(s + 1) % 4]);
        const double n = turn / kTwoPi;
        const double rounded = std::round(n);
        if (std::abs(n - rounded) > 0.05) throw ZeroOnContour{};
        return static_cast<int>(rounded);
    }

private:
    Complex eval(Complex z) const
    {
        const Complex v = cf_(z);
        if (std::abs(v) <= floor_) throw ZeroOnContour{};
        return v;
    }

    // Change of arg P along [a, b], refined until each piece turns by a small angle and
    // the midpoint agrees with the chord.
    double side(Complex a, Complex b) const
    {
        const auto pieces = static_cast<int>(std::ceil(4.0 * std::abs(b - a) * rate_)) + 8;
        double turn = 0.0;
        Complex za = a;
        Complex pa = eval(a);
        for (int k = 1; k <= pieces; ++k) {
            const Complex zb = a + (b - a) * (static_cast<double>(k) / pieces);
            const Complex pb = eval(zb);
            turn += piece(za, pa, zb, pb, 0);
            za = zb;
            pa = pb;
        }
        return turn;
    }

    double piece(Complex a, Complex pa, Complex b, Complex pb, int depth) const
    {
        const double whole = std::arg(pb / pa);
        const Complex m = 0.5 * (a + b);
        const Complex pm = eval(m);
        const double left = std::arg(pm / pa);
        const double right = std::arg(pb / pm);
        if (std::abs(whole) < 0.5 && std::abs(left + right - whole) < 1e-9) return whole;
        if (depth > 48) throw ZeroOnContour{};
        return piece(a, pa, m, pm, depth + 1) + piece(m, pm, b, pb, depth + 1);
    }

    const CharFunction& cf_;
    double rate_;
    double floor_;
};

struct ContourState {
    const GEndomorphism& a;
    const CharFunction& cf;
    const ArgumentCounter& counter;
    const SpectrumOptions& options;
    SpectrumReport& report;
    int leaf_total = 0;
};

// Splits r at an off-centre point; returns the four cells with counts, or nullopt if
// every tried split line meets a zero.
std::optional<std::vector<std::pair<Rect, int>>> quadrisect(const ArgumentCounter& counter, const Rect& r)
{
    static constexpr double offsets[] = {0.5123, 0.4871, 0.5377, 0.4613, 0.5591};
    for (const double f : offsets) {
        const double xm = r.x0 + f * (r.x1 - r.x0);
        const double ym = r.y0 + (1.0 - f + 0.0031) * (r.y1 - r.y0);
        const Rect cells[4] = {{r.x0, xm, r.y0, ym}, {xm, r.x1, r.y0, ym}, {r.x0, xm, ym, r.y1}, {xm, r.x1, ym, r.y1}};
        try {
            std::vector<std::pair<Rect, int>> out;
            for (const auto& c : cells) out.emplace_back(c, counter.count(c));
            return out;
        } catch (const ZeroOnContour&) {
        }
    }
    return std::nullopt;
}

void record(ContourState& st, Complex z, int count)
{
    st.leaf_total += count;
    st.report.eigenvalues.push_back(make_point(st.a, st.cf, z, st.options.tol.rank_rtol));
}

void solve_cell(ContourState& st, const Rect& r, int count, int depth)
{
    if (count <= 0) return;
    const double size = r.diameter();
    const double tiny = 1e-10 * std::max(1.0, std::abs(r.center()));

    auto z = newton(st.cf, r.center(), 80, static_cast<double>(count));
    if (z && r.contains(*z, tiny)) {
        if (count == 1) {
            record(st, *z, 1);
            return;
        }
        // A cluster: confirm that a small box around the limit holds all zeros of the cell.
        const double rad = std::max(1e-7 * std::max(1.0, std::abs(*z)), 10.0 * tiny);
        try {
            if (st.counter.count({z->real() - rad, z->real() + rad, z->imag() - rad, z->imag() + rad}) == count) {
                record(st, *z, count);
                return;
            }
        } catch (const ZeroOnContour&) {
        }
    }
    if (size <= tiny || depth > 60) {
        st.report.warnings.push_back("unresolved cell near " + describe(r.center()) + " holding " +
                                     std::to_string(count) + " zeros");
        if (z) record(st, *z, count);
        return;
    }
    const auto cells = quadrisect(st.counter, r);
    if (!cells) {
        st.report.warnings.push_back("could not split cell near " + describe(r.center()));
        return;
    }
    int sum = 0;
    for (const auto& [c, n] : *cells) sum += n;
    if (sum != count) {
        st.report.warnings.push_back("cell counts disagree near " + describe(r.center()) + ": " +
                                     std::to_string(sum) + " vs " + std::to_string(count));
    }
    for (const auto& [c, n] : *cells) solve_cell(st, c, n, depth + 1);
}

} // namespace

SpectrumReport spectrum_complex(const GEndomorphism& a, const Window& rect, const SpectrumOptions& options)
{
    if (!rect.is_bounded() || !(rect.re_max > rect.re_min) || !(rect.im_max > rect.im_min)) {
        throw PreconditionError("the contour solver needs a bounded rectangle with nonempty interior");
    }
    SpectrumReport report;
    report.solver = SolverKind::ComplexContour;
    report.window = rect;

    const auto cf = char_function(a);
    if (only_full_monomial(cf.poly())) {
        report.warnings.push_back(kSingularWarning);
        report.winding_number = 0;
        return report;
    }
    const ArgumentCounter counter(cf, a.graph()->total_length());

    Rect r{rect.re_min, rect.re_max, rect.im_min, rect.im_max};
    std::optional<int> top;
    const double extent = std::max({1.0, std::abs(r.x0), std::abs(r.x1), std::abs(r.y0), std::abs(r.y1)});
    for (int retry = 0; retry <= 5 && !top; ++retry) {
        try {
            top = counter.count(r);
        } catch (const ZeroOnContour&) {
            if (retry == 5) break;
            const double grow = options.tol.dedupe * extent;
            r = {r.x0 - grow, r.x1 + grow, r.y0 - grow, r.y1 + grow};
            report.warnings.push_back("zero on the contour; rectangle enlarged by " + std::to_string(grow));
        }
    }
    if (!top) throw PreconditionError("zero on the contour persists after 5 perturbations");
    report.winding_number = *top;

    ContourState st{a, cf, counter, options, report};
    solve_cell(st, r, *top, 0);
    if (st.leaf_total != *top) {
        report.warnings.push_back("located " + std::to_string(st.leaf_total) + " zeros, winding number is " +
                                  std::to_string(*top));
    }

    std::vector<SpectralPoint> raw = std::move(report.eigenvalues);
    report.eigenvalues.clear();
    for (auto& p : raw) admit(report, std::move(p), options.tol);
    sort_and_dedupe(report.eigenvalues, options.tol.dedupe);
    return report;
}

SpectrumReport solve_spectrum(const GEndomorphism& a, const Window& window, const SpectrumOptions& options)
{
    const auto lengths = a.graph()->lengths();
    if (auto comm = detect_commensurable(lengths)) {
        return spectrum_exact_commensurable(a, comm->multipliers, comm->delta, window, options);
    }
    if (window.is_bounded() && !is_unitary(a, 1e-8)) return spectrum_complex(a, window, options);
    return spectrum_numeric(a, window, options);
}

double eigenfunction_residual(const BoundarySubspace& b, const Eigenfunction& f)
{
    const auto& g = *b.graph();
    if (b.r() != 1) throw PreconditionError("eigenfunction residual is implemented for r = 1");
    if (f.amplitudes.size() != static_cast<Eigen::Index>(g.edge_count())) {
        throw PreconditionError("one amplitude per edge");
    }
    const double norm = f.amplitudes.norm();
    if (norm == 0.0) throw PreconditionError("zero amplitude vector");
    CVector trace(trace_dimension(g));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        trace(minus_index(e)) = f.amplitudes(e);
        trace(plus_index(e)) = f.amplitudes(e) * std::exp(-kI * f.lambda * g.length(e));
    }
    return b.distance(trace) / norm;
}

EigenconditionResult general_eigencondition(const BoundarySubspace& b, Complex lambda, double rank_rtol)
{
    const auto& g = *b.graph();
    if (b.r() != 1) throw PreconditionError("eigencondition is implemented for r = 1");
    const auto m = static_cast<Eigen::Index>(g.edge_count());
    CMatrix joint = CMatrix::Zero(2 * m, m + b.dim());
    for (Eigen::Index e = 0; e < m; ++e) {
        const Complex end = std::exp(-kI * lambda * g.length(e));
        const double norm = std::sqrt(1.0 + std::norm(end));
        joint(minus_index(e), e) = 1.0 / norm;
        joint(plus_index(e), e) = end / norm;
    }
    joint.rightCols(b.dim()) = b.orthonormal_basis();
    EigenconditionResult out;
    out.intersection_dim = m + b.dim() - numeric_rank(joint, rank_rtol);
    out.whole_plane_expected = b.dim() != m;
    return out;
}

} // namespace diracgraph
