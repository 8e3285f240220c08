#pragma once

#include "diracgraph/boundary.hpp"
#include "diracgraph/charpoly.hpp"

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace diracgraph {

struct SpectrumTolerances {
    double root_residual = 1e-10; // |P(lambda)| / scale
    double rank_rtol = 1e-8;      // SVD cutoff for kernel dimensions
    double dedupe = 1e-7;         // eigenvalues closer than this are merged
};

struct SpectrumOptions {
    SpectrumTolerances tol;
    unsigned threads = 0; // 0: hardware concurrency
};

enum class SolverKind { ExactCommensurable, RealScan, ComplexContour, ClosedForm };

std::string_view to_string(SolverKind kind);

// Search region. With infinite imaginary bounds it is a vertical strip.
struct Window {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = -std::numeric_limits<double>::infinity();
    double im_max = std::numeric_limits<double>::infinity();

    static Window real(double a, double b);
    static Window rect(double re_a, double re_b, double im_a, double im_b);

    bool is_real_strip() const;
    bool is_bounded() const;
    bool contains(Complex z, double slack = 0.0) const;
};

struct SpectralPoint {
    Complex lambda;
    int multiplicity = 0;
    double residual = 0.0;
    // Amplitudes w of eigenfunctions w_e exp(-i lambda x), one column per mode.
    CMatrix modes;
};

struct SpectrumReport {
    SolverKind solver = SolverKind::ExactCommensurable;
    Window window;
    std::vector<SpectralPoint> eigenvalues;
    std::vector<std::string> warnings;
    std::optional<int> winding_number;
};

// Sorts by (Re, Im) and merges points closer than radius (multiplicity of the first kept).
void sort_and_dedupe(std::vector<SpectralPoint>& points, double radius);

struct Eigenfunction {
    Complex lambda;
    CVector amplitudes;
};

struct MultiplicityResult {
    int multiplicity = 0;
    CMatrix kernel; // orthonormal basis of ker(diag(exp(i lambda l)) - A)
};

// End values u of a kernel vector map to start amplitudes w = diag(exp(i lambda l)) u.
CMatrix amplitudes_from_kernel(std::span<const double> lengths, Complex lambda, const CMatrix& kernel);

MultiplicityResult multiplicity(const GEndomorphism& a, std::span<const double> lengths, Complex lambda,
                                double rank_rtol = 1e-8);

SpectrumReport spectrum_exact_commensurable(const GEndomorphism& a, std::span<const long> multipliers,
                                            double delta, const Window& window,
                                            const SpectrumOptions& options = {});

SpectrumReport spectrum_numeric(const GEndomorphism& a, const Window& window, const SpectrumOptions& options = {});

SpectrumReport spectrum_complex(const GEndomorphism& a, const Window& rect, const SpectrumOptions& options = {});

// Exact solver for commensurable lengths, else the real scan for unitary A on a
// strip, else the contour solver (which needs a bounded rectangle).
SpectrumReport solve_spectrum(const GEndomorphism& a, const Window& window, const SpectrumOptions& options = {});

// Distance of the eigenfunction's trace from B relative to |w|.
double eigenfunction_residual(const BoundarySubspace& b, const Eigenfunction& f);

struct EigenconditionResult {
    Eigen::Index intersection_dim = 0;
    // dim B != |E|: every lambda is expected to be an eigenvalue (or none is).
    bool whole_plane_expected = false;
};

EigenconditionResult general_eigencondition(const BoundarySubspace& b, Complex lambda, double rank_rtol = 1e-8);

} // namespace diracgraph
