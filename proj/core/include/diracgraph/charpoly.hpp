#pragma once

#include "diracgraph/boundary.hpp"
#include "diracgraph/graph.hpp"
#include "diracgraph/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace diracgraph {

// Monomial of a multilinear polynomial: bit e set means x_e occurs.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxVariables = 64;
inline constexpr double kCoefficientCleanup = 1e-13;

/**
 * Multilinear polynomial in edge variables x_0..x_{n-1} with complex coefficients.
 * Every variable has degree at most one, so a monomial is a bitmask.
 */
class MultiPoly {
public:
    explicit MultiPoly(std::size_t variables = 0);

    std::size_t variables() const { return variables_; }
    const std::map<Mask, Complex>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Complex coefficient(Mask m) const;
    void add_term(Mask m, Complex c);

    // Drops coefficients below rtol * max(1, max |c|).
    void prune(double rtol = kCoefficientCleanup);

    Complex evaluate(std::span<const Complex> x) const;

    // Sum of coefficient moduli; the natural size of P on the unit torus.
    double scale() const;

    // Same polynomial over `variables` variables, variable i renamed to positions[i].
    MultiPoly embed(std::span<const std::size_t> positions, std::size_t variables) const;

    // Substitutes x_var = value and drops the variable from the monomials.
    MultiPoly substitute(std::size_t var, Complex value) const;

    // Product of polynomials in disjoint sets of variables; throws std::domain_error
    // when a product of monomials would square a variable.
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);

    double max_abs_difference(const MultiPoly& other) const;

private:
    std::size_t variables_ = 0;
    std::map<Mask, Complex> terms_;
};

// det(diag(x) - A), expanded exactly along rows with memoized column subsets.
MultiPoly char_poly(const CMatrix& a);
MultiPoly char_poly(const GEndomorphism& a);

struct ReducedSystem {
    GraphPtr graph;
    GEndomorphism endomorphism;
    std::size_t merged_edge = 0; // index of the merged edge in the reduced graph
};

// Removes a vertex of in- and out-degree one. The incoming edge e1 and the outgoing
// edge e2 become one edge "e1~e2" of length l1 + l2 at e1's position.
ReducedSystem reduce_vertex(const GEndomorphism& a, std::string_view vertex);

struct ReducibleBlock {
    std::vector<std::size_t> edges; // sorted indices into the original graph
    GraphPtr graph;                 // subgraph spanned by those edges
    GEndomorphism endomorphism;     // diagonal block of A
};

// Strongly connected components of the support digraph of A, ordered by smallest edge.
std::vector<ReducibleBlock> split_reducible(const GEndomorphism& a);

/**
 * P_{A,l}(lambda) = P_A(exp(i lambda l)). Each monomial is evaluated as
 * exp(i lambda L) with L the summed length of its edges.
 */
class CharFunction {
public:
    CharFunction(MultiPoly poly, std::vector<double> lengths);

    const MultiPoly& poly() const { return poly_; }
    const std::vector<double>& lengths() const { return lengths_; }
    double scale() const { return scale_; }

    Complex operator()(Complex lambda) const { return value(lambda); }
    Complex value(Complex lambda) const;
    Complex derivative(Complex lambda) const;

    struct Jet {
        Complex value, d1, d2;
    };
    Jet jet(Complex lambda) const;

private:
    struct Term {
        double length;
        Complex coeff;
    };
    MultiPoly poly_;
    std::vector<double> lengths_;
    std::vector<Term> terms_;
    double scale_ = 0.0;
};

CharFunction char_function(const GEndomorphism& a);

// x_e <- z^{m_e}; coefficients lowest degree first, trailing zeros trimmed.
std::vector<Complex> specialize_univariate(const MultiPoly& p, std::span<const long> multipliers);

struct Commensurability {
    std::vector<long> multipliers;
    double delta = 0.0; // l_e = multipliers[e] * delta
};

struct CommensurabilityOptions {
    long max_denominator = 1'000'000;
    double rtol = 1e-12;
    // Above this total degree the univariate route is not worth it.
    long max_degree = 4096;
};

std::optional<Commensurability> detect_commensurable(std::span<const double> lengths,
                                                     const CommensurabilityOptions& options = {});

} // namespace diracgraph
