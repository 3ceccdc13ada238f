#pragma once

#include <functional>
#include <optional>
#include <string>

#include "isofactor/grid.hpp"

namespace isofactor {

// Identifies a potential in the dimensionless convention.
struct PotentialSpec {
    enum class Kind { oscillator, oscillator_shifted, hydrogen_radial, tabulated };

    Kind kind = Kind::oscillator;
    int l = 0; // azimuthal quantum number, hydrogen_radial only
    std::optional<GridFunction> table;
    std::string label;

    static PotentialSpec oscillator();
    static PotentialSpec oscillator_shifted(); // x^2 + 2
    static PotentialSpec hydrogen(int l);      // -2/r + l(l+1)/r^2
    static PotentialSpec tabulated(GridFunction f, std::string label = "tabulated");

    double evaluate(double x) const; // not available for tabulated
    GridFunction potential_on(const Grid& g) const;
};

// A superpotential: closed form (value / derivative / antiderivative
// callables) and/or samples with sampled derivative. epsilon is the
// factorization energy.
struct BetaFunction {
    double epsilon = 0.0;

    std::function<double(double)> value_fn;      // may be empty
    std::function<double(double)> deriv_fn;      // may be empty
    std::function<double(double)> antideriv_fn;  // may be empty

    std::optional<GridFunction> samples;
    std::optional<GridFunction> deriv_samples;

    bool analytic_derivative() const { return static_cast<bool>(deriv_fn) || deriv_samples.has_value(); }

    // Samples on g; closed form preferred, stored samples require g to match.
    GridFunction values_on(const Grid& g) const;
    // beta' on g: analytic when available, numeric differentiation otherwise.
    GridFunction derivative_on(const Grid& g) const;
    // int beta, anchored at 0 when 0 is inside the grid, else at x_min.
    GridFunction antiderivative_on(const Grid& g) const;
};

// Product ordering of the factorization; carries the Riccati sign convention.
enum class Ordering {
    dagger_first, // H = A†A + eps, -beta' + beta^2 = V - eps
    plain_first,  // H = AA† + eps, +beta' + beta^2 = V - eps
};

struct FactorizationScheme {
    BetaFunction beta;
    Ordering ordering = Ordering::dagger_first;
};

enum class RiccatiSign { minus, plus }; // -beta' (dagger_first) vs +beta' (plain_first)

inline RiccatiSign sign_of(Ordering o) {
    return o == Ordering::dagger_first ? RiccatiSign::minus : RiccatiSign::plus;
}

// Particular superpotentials: oscillator (x, eps 1), hydrogen (l/r - 1/l,
// eps -1/l^2), shifted oscillator (x, eps 1, plain_first convention).
BetaFunction particular_beta(const PotentialSpec& spec);

enum class GeneralScheme { eq_lambda, eq_gamma };
// eq_lambda: beta = beta_p - d/dx ln{ lambda - int e^{+2 int beta_p} }
// eq_gamma : beta = alpha  + d/dx ln{ gamma  + int e^{-2 int beta_p} }

struct GeneralBetaResult {
    BetaFunction beta;          // sampled, with analytically evaluated derivative samples
    GridFunction denominator;   // lambda - W   (resp. gamma + W)
    GridFunction kernel;        // e^{±2 int beta_p} on the grid
    GridFunction kernel_half;   // e^{± int beta_p}; missing state = kernel_half / denominator
};

// One-parameter general Riccati solution by quadrature. anchor_offset is
// added to the cumulative kernel integral (used to re-anchor radial
// quadratures at r = 0). Throws SingularError when the denominator changes
// sign on the grid.
GeneralBetaResult general_beta(const BetaFunction& beta_p, double constant, const Grid& grid,
                               GeneralScheme scheme, double anchor_offset = 0.0);

// Pointwise  s*beta' + beta^2 - (V - eps),  s = -1 (minus) or +1 (plus).
GridFunction riccati_residual(const BetaFunction& beta, const PotentialSpec& spec,
                              const Grid& grid, RiccatiSign sign);
GridFunction riccati_residual(const BetaFunction& beta, const GridFunction& V,
                              double epsilon, RiccatiSign sign);

// Log-derivative correspondence beta = -u'/u with a linear solution u.
BetaFunction beta_from_u(const GridFunction& u, double epsilon);
// exp(-int beta), max-normalized; inverse of beta_from_u up to scale.
GridFunction u_from_beta(const BetaFunction& beta, const Grid& grid);

} // namespace isofactor
