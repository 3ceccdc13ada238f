#include "isofactor/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace isofactor {

PotentialSpec PotentialSpec::oscillator() {
    PotentialSpec s;
    s.kind = Kind::oscillator;
    s.label = "oscillator";
    return s;
}

PotentialSpec PotentialSpec::oscillator_shifted() {
    PotentialSpec s;
    s.kind = Kind::oscillator_shifted;
    s.label = "oscillator_shifted";
    return s;
}

PotentialSpec PotentialSpec::hydrogen(int l) {
    if (l < 1)
        throw DomainError("PotentialSpec::hydrogen: requires l >= 1");
    PotentialSpec s;
    s.kind = Kind::hydrogen_radial;
    s.l = l;
    s.label = "hydrogen_l" + std::to_string(l);
    return s;
}

PotentialSpec PotentialSpec::tabulated(GridFunction f, std::string label) {
    PotentialSpec s;
    s.kind = Kind::tabulated;
    s.table = std::move(f);
    s.label = std::move(label);
    return s;
}

double PotentialSpec::evaluate(double x) const {
    switch (kind) {
        case Kind::oscillator: return x * x;
        case Kind::oscillator_shifted: return x * x + 2.0;
        case Kind::hydrogen_radial: return -2.0 / x + static_cast<double>(l) * (l + 1) / (x * x);
        case Kind::tabulated: break;
    }
    throw DomainError("PotentialSpec::evaluate: tabulated potential has no closed form");
}

GridFunction PotentialSpec::potential_on(const Grid& g) const {
    if (kind == Kind::tabulated) {
        if (!table || table->grid() != g)
            throw DomainError("PotentialSpec: tabulated potential on a different grid");
        return *table;
    }
    return GridFunction::sample(g, [this](double x) { return evaluate(x); });
}

GridFunction BetaFunction::values_on(const Grid& g) const {
    if (value_fn)
        return GridFunction::sample(g, value_fn);
    if (samples) {
        if (samples->grid() != g)
            throw DomainError("BetaFunction: sampled on a different grid");
        return *samples;
    }
    throw DomainError("BetaFunction: no closed form and no samples");
}

GridFunction BetaFunction::derivative_on(const Grid& g) const {
    if (deriv_fn)
        return GridFunction::sample(g, deriv_fn);
    if (deriv_samples) {
        if (deriv_samples->grid() != g)
            throw DomainError("BetaFunction: derivative sampled on a different grid");
        return *deriv_samples;
    }
    return derivative(values_on(g));
}

GridFunction BetaFunction::antiderivative_on(const Grid& g) const {
    double anchor = (g.x_min <= 0.0 && g.x_max >= 0.0) ? 0.0 : g.x_min;
    if (antideriv_fn) {
        double at_anchor = antideriv_fn(anchor);
        return GridFunction::sample(g, [this, at_anchor](double x) { return antideriv_fn(x) - at_anchor; });
    }
    return cumulative_integral(values_on(g), anchor);
}

BetaFunction particular_beta(const PotentialSpec& spec) {
    BetaFunction b;
    switch (spec.kind) {
        case PotentialSpec::Kind::oscillator:
        case PotentialSpec::Kind::oscillator_shifted:
            // Same closed form; the shifted potential pairs it with the
            // reversed product ordering.
            b.epsilon = 1.0;
            b.value_fn = [](double x) { return x; };
            b.deriv_fn = [](double) { return 1.0; };
            b.antideriv_fn = [](double x) { return 0.5 * x * x; };
            return b;
        case PotentialSpec::Kind::hydrogen_radial: {
            const double l = spec.l;
            b.epsilon = -1.0 / (l * l);
            b.value_fn = [l](double r) { return l / r - 1.0 / l; };
            b.deriv_fn = [l](double r) { return -l / (r * r); };
            b.antideriv_fn = [l](double r) { return l * std::log(r) - r / l; };
            return b;
        }
        case PotentialSpec::Kind::tabulated:
            break;
    }
    throw DomainError("particular_beta: no catalog entry for tabulated potentials");
}

GeneralBetaResult general_beta(const BetaFunction& beta_p, double constant, const Grid& grid,
                               GeneralScheme scheme, double anchor_offset) {
    const double s = (scheme == GeneralScheme::eq_lambda) ? +1.0 : -1.0;

    GridFunction bp = beta_p.values_on(grid);
    GridFunction bp_prime = beta_p.derivative_on(grid);
    GridFunction B = beta_p.antiderivative_on(grid);

    const int n = grid.n_points;
    std::vector<double> kernel(n), half(n);
    for (int i = 0; i < n; ++i) {
        kernel[i] = std::exp(2.0 * s * B[i]);
        half[i] = std::exp(s * B[i]);
    }
    GridFunction K(grid, kernel);

    double anchor = (grid.x_min <= 0.0 && grid.x_max >= 0.0) ? 0.0 : grid.x_min;
    GridFunction W = cumulative_integral(K, anchor);

    std::vector<double> denom(n), beta_v(n), beta_d(n);
    for (int i = 0; i < n; ++i) {
        double w = W[i] + anchor_offset;
        double D = (scheme == GeneralScheme::eq_lambda) ? constant - w : constant + w;
        denom[i] = D;
    }
    for (int i = 1; i < n; ++i) {
        if (denom[i - 1] == 0.0 || denom[i] == 0.0 || (denom[i - 1] > 0.0) != (denom[i] > 0.0))
            throw SingularError("general_beta: denominator crosses zero near x = " +
                                std::to_string(grid.node(i)) + " (node " + std::to_string(i) + ")");
    }

    // The log derivative is evaluated analytically: with W' = K and
    // D' = -s*K, both schemes give
    //   beta  = beta_p + K/D
    //   beta' = beta_p' + s*(2*beta_p*K*D + K^2)/D^2.
    for (int i = 0; i < n; ++i) {
        double D = denom[i];
        double Kv = K[i];
        beta_v[i] = bp[i] + Kv / D;
        beta_d[i] = bp_prime[i] + s * (2.0 * bp[i] * Kv * D + Kv * Kv) / (D * D);
    }

    GeneralBetaResult res{BetaFunction{}, GridFunction(grid, denom), K, GridFunction(grid, half)};
    res.beta.epsilon = beta_p.epsilon;
    res.beta.samples = GridFunction(grid, beta_v);
    res.beta.deriv_samples = GridFunction(grid, beta_d);
    return res;
}

GridFunction riccati_residual(const BetaFunction& beta, const GridFunction& V,
                              double epsilon, RiccatiSign sign) {
    const Grid& g = V.grid();
    GridFunction b = beta.values_on(g);
    GridFunction bp = beta.derivative_on(g);
    const double s = (sign == RiccatiSign::minus) ? -1.0 : +1.0;
    std::vector<double> r(g.n_points);
    for (int i = 0; i < g.n_points; ++i)
        r[i] = s * bp[i] + b[i] * b[i] - (V[i] - epsilon);
    return GridFunction(g, std::move(r));
}

GridFunction riccati_residual(const BetaFunction& beta, const PotentialSpec& spec,
                              const Grid& grid, RiccatiSign sign) {
    return riccati_residual(beta, spec.potential_on(grid), beta.epsilon, sign);
}

BetaFunction beta_from_u(const GridFunction& u, double epsilon) {
    const int n = u.size();
    for (int i = 0; i < n; ++i) {
        if (u[i] == 0.0)
            throw SingularError("beta_from_u: u vanishes at node " + std::to_string(i));
    }
    GridFunction du = derivative(u);
    std::vector<double> b(n);
    for (int i = 0; i < n; ++i)
        b[i] = -du[i] / u[i];
    BetaFunction beta;
    beta.epsilon = epsilon;
    beta.samples = GridFunction(u.grid(), std::move(b));
    return beta;
}

GridFunction u_from_beta(const BetaFunction& beta, const Grid& grid) {
    GridFunction B = beta.antiderivative_on(grid);
    double mx = -B[0];
    for (int i = 0; i < grid.n_points; ++i) mx = std::max(mx, -B[i]);
    std::vector<double> u(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i)
        u[i] = std::exp(-B[i] - mx); // max-normalized to 1
    return GridFunction(grid, std::move(u));
}

} // namespace isofactor
