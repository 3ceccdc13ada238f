#include "isofactor/darboux.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "isofactor/factorize.hpp"

namespace isofactor {

GridFunction transform_potential(const GridFunction& V, const BetaFunction& beta,
                                 TransformDirection direction) {
    GridFunction bp = beta.derivative_on(V.grid());
    const double s = (direction == TransformDirection::add) ? +2.0 : -2.0;
    std::vector<double> out(V.size());
    for (int i = 0; i < V.size(); ++i)
        out[i] = V[i] + s * bp[i];
    return GridFunction(V.grid(), std::move(out));
}

MissingState missing_state(const BetaFunction& beta, Ordering ordering, const Grid& grid) {
    NullState ns = null_state(beta,
                              ordering == Ordering::dagger_first ? KernelKind::creation_kernel
                                                                 : KernelKind::annihilation_kernel,
                              grid);
    if (ns.square_integrable)
        return MissingState{normalized(ns.psi), true};
    return MissingState{ns.psi, false};
}

namespace {

MissingState missing_from_values(const Grid& grid, std::vector<double> raw) {
    GridFunction psi(grid, std::move(raw));
    double mx = max_abs(psi);
    psi = (1.0 / mx) * psi;
    if (decaying_tails(psi))
        return MissingState{normalized(psi), true};
    return MissingState{psi, false};
}

MissingState missing_from_ratio(const GridFunction& kernel_half, const GridFunction& denom) {
    std::vector<double> raw(kernel_half.size());
    for (int i = 0; i < kernel_half.size(); ++i)
        raw[i] = kernel_half[i] / denom[i];
    return missing_from_values(kernel_half.grid(), std::move(raw));
}

MissingState missing_from_seed(const SeedFunction& seed) {
    // Both conventions give the missing state as 1/u.
    std::vector<double> raw(seed.u.size());
    for (int i = 0; i < seed.u.size(); ++i) {
        if (seed.u[i] == 0.0)
            throw SingularError("missing state: seed vanishes at node " + std::to_string(i));
        raw[i] = 1.0 / seed.u[i];
    }
    return missing_from_values(seed.u.grid(), std::move(raw));
}

} // namespace

TransformResult mielnik_oscillator_family(double gamma, const Grid& grid) {
    require_valid(MielnikOscillator{gamma});
    PotentialSpec source = PotentialSpec::oscillator_shifted();
    BetaFunction alpha = particular_beta(source);
    GeneralBetaResult gb = general_beta(alpha, gamma, grid, GeneralScheme::eq_gamma);

    GridFunction Vs = source.potential_on(grid);
    GridFunction Vt = transform_potential(Vs, gb.beta, TransformDirection::subtract);
    return TransformResult{source,
                           FactorizationScheme{gb.beta, Ordering::plain_first},
                           Vs,
                           Vt,
                           alpha.epsilon,
                           missing_from_ratio(gb.kernel_half, gb.denominator),
                           gamma};
}

TransformResult mielnik_hydrogen_family(int l, double lambda, const Grid& grid) {
    require_valid(MielnikHydrogen{l, lambda});
    if (grid.x_min <= 0.0)
        throw DomainError("mielnik_hydrogen_family: radial grid must have r > 0");
    PotentialSpec source = PotentialSpec::hydrogen(l);
    BetaFunction beta_p = particular_beta(source);

    // The quadrature kernel inside general_beta is anchored at the first grid
    // node; the family parameter follows the r = 0 anchored convention, so
    // rescale lambda accordingly: K_anchored = K0 / C with
    // C = r0^{2l} e^{-2 r0 / l}, and subtract the [0, r0] kernel tail W0.
    const double r0 = grid.x_min;
    const double C = std::pow(r0, 2 * l) * std::exp(-2.0 * r0 / l);
    double W0 = 0.0;
    {
        const int nq = 200;
        const double hq = r0 / nq;
        auto K0 = [&](double y) { return std::pow(y, 2 * l) * std::exp(-2.0 * y / l); };
        for (int i = 0; i <= nq; ++i) {
            double w = (i == 0 || i == nq) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            W0 += w * K0(i * hq);
        }
        W0 *= hq / 3.0;
    }
    GeneralBetaResult gb =
        general_beta(beta_p, (lambda - W0) / C, grid, GeneralScheme::eq_lambda);

    GridFunction Vs = source.potential_on(grid);
    GridFunction Vt = transform_potential(Vs, gb.beta, TransformDirection::add);
    return TransformResult{source,
                           FactorizationScheme{gb.beta, Ordering::dagger_first},
                           Vs,
                           Vt,
                           beta_p.epsilon,
                           missing_from_ratio(gb.kernel_half, gb.denominator),
                           lambda};
}

TransformResult generalized_oscillator_family(double epsilon, double nu, const Grid& grid) {
    require_valid(GeneralizedOscillator{epsilon, nu});
    SeedFunction seed = oscillator_seed(epsilon, nu, grid);
    BetaFunction beta = beta_from_seed(seed, Ordering::plain_first);

    PotentialSpec source = PotentialSpec::oscillator();
    GridFunction Vs = source.potential_on(grid);
    GridFunction Vt = transform_potential(Vs, beta, TransformDirection::subtract);
    return TransformResult{source,
                           FactorizationScheme{beta, Ordering::plain_first},
                           Vs,
                           Vt,
                           epsilon,
                           missing_from_seed(seed),
                           nu};
}

TransformResult generalized_hydrogen_family(int l, int k, double lambda, const Grid& grid) {
    require_valid(GeneralizedHydrogen{l, k, lambda});
    SeedFunction seed = hydrogen_seed(l, k, lambda, grid);
    BetaFunction beta = beta_from_seed(seed, Ordering::dagger_first);

    PotentialSpec source = PotentialSpec::hydrogen(l);
    GridFunction Vs = source.potential_on(grid);
    GridFunction Vt = transform_potential(Vs, beta, TransformDirection::add);
    return TransformResult{source,
                           FactorizationScheme{beta, Ordering::dagger_first},
                           Vs,
                           Vt,
                           seed.epsilon,
                           missing_from_seed(seed),
                           lambda};
}

TransformResult sdih_partner(const PotentialSpec& spec, const Grid& grid) {
    BetaFunction beta_p = particular_beta(spec);
    const bool reversed = spec.kind == PotentialSpec::Kind::oscillator_shifted;
    Ordering ordering = reversed ? Ordering::plain_first : Ordering::dagger_first;

    GridFunction Vs = spec.potential_on(grid);
    GridFunction Vt = transform_potential(
        Vs, beta_p, reversed ? TransformDirection::subtract : TransformDirection::add);
    return TransformResult{spec,
                           FactorizationScheme{beta_p, ordering},
                           Vs,
                           Vt,
                           beta_p.epsilon,
                           missing_state(beta_p, ordering, grid),
                           0.0};
}

GridFunction map_eigenfunction(const FactorizationScheme& scheme, const GridFunction& psi,
                               double E) {
    const double dE = E - scheme.beta.epsilon;
    if (std::fabs(dE) < 1e-10)
        throw DomainError("map_eigenfunction: E equals the factorization energy (zero-norm image)");
    if (dE < 0.0)
        throw DomainError("map_eigenfunction: E below the factorization energy "
                          "(imaginary normalization)");
    GridFunction image = (scheme.ordering == Ordering::dagger_first)
                             ? apply_annihilation(scheme.beta, psi)
                             : apply_creation(scheme.beta, psi);
    GridFunction scaled = (1.0 / std::sqrt(dE)) * image;
    const double nrm = l2_norm(scaled);
    if (std::fabs(nrm - 1.0) > 0.1)
        throw NumericError("map_eigenfunction: image norm " + std::to_string(nrm) +
                           " far from 1; wrong scheme or unnormalized input");
    return normalized(scaled);
}

std::vector<double> analytic_levels(const PotentialSpec& spec, int m) {
    std::vector<double> e(m);
    switch (spec.kind) {
        case PotentialSpec::Kind::oscillator:
            for (int n = 0; n < m; ++n) e[n] = 2.0 * n + 1.0;
            return e;
        case PotentialSpec::Kind::oscillator_shifted:
            for (int n = 0; n < m; ++n) e[n] = 2.0 * n + 3.0;
            return e;
        case PotentialSpec::Kind::hydrogen_radial:
            for (int k = 1; k <= m; ++k) {
                double n = spec.l + k;
                e[k - 1] = -1.0 / (n * n);
            }
            return e;
        case PotentialSpec::Kind::tabulated:
            break;
    }
    throw DomainError("analytic_levels: tabulated potential has no closed-form spectrum");
}

const GridFunction& ChainState::previous_potential() const {
    if (steps.size() < 2)
        return base_potential;
    return steps[steps.size() - 2].potential;
}

namespace {

double chain_gate(const Grid& g) {
    const double h = g.spacing();
    return 100.0 * h * h;
}

} // namespace

ChainState chain_begin(const GridFunction& V0, double eps1, const BetaFunction& beta1) {
    const Grid& g = V0.grid();
    GridFunction res = riccati_residual(beta1, V0, eps1, RiccatiSign::minus);
    double r = max_abs(res);
    if (r > chain_gate(g))
        throw NumericError("chain_begin: Riccati residual " + std::to_string(r) +
                           " exceeds gate " + std::to_string(chain_gate(g)));
    GridFunction V1 = transform_potential(V0, beta1, TransformDirection::add);
    ChainState state{V0, {}};
    state.steps.push_back(ChainStep{eps1, beta1, std::move(V1), r});
    return state;
}

ChainState chain_step(const ChainState& state, double next_epsilon,
                      const BetaFunction& next_seed_beta) {
    if (state.steps.empty())
        throw DomainError("chain_step: chain not initialized (use chain_begin)");
    const ChainStep& last = state.steps.back();
    const double delta = next_epsilon - last.epsilon;
    if (std::fabs(delta) < 1e-12)
        throw DomainError("chain_step: equal consecutive factorization energies");

    const Grid& g = state.base_potential.grid();
    GridFunction bn = last.beta.values_on(g);

    // Seed values pointwise: isolated poles of the seed are legitimate (they
    // send the correction term to zero), so bypass the finite-samples
    // invariant by evaluating the closed form directly when present.
    std::vector<double> bhat(g.n_points);
    if (next_seed_beta.value_fn) {
        for (int i = 0; i < g.n_points; ++i)
            bhat[i] = next_seed_beta.value_fn(g.node(i));
    } else {
        GridFunction s = next_seed_beta.values_on(g);
        for (int i = 0; i < g.n_points; ++i)
            bhat[i] = s[i];
    }

    std::vector<double> bnext(g.n_points);
    for (int i = 0; i < g.n_points; ++i) {
        double gdiff = bhat[i] - bn[i];
        double v = -bn[i] - delta / gdiff;
        if (!std::isfinite(v))
            throw SingularError("chain_step: seed and chain superpotentials collide at node " +
                                std::to_string(i) + " (x = " + std::to_string(g.node(i)) + ")");
        bnext[i] = v;
    }

    BetaFunction beta_next;
    beta_next.epsilon = next_epsilon;
    beta_next.samples = GridFunction(g, std::move(bnext));

    const GridFunction& Vn = state.current_potential();
    GridFunction res = riccati_residual(beta_next, Vn, next_epsilon, RiccatiSign::minus);
    double r = max_abs(res);
    if (r > chain_gate(g))
        throw NumericError("chain_step: Riccati residual " + std::to_string(r) +
                           " exceeds gate " + std::to_string(chain_gate(g)) +
                           " (singular or inconsistent seed)");

    GridFunction Vnext = transform_potential(Vn, beta_next, TransformDirection::add);
    ChainState out = state;
    out.steps.push_back(ChainStep{next_epsilon, std::move(beta_next), std::move(Vnext), r});
    return out;
}

} // namespace isofactor
