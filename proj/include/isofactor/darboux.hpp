#pragma once

#include <optional>
#include <vector>

#include "isofactor/grid.hpp"
#include "isofactor/riccati.hpp"
#include "isofactor/seeds.hpp"

namespace isofactor {

enum class TransformDirection { add, subtract }; // V ± 2*beta'

GridFunction transform_potential(const GridFunction& V, const BetaFunction& beta,
                                 TransformDirection direction);

struct MissingState {
    GridFunction psi; // unit-normalized when normalizable, max-normalized otherwise
    bool normalizable;
};

// Kernel of the adjoint operator in the partner sector: exp(+int beta) for
// dagger_first, exp(-int beta) for plain_first. Normalizability decided
// numerically (finite norm, decaying tails).
MissingState missing_state(const BetaFunction& beta, Ordering ordering, const Grid& grid);

// One Darboux/Mielnik transform, fully assembled.
struct TransformResult {
    PotentialSpec source;             // the analytically known system
    FactorizationScheme scheme;       // beta + product ordering
    GridFunction source_potential;
    GridFunction target_potential;
    double epsilon;
    MissingState missing;
    double family_parameter;          // gamma | lambda | nu, as applicable
};

// Eq.-level family constructors. Parameters are validated against the
// singularity-free domains before any quadrature runs.
TransformResult mielnik_oscillator_family(double gamma, const Grid& grid);
TransformResult mielnik_hydrogen_family(int l, double lambda, const Grid& grid);
TransformResult generalized_oscillator_family(double epsilon, double nu, const Grid& grid);
TransformResult generalized_hydrogen_family(int l, int k, double lambda, const Grid& grid);
// Particular-solution partner (no free parameter).
TransformResult sdih_partner(const PotentialSpec& spec, const Grid& grid);

// psi_tilde = (E - eps)^{-1/2} * (A psi) for dagger_first sources,
// (E - eps)^{-1/2} * (A† psi) for plain_first, re-normalized exactly.
GridFunction map_eigenfunction(const FactorizationScheme& scheme, const GridFunction& psi,
                               double E);

// Analytic levels of the closed-form systems, ascending.
std::vector<double> analytic_levels(const PotentialSpec& spec, int m);

// Higher-order factorization chain; immutable value, each step returns a new
// state.
struct ChainStep {
    double epsilon;
    BetaFunction beta;
    GridFunction potential; // potential after this step
    double residual;        // max-norm Riccati residual gate value
};

struct ChainState {
    GridFunction base_potential;
    std::vector<ChainStep> steps;

    const GridFunction& current_potential() const {
        return steps.empty() ? base_potential : steps.back().potential;
    }
    // Potential the latest beta factorizes (one level up).
    const GridFunction& previous_potential() const;
};

ChainState chain_begin(const GridFunction& V0, double eps1, const BetaFunction& beta1);

// Appends (eps_next, beta_next, V_next) with
//   beta_next = -beta_n - (eps_next - eps_n)/(seed_beta - beta_n),
// where seed_beta solves the Riccati equation of the PREVIOUS potential at
// eps_next (for a two-step chain: the base potential). Isolated poles of
// seed_beta are absorbed by the recursion; the result must be finite
// everywhere and is residual-gated before the step is accepted.
ChainState chain_step(const ChainState& state, double next_epsilon,
                      const BetaFunction& next_seed_beta);

} // namespace isofactor
