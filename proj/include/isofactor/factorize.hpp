#pragma once

#include "isofactor/grid.hpp"
#include "isofactor/riccati.hpp"

namespace isofactor {

// (A f)(x) = f'(x) + beta(x) f(x); analytic beta, numeric f'.
GridFunction apply_annihilation(const BetaFunction& beta, const GridFunction& f);

// (A† f)(x) = -f'(x) + beta(x) f(x).
GridFunction apply_creation(const BetaFunction& beta, const GridFunction& f);

enum class KernelKind {
    annihilation_kernel, // psi_N ∝ e^{-int beta}
    creation_kernel,     // psi_M ∝ e^{+int beta}
};

struct NullState {
    GridFunction psi; // max-normalized to 1
    bool square_integrable;
};

NullState null_state(const BetaFunction& beta, KernelKind which, const Grid& grid);

// Heuristic square-integrability check: |psi| must decay monotonically toward
// both edges (window clamped at the global peak) and the edge amplitude must
// sit well below the peak.
bool decaying_tails(const GridFunction& psi);

// l-ladder for the radial problem: raise applies a†_{l+1}, lower applies a_l.
struct LadderContext {
    int l;
    enum class Direction { raise_l, lower_l } direction;
};

struct LadderResult {
    GridFunction psi;  // unit-normalized unless annihilated
    bool annihilated;  // ||output|| / ||input|| below threshold
};

LadderResult hydrogen_ladder(const LadderContext& ctx, const GridFunction& psi);

} // namespace isofactor
