#pragma once

#include <vector>

#include "isofactor/grid.hpp"
#include "isofactor/riccati.hpp"

namespace isofactor {

// Symmetric tridiagonal discretization of -d^2/dx^2 + V on all grid nodes;
// Dirichlet zeros sit on ghost nodes one spacing beyond each end (on radial
// grids with x_min = h this puts the wall exactly at r = 0).
struct DiscretizedHamiltonian {
    Grid grid;
    std::vector<double> diag;  // 2/h^2 + V(x_i)
    double off;                // -1/h^2

    int size() const { return static_cast<int>(diag.size()); }
};

DiscretizedHamiltonian build_hamiltonian(const GridFunction& V);

// Number of eigenvalues strictly below x (Sturm sequence count).
int sturm_count(const DiscretizedHamiltonian& H, double x);

// m smallest eigenvalues by deterministic Sturm bisection, ascending.
std::vector<double> lowest_eigenvalues(const DiscretizedHamiltonian& H, int m, int cap = 12);

// Eigenvector for an eigenvalue near E by inverse iteration; unit L2 norm.
GridFunction eigenvector(const DiscretizedHamiltonian& H, double E);

// <psi, H psi> / <psi, psi> with the discretized operator.
double rayleigh_quotient(const GridFunction& V, const GridFunction& psi);

// H psi on the full grid (finite-difference Laplacian; boundary nodes copied
// from the nearest interior stencil result are excluded by callers' margins).
GridFunction apply_hamiltonian(const GridFunction& V, const GridFunction& psi);

// Numerov O(h^4) sweeps.
int numerov_node_count(const GridFunction& V, double E);
// Eigenvalue inside (E_lo, E_hi); the bracket must contain exactly one level
// (checked with node counts). Two-sided integration matched at the rightmost
// classical turning point, bisection on the log-derivative defect.
double numerov_shoot(const GridFunction& V, double E_lo, double E_hi);

struct SpectrumReport {
    std::vector<double> computed;
    std::vector<double> predicted;
    double max_abs_error;
    double tolerance;
    bool pass;
};

// predicted = sort({epsilon} ∪ lowest m-1 of source); computed = lowest m of
// target. Failure is a report outcome, not an exception.
SpectrumReport isospectral_report(const GridFunction& V_source, const GridFunction& V_target,
                                  double epsilon, int m, double tol);

// ||Htarget(A psi) - A(H psi)||_2 / ||psi||_2 over the interior (2-node
// margins). dagger_first uses A = d/dx + beta; plain_first the adjoint.
double intertwine_residual(const GridFunction& V, const GridFunction& V_target,
                           const BetaFunction& beta, const GridFunction& psi,
                           Ordering ordering = Ordering::dagger_first);

} // namespace isofactor
