#pragma once

#include <string>
#include <variant>

#include "isofactor/grid.hpp"
#include "isofactor/riccati.hpp"

namespace isofactor {

// A linear Schrodinger solution u at factorization energy epsilon, with
// analytic first and second derivatives sampled on the same grid.
struct SeedFunction {
    GridFunction u;
    GridFunction du;
    GridFunction d2u;
    double epsilon;
};

// Family descriptors, validated against the singularity-free parameter
// domains before any construction runs.
struct MielnikOscillator { double gamma; };                    // |gamma| > sqrt(pi)/2
struct MielnikHydrogen { int l; double lambda; };              // lambda > (2l)!(l/2)^{2l+1} or lambda < 0
struct GeneralizedOscillator { double epsilon; double nu; };   // epsilon < 1, |nu| < 1
struct GeneralizedHydrogen { int l; int k; double lambda; };   // k in {0..-(l-1)}, lambda by |k| parity

using FamilyDescriptor =
    std::variant<MielnikOscillator, MielnikHydrogen, GeneralizedOscillator, GeneralizedHydrogen>;

struct Validation {
    bool ok;
    std::string reason; // cites the violated bound when !ok
};

Validation validate_params(const FamilyDescriptor& family);
// Throws DomainError carrying the validation reason when rejected.
void require_valid(const FamilyDescriptor& family);

// Energy catalogs for the generalized factorizations.
double oscillator_energy(int k);          // -2k - 1, k >= 0
double hydrogen_energy(int l, int k);     // -1/(l+k)^2, k in {0,-1,...,-(l-1)}

// u(x) = Phi(x^2) e^{-x^2/2} with the even/odd confluent-hypergeometric
// branches mixed by nu. Solves -u'' + x^2 u = eps u; positive on the line for
// in-domain (eps, nu).
SeedFunction oscillator_seed(double epsilon, double nu, const Grid& grid);

// u(r) = r^{-l} e^{r/(l+k)} Phi_l^{(k)}(r); the leading 1F1 is a terminating
// series, and the Gamma-ratio coefficient is evaluated in Pochhammer form.
SeedFunction hydrogen_seed(int l, int k, double lambda, const Grid& grid);

// u = psi_N [c0 + c1 int psi_N^{-2}]; superposition of the two linear
// solutions sharing psi_N's energy.
GridFunction general_seed_from_null(const GridFunction& psi_N, double c0, double c1);

// Pure-parity oscillator solution at eps = -2k-1: u_k = H_k(x) e^{x^2/2}
// with H_0 = 1, H_1 = x, H_{k+1} = x H_k + (k/2) H_{k-1} (nonnegative
// coefficients, so u_k has a node only at the origin for odd k). Returned as
// a closed-form superpotential for chain steps; odd k has a pole at x = 0
// that the chain recursion absorbs.
BetaFunction oscillator_chain_seed_beta(int k);

// beta = -u'/u (dagger_first convention) or +u'/u (plain_first), with the
// analytic derivative carried through.
BetaFunction beta_from_seed(const SeedFunction& seed, Ordering ordering);

} // namespace isofactor
