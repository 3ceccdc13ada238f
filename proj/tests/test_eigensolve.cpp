#include "doctest.h"

#include <cmath>
#include <numbers>

#include "isofactor/darboux.hpp"
#include "isofactor/eigensolve.hpp"

using namespace isofactor;

TEST_CASE("discretization layout") {
    Grid g(0.0, 1.0, 5);
    GridFunction V = GridFunction::sample(g, [](double x) { return 10.0 * x; });
    DiscretizedHamiltonian H = build_hamiltonian(V);
    const double h = g.spacing();
    CHECK(H.size() == 5);
    CHECK(H.off == doctest::Approx(-1.0 / (h * h)));
    for (int i = 0; i < 5; ++i)
        CHECK(H.diag[i] == doctest::Approx(2.0 / (h * h) + V[i]));
}

TEST_CASE("particle in a box") {
    Grid g(0.0, 1.0, 2001);
    DiscretizedHamiltonian H = build_hamiltonian(GridFunction::zero(g));
    std::vector<double> ev = lowest_eigenvalues(H, 3);
    // Hard walls sit on the ghost nodes, one spacing beyond each end.
    const double L = 1.0 + 2.0 * g.spacing();
    const double pi2 = std::numbers::pi * std::numbers::pi / (L * L);
    CHECK(std::fabs(ev[0] - pi2) < 1e-4);
    CHECK(std::fabs(ev[1] - 4.0 * pi2) < 1e-4);
    CHECK(std::fabs(ev[2] - 9.0 * pi2) < 5e-4);
}

TEST_CASE("constant potential shifts the box spectrum exactly") {
    Grid g(0.0, 1.0, 501);
    std::vector<double> base = lowest_eigenvalues(build_hamiltonian(GridFunction::zero(g)), 3);
    std::vector<double> shifted = lowest_eigenvalues(
        build_hamiltonian(GridFunction::sample(g, [](double) { return 7.0; })), 3);
    for (int i = 0; i < 3; ++i)
        CHECK(std::fabs(shifted[i] - base[i] - 7.0) < 1e-9);
}

TEST_CASE("oscillator spectrum 2n+1") {
    Grid g(-8.0, 8.0, 2001);
    DiscretizedHamiltonian H = build_hamiltonian(PotentialSpec::oscillator().potential_on(g));
    std::vector<double> ev = lowest_eigenvalues(H, 5);
    for (int n = 0; n < 5; ++n)
        CHECK(std::fabs(ev[n] - (2.0 * n + 1.0)) < 1e-3);
}

TEST_CASE("hydrogen spectrum -1/n^2") {
    const int n = 6001;
    const double h = 60.0 / n;
    Grid g(h, 60.0, n);
    DiscretizedHamiltonian H = build_hamiltonian(PotentialSpec::hydrogen(1).potential_on(g));
    std::vector<double> ev = lowest_eigenvalues(H, 3);
    CHECK(std::fabs(ev[0] + 0.25) < 5e-3);
    CHECK(std::fabs(ev[1] + 1.0 / 9.0) < 5e-3);
    CHECK(std::fabs(ev[2] + 1.0 / 16.0) < 5e-3);
}

TEST_CASE("lowest_eigenvalues guards") {
    Grid g(0.0, 1.0, 11);
    DiscretizedHamiltonian H = build_hamiltonian(GridFunction::zero(g));
    CHECK_THROWS_AS(lowest_eigenvalues(H, 0), DomainError);
    CHECK_THROWS_AS(lowest_eigenvalues(H, 13), DomainError);
    CHECK_THROWS_AS(lowest_eigenvalues(H, 12, 20), DomainError); // exceeds matrix size 11
}

TEST_CASE("sturm count is monotone and brackets the spectrum") {
    Grid g(-8.0, 8.0, 1001);
    DiscretizedHamiltonian H = build_hamiltonian(PotentialSpec::oscillator().potential_on(g));
    CHECK(sturm_count(H, 0.0) == 0);
    CHECK(sturm_count(H, 2.0) == 1);
    CHECK(sturm_count(H, 10.0) == 5);
}

TEST_CASE("eigenvector node counts match the level index") {
    Grid g(-8.0, 8.0, 2001);
    DiscretizedHamiltonian H = build_hamiltonian(PotentialSpec::oscillator().potential_on(g));
    std::vector<double> ev = lowest_eigenvalues(H, 5);
    for (int k = 0; k < 5; ++k) {
        GridFunction psi = eigenvector(H, ev[k]);
        int nodes = 0;
        for (int i = 2; i < g.n_points - 2; ++i)
            if (psi[i] * psi[i + 1] < 0.0)
                ++nodes;
        CHECK(nodes == k);
        CHECK(l2_norm(psi) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("rayleigh quotient of an eigenvector reproduces its eigenvalue") {
    Grid g(-8.0, 8.0, 2001);
    GridFunction V = PotentialSpec::oscillator().potential_on(g);
    DiscretizedHamiltonian H = build_hamiltonian(V);
    std::vector<double> ev = lowest_eigenvalues(H, 3);
    for (int k = 0; k < 3; ++k) {
        GridFunction psi = eigenvector(H, ev[k]);
        CHECK(rayleigh_quotient(V, psi) == doctest::Approx(ev[k]).epsilon(1e-6));
    }
}

TEST_CASE("Richardson: halving h cuts the ground-state error by >= 3.5x") {
    auto err = [](int n) {
        Grid g(-8.0, 8.0, n);
        DiscretizedHamiltonian H =
            build_hamiltonian(PotentialSpec::oscillator().potential_on(g));
        return std::fabs(lowest_eigenvalues(H, 1)[0] - 1.0);
    };
    CHECK(err(1001) / err(2001) >= 3.5);
}

TEST_CASE("numerov oracle on the oscillator") {
    Grid g(-8.0, 8.0, 2001);
    GridFunction V = PotentialSpec::oscillator().potential_on(g);
    CHECK(numerov_node_count(V, 4.0) == 2);
    CHECK(std::fabs(numerov_shoot(V, 0.5, 1.5) - 1.0) < 1e-5);
    CHECK(std::fabs(numerov_shoot(V, 2.5, 3.5) - 3.0) < 1e-5);
    CHECK_THROWS_AS(numerov_shoot(V, 1.5, 2.5), NumericError); // empty gap
    CHECK_THROWS_AS(numerov_shoot(V, 0.0, 4.0), NumericError); // two levels
    CHECK_THROWS_AS(numerov_shoot(V, 2.0, 1.0), DomainError);
}

TEST_CASE("matrix and numerov oracles agree") {
    Grid g(-8.0, 8.0, 2001);
    GridFunction V = PotentialSpec::oscillator().potential_on(g);
    std::vector<double> ev = lowest_eigenvalues(build_hamiltonian(V), 3);
    for (int k = 0; k < 3; ++k) {
        double nv = numerov_shoot(V, ev[k] - 0.5, ev[k] + 0.5);
        CHECK(std::fabs(nv - ev[k]) < 1e-4);
    }
}

TEST_CASE("isospectral report: pass and fail outcomes") {
    Grid g(-8.0, 8.0, 2001);
    GridFunction V = PotentialSpec::oscillator().potential_on(g);

    GridFunction V_shift = GridFunction::sample(g, [](double x) { return x * x + 1.0; });
    SpectrumReport bad = isospectral_report(V, V_shift, 1.0, 4, 2e-3);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_abs_error > 0.5);

    // The particular-solution partner of x^2+2 is x^2 itself with the extra
    // level at eps = 1: exact isospectrality.
    GridFunction V_src = PotentialSpec::oscillator_shifted().potential_on(g);
    SpectrumReport good = isospectral_report(V_src, V, 1.0, 5, 2e-3);
    CHECK(good.pass);
    CHECK(good.predicted.size() == 5);
    CHECK(good.predicted[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("intertwining residual: oscillator pair and negative control") {
    Grid g(-8.0, 8.0, 4001);
    GridFunction V = PotentialSpec::oscillator().potential_on(g);
    GridFunction Vt = PotentialSpec::oscillator_shifted().potential_on(g);
    BetaFunction b = particular_beta(PotentialSpec::oscillator());
    // Excited state: the intertwiner kills the ground state, which would make
    // the residual vanish for any target.
    GridFunction psi = normalized(
        GridFunction::sample(g, [](double x) { return x * std::exp(-0.5 * x * x); }));

    CHECK(intertwine_residual(V, Vt, b, psi) <= 5e-4);
    CHECK(intertwine_residual(V, V, b, psi) > 1e-1); // broken pairing must be loud
    CHECK(intertwine_residual(V, Vt, b, GridFunction::zero(g)) == 0.0);
}
