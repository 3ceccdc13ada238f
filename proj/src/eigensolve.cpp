#include "isofactor/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace isofactor {

DiscretizedHamiltonian build_hamiltonian(const GridFunction& V) {
    const Grid& g = V.grid();
    const double h = g.spacing();
    const int n = g.n_points;
    if (n < 3)
        throw DomainError("build_hamiltonian: grid too small");
    // Dirichlet ghost nodes one spacing beyond each end. On radial grids with
    // x_min = h this places the wall exactly at r = 0, which is what keeps
    // s-wave Coulomb eigenvalues second-order accurate.
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i)
        d[i] = 2.0 / (h * h) + V[i];
    return DiscretizedHamiltonian{g, std::move(d), -1.0 / (h * h)};
}

int sturm_count(const DiscretizedHamiltonian& H, double x) {
    const double off2 = H.off * H.off;
    int count = 0;
    double d = H.diag[0] - x;
    if (d == 0.0)
        d = 1e-300;
    if (d < 0.0)
        ++count;
    for (int i = 1; i < H.size(); ++i) {
        d = (H.diag[i] - x) - off2 / d;
        if (d == 0.0)
            d = 1e-300;
        if (d < 0.0)
            ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const DiscretizedHamiltonian& H, int m, int cap) {
    if (m < 1 || m > cap)
        throw DomainError("lowest_eigenvalues: m must be in [1, cap = " + std::to_string(cap) + "]");
    if (m > H.size())
        throw DomainError("lowest_eigenvalues: m exceeds matrix size");

    double lo0 = H.diag[0], hi0 = H.diag[0];
    for (double d : H.diag) {
        lo0 = std::min(lo0, d);
        hi0 = std::max(hi0, d);
    }
    lo0 -= 2.0 * std::fabs(H.off);
    hi0 += 2.0 * std::fabs(H.off);

    std::vector<double> ev(m);
    for (int k = 0; k < m; ++k) {
        double lo = lo0, hi = hi0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (sturm_count(H, mid) > k)
                hi = mid;
            else
                lo = mid;
            if (hi - lo <= 1e-13 * (std::fabs(lo) + std::fabs(hi)) + 1e-12)
                break;
        }
        ev[k] = 0.5 * (lo + hi);
    }
    return ev;
}

namespace {

// One inverse-iteration solve: (T - E) v = w, tridiagonal Gaussian
// elimination with partial pivoting (one fill-in band).
void shifted_solve(const DiscretizedHamiltonian& H, double E, std::vector<double>& v) {
    const int n = H.size();
    std::vector<double> a(n, H.off), b(n), c(n, H.off), c2(n, 0.0);
    for (int i = 0; i < n; ++i) b[i] = H.diag[i] - E;
    a[0] = 0.0;
    c[n - 1] = 0.0;

    for (int i = 0; i < n - 1; ++i) {
        if (std::fabs(a[i + 1]) > std::fabs(b[i])) {
            std::swap(b[i], a[i + 1]);
            std::swap(c[i], b[i + 1]);
            std::swap(c2[i], c[i + 1]);
            std::swap(v[i], v[i + 1]);
        }
        if (b[i] == 0.0)
            b[i] = 1e-300;
        double f = a[i + 1] / b[i];
        b[i + 1] -= f * c[i];
        c[i + 1] -= f * c2[i];
        v[i + 1] -= f * v[i];
    }
    if (b[n - 1] == 0.0)
        b[n - 1] = 1e-300;
    v[n - 1] /= b[n - 1];
    if (n >= 2)
        v[n - 2] = (v[n - 2] - c[n - 2] * v[n - 1]) / b[n - 2];
    for (int i = n - 3; i >= 0; --i)
        v[i] = (v[i] - c[i] * v[i + 1] - c2[i] * v[i + 2]) / b[i];
}

} // namespace

GridFunction eigenvector(const DiscretizedHamiltonian& H, double E) {
    const int n = H.size();
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int iter = 0; iter < 4; ++iter) {
        shifted_solve(H, E, v);
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw NumericError("eigenvector: inverse iteration failed");
        for (double& x : v) x /= nrm;
    }
    // Deterministic sign: largest-magnitude component positive.
    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (std::fabs(v[i]) > std::fabs(v[imax])) imax = i;
    if (v[imax] < 0.0)
        for (double& x : v) x = -x;

    return normalized(GridFunction(H.grid, std::move(v)));
}

GridFunction apply_hamiltonian(const GridFunction& V, const GridFunction& psi) {
    require_same_grid(V, psi);
    const int n = psi.size();
    const double h = psi.spacing();
    std::vector<double> out(n);
    for (int i = 1; i < n - 1; ++i)
        out[i] = -(psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (h * h) + V[i] * psi[i];
    out[0] = out[1];         // endpoints excluded by callers' margins
    out[n - 1] = out[n - 2];
    return GridFunction(psi.grid(), std::move(out));
}

double rayleigh_quotient(const GridFunction& V, const GridFunction& psi) {
    GridFunction Hpsi = apply_hamiltonian(V, psi);
    const int n = psi.size();
    double num = 0.0, den = 0.0;
    for (int i = 1; i < n - 1; ++i) {
        num += psi[i] * Hpsi[i];
        den += psi[i] * psi[i];
    }
    if (den == 0.0)
        throw NumericError("rayleigh_quotient: zero function");
    return num / den;
}

namespace {

struct NumerovSweep {
    std::vector<double> y;
    int nodes;
};

// Numerov recurrence across [from, to] (inclusive), step +1 or -1; y is
// renormalized on the fly to avoid overflow in classically forbidden regions.
NumerovSweep numerov_sweep(const GridFunction& V, double E, int from, int to, int step) {
    const int n = V.size();
    const double h = V.spacing();
    const double h12 = h * h / 12.0;
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i)
        f[i] = 1.0 + h12 * (E - V[i]);

    // Zero boundary value sits on a ghost node one spacing outside the grid,
    // matching the matrix discretization.
    std::vector<double> y(n, 0.0);
    y[from] = 1e-10;
    y[from + step] = (12.0 - 10.0 * f[from]) * y[from] / f[from + step];
    int nodes = (y[from + step] * y[from] < 0.0) ? 1 : 0;
    for (int i = from + step; i != to; i += step) {
        double num = (12.0 - 10.0 * f[i]) * y[i] - f[i - step] * y[i - step];
        y[i + step] = num / f[i + step];
        if (y[i + step] * y[i] < 0.0)
            ++nodes;
        if (std::fabs(y[i + step]) > 1e200) {
            double s = 1.0 / std::fabs(y[i + step]);
            for (int j = from; ; j += step) {
                y[j] *= s;
                if (j == i + step) break;
            }
        }
    }
    return {std::move(y), nodes};
}

int matching_index(const GridFunction& V, double E) {
    const int n = V.size();
    // Rightmost allowed->forbidden crossing; midpoint when there is none.
    for (int i = n - 2; i >= 1; --i) {
        if (V[i] <= E && V[i + 1] > E)
            return std::clamp(i, 2, n - 3);
    }
    return n / 2;
}

// Log-derivative mismatch of left and right Numerov solutions at the
// matching node; zero at an eigenvalue.
double matching_defect(const GridFunction& V, double E) {
    const int n = V.size();
    int m = matching_index(V, E);
    NumerovSweep L = numerov_sweep(V, E, 0, std::min(m + 6, n - 1), +1);
    NumerovSweep R = numerov_sweep(V, E, n - 1, std::max(m - 6, 0), -1);
    for (int shift = 0; shift < 4 && (L.y[m] == 0.0 || R.y[m] == 0.0) && m + 2 < n; ++shift)
        ++m; // matching node fell on a node of the solution
    const double h = V.spacing();
    double dl = (L.y[m + 1] - L.y[m - 1]) / (2.0 * h * L.y[m]);
    double dr = (R.y[m + 1] - R.y[m - 1]) / (2.0 * h * R.y[m]);
    return dl - dr;
}

} // namespace

int numerov_node_count(const GridFunction& V, double E) {
    return numerov_sweep(V, E, 0, V.size() - 1, +1).nodes;
}

double numerov_shoot(const GridFunction& V, double E_lo, double E_hi) {
    if (!(E_lo < E_hi))
        throw DomainError("numerov_shoot: need E_lo < E_hi");
    const int c_lo = numerov_node_count(V, E_lo);
    const int c_hi = numerov_node_count(V, E_hi);
    if (c_hi - c_lo != 1)
        throw NumericError("numerov_shoot: bracket (" + std::to_string(E_lo) + ", " +
                           std::to_string(E_hi) + ") contains " + std::to_string(c_hi - c_lo) +
                           " levels, expected exactly 1");

    // Narrow by node counts first (robust), then bisect the matching defect.
    double lo = E_lo, hi = E_hi;
    for (int it = 0; it < 12; ++it) {
        double mid = 0.5 * (lo + hi);
        if (numerov_node_count(V, mid) > c_lo)
            hi = mid;
        else
            lo = mid;
    }
    double d_lo = matching_defect(V, lo);
    double d_hi = matching_defect(V, hi);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (std::fabs(lo) + std::fabs(hi)) + 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        if (std::isfinite(d_lo) && std::isfinite(d_hi) && (d_lo > 0.0) != (d_hi > 0.0)) {
            double d_mid = matching_defect(V, mid);
            if ((d_mid > 0.0) == (d_lo > 0.0)) {
                lo = mid;
                d_lo = d_mid;
            } else {
                hi = mid;
                d_hi = d_mid;
            }
        } else {
            if (numerov_node_count(V, mid) > c_lo) {
                hi = mid;
                d_hi = matching_defect(V, mid);
            } else {
                lo = mid;
                d_lo = matching_defect(V, mid);
            }
        }
    }
    return 0.5 * (lo + hi);
}

SpectrumReport isospectral_report(const GridFunction& V_source, const GridFunction& V_target,
                                  double epsilon, int m, double tol) {
    require_same_grid(V_source, V_target);
    std::vector<double> predicted;
    if (m > 1) {
        predicted = lowest_eigenvalues(build_hamiltonian(V_source), m - 1, std::max(12, m));
    }
    predicted.push_back(epsilon);
    std::sort(predicted.begin(), predicted.end());

    std::vector<double> computed =
        lowest_eigenvalues(build_hamiltonian(V_target), m, std::max(12, m));

    double err = 0.0;
    for (int i = 0; i < m; ++i)
        err = std::max(err, std::fabs(computed[i] - predicted[i]));
    return SpectrumReport{std::move(computed), std::move(predicted), err, tol, err <= tol};
}

double intertwine_residual(const GridFunction& V, const GridFunction& V_target,
                           const BetaFunction& beta, const GridFunction& psi,
                           Ordering ordering) {
    require_same_grid(V, psi);
    auto apply_op = [&](const GridFunction& f) {
        GridFunction b = beta.values_on(f.grid());
        GridFunction df = derivative(f);
        const double s = (ordering == Ordering::dagger_first) ? +1.0 : -1.0;
        std::vector<double> out(f.size());
        for (int i = 0; i < f.size(); ++i)
            out[i] = s * df[i] + b[i] * f[i];
        return GridFunction(f.grid(), std::move(out));
    };

    GridFunction lhs = apply_hamiltonian(V_target, apply_op(psi));
    GridFunction rhs = apply_op(apply_hamiltonian(V, psi));

    const int n = psi.size();
    const double h = psi.spacing();
    double num = 0.0, den = 0.0;
    for (int i = 2; i < n - 2; ++i) {
        double d = lhs[i] - rhs[i];
        num += d * d * h;
    }
    for (int i = 0; i < n; ++i)
        den += psi[i] * psi[i] * h;
    if (den == 0.0)
        return 0.0;
    return std::sqrt(num / den);
}

} // namespace isofactor
