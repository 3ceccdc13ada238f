#include "isofactor/seeds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "isofactor/specfun.hpp"

namespace isofactor {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

struct ValidateVisitor {
    Validation operator()(const MielnikOscillator& m) const {
        const double bound = std::sqrt(std::numbers::pi) / 2.0;
        if (std::fabs(m.gamma) > bound)
            return {true, ""};
        std::ostringstream os;
        os << "|gamma| = " << std::fabs(m.gamma) << " violates |gamma| > sqrt(pi)/2 = " << bound;
        return {false, os.str()};
    }
    Validation operator()(const MielnikHydrogen& m) const {
        if (m.l < 1)
            return {false, "hydrogen family requires l >= 1"};
        const double bound = factorial(2 * m.l) * std::pow(m.l / 2.0, 2 * m.l + 1);
        if (m.lambda > bound || m.lambda < 0.0)
            return {true, ""};
        std::ostringstream os;
        os << "lambda = " << m.lambda << " violates lambda > (2l)!(l/2)^(2l+1) = " << bound
           << " or lambda < 0";
        return {false, os.str()};
    }
    Validation operator()(const GeneralizedOscillator& g) const {
        if (g.epsilon >= 1.0) {
            std::ostringstream os;
            os << "epsilon = " << g.epsilon << " violates epsilon < 1";
            return {false, os.str()};
        }
        if (std::fabs(g.nu) >= 1.0) {
            std::ostringstream os;
            os << "|nu| = " << std::fabs(g.nu) << " violates |nu| < 1";
            return {false, os.str()};
        }
        return {true, ""};
    }
    Validation operator()(const GeneralizedHydrogen& g) const {
        if (g.l < 1)
            return {false, "hydrogen family requires l >= 1"};
        if (g.k > 0 || g.k <= -g.l) {
            std::ostringstream os;
            os << "k = " << g.k << " outside the discrete set {0,-1,...,-(l-1)} for l = " << g.l;
            return {false, os.str()};
        }
        const bool even = (std::abs(g.k) % 2 == 0);
        if (even ? (g.lambda < 1.0) : (g.lambda > 1.0))
            return {true, ""};
        std::ostringstream os;
        os << "lambda = " << g.lambda << " outside " << (even ? "(-inf, 1) for |k| even" : "(1, inf) for |k| odd");
        return {false, os.str()};
    }
};

} // namespace

Validation validate_params(const FamilyDescriptor& family) {
    return std::visit(ValidateVisitor{}, family);
}

void require_valid(const FamilyDescriptor& family) {
    Validation v = validate_params(family);
    if (!v.ok)
        throw DomainError(v.reason);
}

double oscillator_energy(int k) {
    if (k < 0)
        throw DomainError("oscillator_energy: k must be >= 0");
    return -2.0 * k - 1.0;
}

double hydrogen_energy(int l, int k) {
    if (l < 1 || k > 0 || k <= -l)
        throw DomainError("hydrogen_energy: need l >= 1 and k in {0,-1,...,-(l-1)}");
    const double n = l + k;
    return -1.0 / (n * n);
}

SeedFunction oscillator_seed(double epsilon, double nu, const Grid& grid) {
    require_valid(GeneralizedOscillator{epsilon, nu});

    const double a1 = (1.0 - epsilon) / 4.0;
    const double a2 = (3.0 - epsilon) / 4.0;
    // Gamma-ratio weight of the odd branch; both arguments positive for eps < 1.
    const double g = std::tgamma(a2) / std::tgamma(a1);

    const int n = grid.n_points;
    std::vector<double> u(n), du(n), d2u(n);
    for (int i = 0; i < n; ++i) {
        const double x = grid.node(i);
        const double y = x * x;
        const double F1 = kummer_1f1(a1, 0.5, y);
        const double F1p = kummer_1f1_deriv(a1, 0.5, y);
        const double F1pp = kummer_1f1_deriv2(a1, 0.5, y);
        const double F2 = kummer_1f1(a2, 1.5, y);
        const double F2p = kummer_1f1_deriv(a2, 1.5, y);
        const double F2pp = kummer_1f1_deriv2(a2, 1.5, y);

        // P(x) = F1(x^2) + nu*g*x*F2(x^2); u = P exp(-x^2/2).
        const double P = F1 + nu * g * x * F2;
        const double Pp = 2.0 * x * F1p + nu * g * (F2 + 2.0 * y * F2p);
        const double Ppp = 2.0 * F1p + 4.0 * y * F1pp + nu * g * (6.0 * x * F2p + 4.0 * x * y * F2pp);
        const double e = std::exp(-0.5 * y);
        u[i] = P * e;
        du[i] = (Pp - x * P) * e;
        d2u[i] = (Ppp - 2.0 * x * Pp + (y - 1.0) * P) * e;
    }
    return SeedFunction{GridFunction(grid, std::move(u)), GridFunction(grid, std::move(du)),
                        GridFunction(grid, std::move(d2u)), epsilon};
}

SeedFunction hydrogen_seed(int l, int k, double lambda, const Grid& grid) {
    require_valid(GeneralizedHydrogen{l, k, lambda});
    if (grid.x_min <= 0.0)
        throw DomainError("hydrogen_seed: radial grid must have r > 0");

    const int m = std::abs(k);
    const double c = 1.0 / (l + k); // l + k >= 1 for the discrete set
    // nu_lk = [Gamma(1+|k|)/Gamma(2l+2)] [Gamma(-2l)/Gamma(-2l+|k|)] lambda,
    // both ratios in Pochhammer form.
    const double nu = gamma_ratio(1.0 + m, 2 * l + 1 - m) * gamma_ratio(-2.0 * l, m) * lambda;

    const double a1 = k;
    const double b1 = -2.0 * l;
    const double a2 = 1.0 + k + 2 * l;
    const double b2 = 2.0 + 2 * l;
    const double p = 1.0 + 2 * l; // power on the (2r/(l+k)) prefactor

    const int n = grid.n_points;
    std::vector<double> u(n), du(n), d2u(n);
    for (int i = 0; i < n; ++i) {
        const double r = grid.node(i);
        const double w = 2.0 * c * r; // z = -w
        const double dw = 2.0 * c;

        const double T1 = kummer_1f1(a1, b1, -w);
        const double T1p = -dw * kummer_1f1_deriv(a1, b1, -w);        // d/dr
        const double T1pp = dw * dw * kummer_1f1_deriv2(a1, b1, -w);

        double S = 0.0, Sp = 0.0, Spp = 0.0;
        if (nu != 0.0) {
            const double T2 = kummer_1f1(a2, b2, -w);
            const double T2w = -kummer_1f1_deriv(a2, b2, -w);          // d/dw
            const double T2ww = kummer_1f1_deriv2(a2, b2, -w);
            const double wp = std::pow(w, p);
            // S(r) = w^p T2, derivatives w.r.t. r via dw/dr.
            S = wp * T2;
            Sp = dw * (p * wp / w * T2 + wp * T2w);
            Spp = dw * dw * (p * (p - 1.0) * wp / (w * w) * T2 + 2.0 * p * wp / w * T2w + wp * T2ww);
        }

        const double Phi = T1 - nu * S;
        const double Phip = T1p - nu * Sp;
        const double Phipp = T1pp - nu * Spp;

        // A(r) = r^{-l} e^{cr}
        const double A = std::pow(r, -l) * std::exp(c * r);
        const double q = -l / r + c;          // A'/A
        const double Ap = A * q;
        const double App = A * (q * q + l / (r * r));

        u[i] = A * Phi;
        du[i] = Ap * Phi + A * Phip;
        d2u[i] = App * Phi + 2.0 * Ap * Phip + A * Phipp;
    }
    return SeedFunction{GridFunction(grid, std::move(u)), GridFunction(grid, std::move(du)),
                        GridFunction(grid, std::move(d2u)), hydrogen_energy(l, k)};
}

GridFunction general_seed_from_null(const GridFunction& psi_N, double c0, double c1) {
    const int n = psi_N.size();
    std::vector<double> inv2(n);
    for (int i = 0; i < n; ++i) {
        if (psi_N[i] == 0.0)
            throw SingularError("general_seed_from_null: psi_N vanishes at node " + std::to_string(i));
        inv2[i] = 1.0 / (psi_N[i] * psi_N[i]);
    }
    const Grid& g = psi_N.grid();
    double anchor = (g.x_min <= 0.0 && g.x_max >= 0.0) ? 0.0 : g.x_min;
    GridFunction I = cumulative_integral(GridFunction(g, std::move(inv2)), anchor);
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i)
        u[i] = psi_N[i] * (c0 + c1 * I[i]);
    return GridFunction(g, std::move(u));
}

BetaFunction oscillator_chain_seed_beta(int k) {
    if (k < 0)
        throw DomainError("oscillator_chain_seed_beta: k must be >= 0");
    // Coefficients of H_k via H_{k+1} = x H_k + (k/2) H_{k-1}.
    std::vector<double> prev{1.0}, cur{0.0, 1.0};
    if (k == 0) cur = prev;
    for (int j = 1; j < k; ++j) {
        std::vector<double> next(j + 2, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] += 0.5 * j * prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    auto horner = [](const std::vector<double>& c, double x) {
        double v = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
        return v;
    };
    auto deriv_coeffs = [](const std::vector<double>& c) {
        std::vector<double> d(c.size() > 1 ? c.size() - 1 : 1, 0.0);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = i * c[i];
        return d;
    };
    std::vector<double> h = cur, hp = deriv_coeffs(cur), hpp = deriv_coeffs(hp);

    // u = H_k e^{x^2/2};  beta = -u'/u = -x - H'/H  (pole at the node of odd H_k).
    BetaFunction b;
    b.epsilon = oscillator_energy(k);
    b.value_fn = [h, hp, horner](double x) { return -x - horner(hp, x) / horner(h, x); };
    b.deriv_fn = [h, hp, hpp, horner](double x) {
        double H = horner(h, x), Hp = horner(hp, x), Hpp = horner(hpp, x);
        return -1.0 - (Hpp * H - Hp * Hp) / (H * H);
    };
    return b;
}

BetaFunction beta_from_seed(const SeedFunction& seed, Ordering ordering) {
    const int n = seed.u.size();
    const double s = (ordering == Ordering::dagger_first) ? -1.0 : +1.0;
    std::vector<double> b(n), bp(n);
    for (int i = 0; i < n; ++i) {
        const double u = seed.u[i];
        if (u == 0.0)
            throw SingularError("beta_from_seed: seed vanishes at node " + std::to_string(i));
        b[i] = s * seed.du[i] / u;
        bp[i] = s * (seed.d2u[i] * u - seed.du[i] * seed.du[i]) / (u * u);
    }
    BetaFunction beta;
    beta.epsilon = seed.epsilon;
    beta.samples = GridFunction(seed.u.grid(), std::move(b));
    beta.deriv_samples = GridFunction(seed.u.grid(), std::move(bp));
    return beta;
}

} // namespace isofactor
