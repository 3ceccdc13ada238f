#include "isofactor/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace isofactor {

GridFunction apply_annihilation(const BetaFunction& beta, const GridFunction& f) {
    GridFunction b = beta.values_on(f.grid());
    GridFunction df = derivative(f);
    std::vector<double> out(f.size());
    for (int i = 0; i < f.size(); ++i)
        out[i] = df[i] + b[i] * f[i];
    return GridFunction(f.grid(), std::move(out));
}

GridFunction apply_creation(const BetaFunction& beta, const GridFunction& f) {
    GridFunction b = beta.values_on(f.grid());
    GridFunction df = derivative(f);
    std::vector<double> out(f.size());
    for (int i = 0; i < f.size(); ++i)
        out[i] = -df[i] + b[i] * f[i];
    return GridFunction(f.grid(), std::move(out));
}

bool decaying_tails(const GridFunction& psi) {
    const int n = psi.size();
    const double peak = max_abs(psi);
    if (peak == 0.0)
        return true;
    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (std::fabs(psi[i]) > std::fabs(psi[imax]))
            imax = i;
    // Clamp the monotone window at the global peak so interior maxima close to
    // one edge do not masquerade as a growing tail.
    const int tail_l = std::min(std::max(2, n / 50), std::max(2, imax));
    const int tail_r = std::min(std::max(2, n / 50), std::max(2, n - 1 - imax));
    auto end_ok = [&](int from, int to, int step) {
        double prev = std::fabs(psi[from]);
        for (int i = from + step; i != to + step; i += step) {
            double cur = std::fabs(psi[i]);
            if (cur > prev * (1.0 + 1e-9) + 1e-14 * peak)
                return false;
            prev = cur;
        }
        // 5e-2: radial kernels ~ r^l still carry a few percent of the peak at
        // the inner truncation radius.
        return std::fabs(psi[to]) < 5e-2 * peak;
    };
    return end_ok(n - 1 - tail_r, n - 1, +1) && end_ok(tail_l, 0, -1);
}

NullState null_state(const BetaFunction& beta, KernelKind which, const Grid& grid) {
    GridFunction B = beta.antiderivative_on(grid);
    const double s = (which == KernelKind::annihilation_kernel) ? -1.0 : +1.0;
    double mx = s * B[0];
    for (int i = 0; i < grid.n_points; ++i) mx = std::max(mx, s * B[i]);
    std::vector<double> v(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i)
        v[i] = std::exp(s * B[i] - mx);
    GridFunction psi(grid, std::move(v));
    return NullState{psi, decaying_tails(psi)};
}

LadderResult hydrogen_ladder(const LadderContext& ctx, const GridFunction& psi) {
    if (ctx.l < 1 && ctx.direction == LadderContext::Direction::lower_l)
        throw DomainError("hydrogen_ladder: lowering requires l >= 1");
    GridFunction out = [&] {
        if (ctx.direction == LadderContext::Direction::lower_l) {
            BetaFunction b = particular_beta(PotentialSpec::hydrogen(ctx.l));
            return apply_annihilation(b, psi);
        }
        BetaFunction b = particular_beta(PotentialSpec::hydrogen(ctx.l + 1));
        return apply_creation(b, psi);
    }();
    const double ratio = l2_norm(out) / l2_norm(psi);
    if (ratio < 1e-6)
        return LadderResult{out, true};
    return LadderResult{normalized(out), false};
}

} // namespace isofactor
