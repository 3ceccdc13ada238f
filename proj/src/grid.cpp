#include "isofactor/grid.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace isofactor {

Grid::Grid(double x_min_, double x_max_, int n_points_)
    : x_min(x_min_), x_max(x_max_), n_points(n_points_) {
    if (!(x_min < x_max))
        throw DomainError("Grid: x_min must be < x_max");
    if (n_points < 3)
        throw DomainError("Grid: need at least 3 points");
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw DomainError("Grid: non-finite bounds");
}

bool Grid::operator==(const Grid& o) const {
    return x_min == o.x_min && x_max == o.x_max && n_points == o.n_points;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.n_points)
        throw DomainError("GridFunction: value count does not match grid");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw NumericError("GridFunction: non-finite value at node " + std::to_string(i));
    }
}

GridFunction GridFunction::sample(const Grid& g, const std::function<double(double)>& f) {
    std::vector<double> v(g.n_points);
    for (int i = 0; i < g.n_points; ++i)
        v[i] = f(g.node(i));
    return GridFunction(g, std::move(v));
}

GridFunction GridFunction::zero(const Grid& g) {
    return GridFunction(g, std::vector<double>(g.n_points, 0.0));
}

void require_same_grid(const GridFunction& f, const GridFunction& g) {
    if (f.grid() != g.grid())
        throw DomainError("grid mismatch between grid functions");
}

GridFunction derivative(const GridFunction& f) {
    const int n = f.size();
    const double h = f.spacing();
    std::vector<double> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (int i = 1; i < n - 1; ++i)
        d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return GridFunction(f.grid(), std::move(d));
}

double integral(const GridFunction& f) {
    const int n = f.size();
    const double h = f.spacing();
    const int intervals = n - 1;
    if (intervals % 2 == 0) {
        double odd = 0.0, even = 0.0;
        for (int i = 1; i < n - 1; i += 2) odd += f[i];
        for (int i = 2; i < n - 1; i += 2) even += f[i];
        return h / 3.0 * (f[0] + f[n - 1] + 4.0 * odd + 2.0 * even);
    }
    double s = 0.5 * (f[0] + f[n - 1]);
    for (int i = 1; i < n - 1; ++i) s += f[i];
    return s * h;
}

GridFunction cumulative_integral(const GridFunction& f, double anchor) {
    const Grid& g = f.grid();
    if (anchor < g.x_min - 1e-12 * (g.x_max - g.x_min) ||
        anchor > g.x_max + 1e-12 * (g.x_max - g.x_min))
        throw DomainError("cumulative_integral: anchor outside grid");

    const int n = f.size();
    const double h = f.spacing();
    std::vector<double> F(n);
    F[0] = 0.0;
    for (int i = 1; i < n; ++i)
        F[i] = F[i - 1] + 0.5 * h * (f[i - 1] + f[i]);

    // Shift so that F(anchor) = 0, interpolating the prefix when the anchor
    // falls between nodes.
    double t = (anchor - g.x_min) / h;
    int j = std::clamp(static_cast<int>(std::floor(t)), 0, n - 2);
    double dx = anchor - g.node(j);
    double f_at = f[j] + (f[j + 1] - f[j]) * (dx / h);
    double F_anchor = F[j] + 0.5 * dx * (f[j] + f_at);

    for (int i = 0; i < n; ++i) F[i] -= F_anchor;
    return GridFunction(g, std::move(F));
}

double inner_product(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    return integral(multiply(f, g));
}

double l2_norm(const GridFunction& f) {
    return std::sqrt(inner_product(f, f));
}

double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::fabs(v));
    return m;
}

GridFunction normalized(const GridFunction& f) {
    double nrm = l2_norm(f);
    if (nrm == 0.0)
        throw NumericError("normalized: zero function");
    return (1.0 / nrm) * f;
}

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    std::vector<double> v(f.size());
    for (int i = 0; i < f.size(); ++i) v[i] = f[i] + g[i];
    return GridFunction(f.grid(), std::move(v));
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    std::vector<double> v(f.size());
    for (int i = 0; i < f.size(); ++i) v[i] = f[i] - g[i];
    return GridFunction(f.grid(), std::move(v));
}

GridFunction operator*(double a, const GridFunction& f) {
    std::vector<double> v(f.size());
    for (int i = 0; i < f.size(); ++i) v[i] = a * f[i];
    return GridFunction(f.grid(), std::move(v));
}

GridFunction multiply(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    std::vector<double> v(f.size());
    for (int i = 0; i < f.size(); ++i) v[i] = f[i] * g[i];
    return GridFunction(f.grid(), std::move(v));
}

} // namespace isofactor
