#pragma once

#include <functional>
#include <vector>

#include "isofactor/errors.hpp"

namespace isofactor {

// Uniform 1D mesh in the dimensionless coordinate.
struct Grid {
    double x_min;
    double x_max;
    int n_points;

    Grid(double x_min_, double x_max_, int n_points_);

    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    double node(int i) const { return x_min + i * spacing(); }

    bool operator==(const Grid& o) const;
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

// Real-valued samples on a Grid. Immutable value type: every operation below
// returns a fresh function, nothing mutates shared state.
class GridFunction {
public:
    GridFunction(Grid grid, std::vector<double> values);

    static GridFunction sample(const Grid& g, const std::function<double(double)>& f);
    static GridFunction zero(const Grid& g);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](int i) const { return values_[i]; }
    int size() const { return static_cast<int>(values_.size()); }
    double spacing() const { return grid_.spacing(); }

private:
    Grid grid_;
    std::vector<double> values_;
};

void require_same_grid(const GridFunction& f, const GridFunction& g);

// Second-order differences: central on the interior, one-sided at the ends.
GridFunction derivative(const GridFunction& f);

// Composite Simpson when the interval count is even, trapezoid otherwise.
double integral(const GridFunction& f);

// F(x) = int_anchor^x f, by trapezoid prefix sums; F(anchor) = 0 with linear
// interpolation when the anchor falls between nodes.
GridFunction cumulative_integral(const GridFunction& f, double anchor);

double inner_product(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);
double max_abs(const GridFunction& f);
GridFunction normalized(const GridFunction& f);

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator-(const GridFunction& f, const GridFunction& g);
GridFunction operator*(double a, const GridFunction& f);
GridFunction multiply(const GridFunction& f, const GridFunction& g);

} // namespace isofactor
