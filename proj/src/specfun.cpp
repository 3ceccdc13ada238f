#include "isofactor/specfun.hpp"

#include <cmath>
#include <string>

namespace isofactor {

namespace {

constexpr int kSeriesCap = 500;
constexpr double kTailStop = 1e-16;
constexpr double kIntegerTol = 1e-12;

// Plain power series sum_{n} (a)_n / (b)_n z^n / n!, assumed safe (no
// denominator zero before termination / convergence).
double series_1f1(double a, double b, double z, int terms /* <0: until converged */) {
    double term = 1.0;
    double sum = 1.0;
    int cap = terms >= 0 ? terms : kSeriesCap;
    for (int n = 0; n < cap; ++n) {
        term *= (a + n) * z / ((b + n) * (n + 1));
        sum += term;
        if (terms < 0 && std::fabs(term) <= kTailStop * std::fabs(sum))
            return sum;
    }
    if (terms < 0)
        throw NumericError("kummer_1f1: series did not converge within " +
                           std::to_string(kSeriesCap) + " terms");
    return sum;
}

} // namespace

bool is_nonpositive_integer(double x) {
    return x <= kIntegerTol && std::fabs(x - std::round(x)) < kIntegerTol;
}

double kummer_1f1(const HypergeometricParams& p) {
    const double a = p.a, b = p.b, z = p.z;
    const bool a_term = is_nonpositive_integer(a);
    if (is_nonpositive_integer(b)) {
        // Only a terminating numerator that ends before the denominator pole
        // is meaningful here.
        if (!a_term || std::round(a) <= std::round(b))
            throw DomainError("kummer_1f1: b is a non-positive integer and the series does "
                              "not terminate before the pole");
    }
    if (z == 0.0)
        return 1.0;
    if (a_term) {
        int terms = static_cast<int>(-std::round(a));
        return series_1f1(std::round(a), b, z, terms);
    }
    if (z < 0.0)
        return std::exp(z) * series_1f1(b - a, b, -z, -1);
    return series_1f1(a, b, z, -1);
}

double kummer_1f1_deriv(double a, double b, double z) {
    if (a == 0.0)
        return 0.0;
    return (a / b) * kummer_1f1(a + 1.0, b + 1.0, z);
}

double kummer_1f1_deriv2(double a, double b, double z) {
    if (a == 0.0 || a == -1.0)
        return 0.0;
    return (a * (a + 1.0)) / (b * (b + 1.0)) * kummer_1f1(a + 2.0, b + 2.0, z);
}

double pochhammer(double z, int m) {
    if (m < 0)
        throw DomainError("pochhammer: negative order");
    double p = 1.0;
    for (int j = 0; j < m; ++j)
        p *= z + j;
    return p;
}

double gamma_ratio(double z, int m) {
    if (m < 0)
        throw DomainError("gamma_ratio: negative order");
    for (int j = 0; j < m; ++j) {
        if (std::fabs(z + j) < kIntegerTol)
            throw DomainError("gamma_ratio: factor z+" + std::to_string(j) +
                              " vanishes (Gamma pole)");
    }
    return 1.0 / pochhammer(z, m);
}

} // namespace isofactor
