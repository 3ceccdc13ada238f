#pragma once

#include "isofactor/errors.hpp"

namespace isofactor {

struct HypergeometricParams {
    double a;
    double b;
    double z;
};

// Confluent hypergeometric 1F1(a, b; z).
//
// Terminating series when a is a non-positive integer (the only case where a
// non-positive-integer b is accepted, with 0 >= a > b). For z < 0 the Kummer
// transformation 1F1(a,b,z) = e^z 1F1(b-a,b,-z) keeps the series
// cancellation-free.
double kummer_1f1(const HypergeometricParams& p);
inline double kummer_1f1(double a, double b, double z) { return kummer_1f1({a, b, z}); }

// d/dz 1F1(a,b,z) = (a/b) 1F1(a+1,b+1,z); zero coefficient short-circuited so
// terminating parameter sets never reach an invalid (a+1, b+1) pair.
double kummer_1f1_deriv(double a, double b, double z);

// d^2/dz^2 1F1(a,b,z).
double kummer_1f1_deriv2(double a, double b, double z);

// Pochhammer product (z)(z+1)...(z+m-1); m = 0 gives 1.
double pochhammer(double z, int m);

// Gamma(z)/Gamma(z+m) = 1/pochhammer(z, m). Never evaluates Gamma itself, so
// ratios pinned at negative-integer arguments stay finite.
double gamma_ratio(double z, int m);

bool is_nonpositive_integer(double x);

} // namespace isofactor
