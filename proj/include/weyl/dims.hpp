#pragma once

#include <optional>
#include <utility>

namespace weyl::dims {

// i / (2(1 - alpha)) - 1.
double theta(int i, double alpha);

// min_j (d+1 + j theta_j - sum_{i<=j} theta_i) / (1 + theta_j) on [1/2, 1]; the
// value at alpha = 1 is the limit 0.
double s_dim(int d, double alpha);

// min_k ((2d^2+4d)(1-alpha) + k(k+1)) / (4 - 2 alpha + 2k) on [1/2, 1].
double u_dim(int d, double alpha);

// min_j (2(d+1) + j^2 - j) / (2j).
double s_half(int d);

// Closed forms for d = 2.
double s2_piecewise(double alpha);
double u2_piecewise(double alpha);

double monomial_conj_dim(int d, double alpha);

// 2 / kappa.
double jb_dim(double kappa);

struct TheoremBounds {
    std::optional<double> general;    // 1 - 1/(2 gamma), gamma > 2
    std::optional<double> quadratic;  // 1 - 1/gamma, gamma > 1
};

TheoremBounds theorem_bounds(double gamma);

long long mean_value_exponent(int d);

// True when alpha sits on the closed endpoint 1/2 outside the open range.
bool at_half_endpoint(double alpha);

}  // namespace weyl::dims
