#include "weyl/dims.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weyl/error.hpp"

namespace weyl::dims {

namespace {

void check_alpha(double alpha) {
    require(std::isfinite(alpha) && alpha >= 0.5 && alpha <= 1.0, "alpha must lie in [1/2, 1]");
}

}  // namespace

double theta(int i, double alpha) {
    require(std::isfinite(alpha) && alpha < 1.0, "theta needs alpha < 1");
    require(alpha > 0.0, "theta needs alpha > 0");
    require(i >= 1, "theta index must be >= 1");
    return static_cast<double>(i) / (2.0 * (1.0 - alpha)) - 1.0;
}

double s_dim(int d, double alpha) {
    require(d >= 2, "s_dim needs d >= 2");
    check_alpha(alpha);
    if (alpha == 1.0) return 0.0;
    double total = 0.0;
    for (int i = 1; i <= d; ++i) total += theta(i, alpha);
    require(total >= 1.0 - 1e-12, "s_dim needs sum of theta_i >= 1");
    double best = std::numeric_limits<double>::infinity(), prefix = 0.0;
    for (int j = 1; j <= d; ++j) {
        double tj = theta(j, alpha);
        prefix += tj;
        best = std::min(best, (d + 1 + j * tj - prefix) / (1.0 + tj));
    }
    return best;
}

double u_dim(int d, double alpha) {
    require(d >= 1, "u_dim needs d >= 1");
    check_alpha(alpha);
    double best = std::numeric_limits<double>::infinity();
    double a = (2.0 * d * d + 4.0 * d) * (1.0 - alpha);
    for (int k = 0; k < d; ++k) best = std::min(best, (a + k * (k + 1.0)) / (4.0 - 2.0 * alpha + 2.0 * k));
    return best;
}

double s_half(int d) {
    require(d >= 2, "s_half needs d >= 2");
    double best = std::numeric_limits<double>::infinity();
    for (long long j = 1; j <= d; ++j)
        best = std::min(best, (2.0 * (d + 1) + static_cast<double>(j * j - j)) / (2.0 * static_cast<double>(j)));
    return best;
}

double s2_piecewise(double alpha) {
    check_alpha(alpha);
    return alpha <= 5.0 / 6.0 ? (7.0 - 6.0 * alpha) / 2.0 : 6.0 * (1.0 - alpha);
}

double u2_piecewise(double alpha) {
    check_alpha(alpha);
    return alpha <= 6.0 / 7.0 ? (9.0 - 8.0 * alpha) / (3.0 - alpha) : 8.0 * (1.0 - alpha) / (2.0 - alpha);
}

double monomial_conj_dim(int d, double alpha) {
    require(d >= 1, "degree must be >= 1");
    require(std::isfinite(alpha), "alpha must be finite");
    return 4.0 * (1.0 - alpha) / d;
}

double jb_dim(double kappa) {
    require(std::isfinite(kappa) && kappa >= 2.0, "jb_dim needs kappa >= 2");
    return 2.0 / kappa;
}

TheoremBounds theorem_bounds(double gamma) {
    TheoremBounds b;
    if (gamma > 2.0) b.general = 1.0 - 1.0 / (2.0 * gamma);
    if (gamma > 1.0) b.quadratic = 1.0 - 1.0 / gamma;
    return b;
}

long long mean_value_exponent(int d) {
    require(d >= 1, "degree must be >= 1");
    return static_cast<long long>(d) * (d + 1) / 2;
}

bool at_half_endpoint(double alpha) { return alpha == 0.5; }

}  // namespace weyl::dims
