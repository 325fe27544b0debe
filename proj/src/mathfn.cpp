#include "fuzzyvis/mathfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kEps = 1e-16;
constexpr int kMaxTerms = 500;

// Lentz continued fraction for Gamma(s, x); requires x reasonably larger
// than s for fast convergence.
double gamma_cf(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / 1e-300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxTerms; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) return std::exp(-x + s * std::log(x)) * h;
    }
    throw NumericalError("upper_incomplete_gamma: continued fraction did not converge");
}

// Series for the lower incomplete gamma, used as Gamma(s) - gamma(s, x).
double gamma_series_upper(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int k = 1; k <= kMaxTerms; ++k) {
        term *= x / (s + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps)
            return std::tgamma(s) - sum * std::exp(-x + s * std::log(x));
    }
    throw NumericalError("upper_incomplete_gamma: series did not converge");
}

}  // namespace

double exp_integral_e1(double x) {
    if (x <= 0.0) throw ArgumentError("exp_integral_e1: x must be > 0");
    if (x <= 1.5) {
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k <= kMaxTerms; ++k) {
            term *= -x / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < std::abs(sum) * kEps + 1e-300)
                return sum - kEulerGamma - std::log(x);
        }
        throw NumericalError("exp_integral_e1: series did not converge");
    }
    return gamma_cf(0.0, x);
}

double upper_incomplete_gamma(double s, double x) {
    if (x <= 0.0) throw ArgumentError("upper_incomplete_gamma: x must be > 0");
    if (s == 0.0) return exp_integral_e1(x);
    if (s > 0.0) {
        if (x > s + 1.0) return gamma_cf(s, x);
        return gamma_series_upper(s, x);
    }
    // s < 0: climb to a base in [0, 1) and recurse back down with
    //   Gamma(s, x) = (Gamma(s+1, x) - x^s e^-x) / s.
    const int m = static_cast<int>(std::ceil(-s));
    const double s0 = s + m;
    double value = (s0 == 0.0) ? exp_integral_e1(x)
                               : (x > s0 + 1.0 ? gamma_cf(s0, x) : gamma_series_upper(s0, x));
    for (int j = 1; j <= m; ++j) {
        const double sj = s0 - j;
        value = (value - std::exp(-x + sj * std::log(x))) / sj;
    }
    return value;
}

double unit_ball_volume(int d) {
    if (d < 1) throw ArgumentError("unit_ball_volume: d must be >= 1");
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

}  // namespace fuzzyvis
