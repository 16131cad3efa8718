#pragma once

// Internal helpers shared by the Sinc/tanh quadratures.

#include <cmath>
#include <vector>

namespace nlevolve::detail {

/// Point of the tanh rule on [a, b]: s = a + from_a = b - to_b.
struct TanhPoint {
    double from_a;
    double to_b;
    double weight;
};

/// 1 / (2 cosh^2 x) without overflow.
inline double half_sech2(double x)
{
    double const e = std::exp(-2 * std::abs(x));
    return 2 * e / ((1 + e) * (1 + e));
}

/// (1 + tanh x) / 2 and (1 - tanh x) / 2 without cancellation.
inline double logistic_plus(double x) { return 1 / (1 + std::exp(-2 * x)); }
inline double logistic_minus(double x) { return 1 / (1 + std::exp(2 * x)); }

/// Nodes of int_a^b g(s) ds = int_R g(s(tau)) (b - a) / (2 cosh^2 tau) dtau
/// with s = a + (b - a)(1 + tanh tau)/2, tau = p h, p = -n..n.
inline std::vector<TanhPoint> tanh_rule(double a, double b, int n, double h)
{
    std::vector<TanhPoint> pts;
    pts.reserve(static_cast<std::size_t>(2 * n + 1));
    double const len = b - a;
    for (int p = -n; p <= n; ++p)
    {
        double const tau = p * h;
        pts.push_back({len * logistic_plus(tau), len * logistic_minus(tau),
                       h * len * half_sech2(tau)});
    }
    return pts;
}

/// Step balancing discretization against truncation for integrands that
/// decay like exp(-2|tau|) and are analytic in |Im tau| < pi/2.
inline double tanh_rule_step(int n) { return std::acos(-1.0) / (2 * std::sqrt(double(n))); }

}  // namespace nlevolve::detail
