#pragma once

#include "contour.hpp"
#include "types.hpp"

#include <vector>

namespace nlevolve {

/// Coefficients and points of u(0) + sum_k alpha_k u(t_k) = u0.
struct NonlocalSpec {
    std::vector<double> alphas;
    std::vector<double> times;
    double horizon = 1.0;

    std::size_t size() const { return alphas.size(); }
    void validate() const;
};

enum class Solvability { UM1, UM2, Unknown };

std::string_view to_string(Solvability verdict);

/// UM1: sum |alpha| < 1.  UM2: sum |alpha| exp(-rho0 t) < 1.
Solvability check_solvability(const NonlocalSpec& nl,
                              const SpectralCharacteristics& spec);

/// B(z) = 1 + sum_k alpha_k exp(-z t_k)
Complex symbol_B(const NonlocalSpec& nl, Complex z);

/// Terms |alpha_k| exp(-rho1 t_k) entering the Q bound.
std::vector<double> q_bound_terms(const NonlocalSpec& nl,
                                  const SpectralCharacteristics& spec);

/// Q = (1 - sum_k |alpha_k| exp(-rho1 t_k))^{-1}, so that |B| >= 1/Q on
/// every hyperbola with real semi-axis >= rho1.  Throws ContourUnsafe,
/// naming the dominating t_k, when the sum reaches 1.
double q_bound(const NonlocalSpec& nl, const SpectralCharacteristics& spec);

}  // namespace nlevolve
