#pragma once

#include "types.hpp"

#include <optional>

namespace nlevolve {

/// Sector of the operator spectrum: vertex abscissa `rho0`, half-angle
/// `phi`, resolvent constant `M` and the contour shift `rho1` that fixes
/// where the leftmost member of the hyperbola family crosses the real axis.
struct SpectralCharacteristics {
    double rho0 = 1.0;
    double phi = kPi / 6;
    double M = 1.0;
    double rho1 = 0.5;

    /// rho1 defaults to rho0 / 2.
    static SpectralCharacteristics make(double rho0, double phi,
                                        std::optional<double> rho1 = {},
                                        double M = 1.0);

    double b0() const;
    /// sqrt(rho0^2 + b0^2)
    double radius() const;
    /// Throws ErrorKind::InvalidCharacteristics.
    void validate() const;
};

struct ContourPoint {
    Complex z;
    Complex dz;
};

/// z(xi) = a cosh(xi) - i b sinh(xi)
struct Hyperbola {
    double a = 1.0;
    double b = 1.0;

    ContourPoint at(double xi) const;
};

struct HyperbolaAxes {
    double a;
    double b;
};

/// Height d1 of the analyticity strip |Im w| < d1/2 of the parametrized
/// integrand.
double strip_height(const SpectralCharacteristics& spec);

Hyperbola integration_hyperbola(const SpectralCharacteristics& spec);

/// Axes of the hyperbola obtained by shifting the parameter by i*nu.
/// nu = d1/2 gives the spectral hyperbola, nu = -d1/2 the one through rho1.
HyperbolaAxes family_axes(const SpectralCharacteristics& spec, double nu);

/// cosh/sinh are evaluated on |xi| so z(-xi) == conj(z(xi)) bit for bit.
ContourPoint hyperbola_eval(const Hyperbola& h, double xi);

}  // namespace nlevolve
