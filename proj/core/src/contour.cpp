#include "nonlocal_evolve/contour.hpp"

#include <cmath>
#include <sstream>

namespace nlevolve {

std::string_view to_string(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::InvalidCharacteristics: return "invalid-characteristics";
        case ErrorKind::ContourUnsafe: return "contour-unsafe";
        case ErrorKind::SingularResolvent: return "singular-resolvent";
        case ErrorKind::Unsolvable: return "solvability-unknown";
        case ErrorKind::OracleFailure: return "oracle-failure";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

double symmetry_residual(std::span<const Complex> v)
{
    double re = 0, im = 0;
    for (auto const& c : v)
    {
        re = std::max(re, std::abs(c.real()));
        im = std::max(im, std::abs(c.imag()));
    }
    return im / (1 + re);
}

RVector real_part(std::span<const Complex> v, double tolerance)
{
    double const residual = symmetry_residual(v);
    if (!(residual <= tolerance))
    {
        std::ostringstream os;
        os << "imaginary residual " << residual << " exceeds " << tolerance;
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
    RVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i].real();
    return out;
}

namespace {

// arccos with the argument clamped to [-1, 1] (rounding may overshoot).
double safe_acos(double x)
{
    constexpr double slack = 1e-15;
    if (x > 1 && x <= 1 + slack)
        x = 1;
    if (x < -1 && x >= -1 - slack)
        x = -1;
    return std::acos(x);
}

}  // namespace

SpectralCharacteristics SpectralCharacteristics::make(double rho0, double phi,
                                                      std::optional<double> rho1,
                                                      double M)
{
    SpectralCharacteristics s;
    s.rho0 = rho0;
    s.phi = phi;
    s.M = M;
    s.rho1 = rho1.value_or(rho0 / 2);
    s.validate();
    return s;
}

double SpectralCharacteristics::b0() const { return rho0 * std::tan(phi); }

double SpectralCharacteristics::radius() const { return std::hypot(rho0, b0()); }

void SpectralCharacteristics::validate() const
{
    auto fail = [](std::string const& what) {
        throw Error(ErrorKind::InvalidCharacteristics, what);
    };
    if (!(rho0 > 0) || !std::isfinite(rho0))
        fail("rho0 must be positive and finite");
    if (!(phi > 0 && phi < kPi / 2))
        fail("phi must lie in (0, pi/2)");
    if (!(M >= 1))
        fail("resolvent constant M must be >= 1");
    if (!(rho1 >= 0))
        fail("rho1 must be non-negative");
    if (!(rho1 < rho0))
        fail("rho1 must be smaller than rho0");
    if (!std::isfinite(b0()) || !(b0() > 0))
        fail("b0 = rho0 tan(phi) must be finite and positive");
}

double strip_height(const SpectralCharacteristics& spec)
{
    spec.validate();
    return safe_acos(spec.rho1 / spec.radius()) - spec.phi;
}

Hyperbola integration_hyperbola(const SpectralCharacteristics& spec)
{
    double const d1 = strip_height(spec);
    double const r = spec.radius();
    return {r * std::cos(d1 / 2 + spec.phi), r * std::sin(d1 / 2 + spec.phi)};
}

HyperbolaAxes family_axes(const SpectralCharacteristics& spec, double nu)
{
    double const d1 = strip_height(spec);
    // Allow the endpoints themselves through rounding.
    if (!(std::abs(nu) <= d1 / 2 * (1 + 1e-14)))
    {
        std::ostringstream os;
        os << "nu = " << nu << " outside the strip |nu| <= d1/2 = " << d1 / 2;
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
    double const r = spec.radius();
    double const angle = d1 / 2 + spec.phi - nu;
    return {r * std::cos(angle), r * std::sin(angle)};
}

ContourPoint hyperbola_eval(const Hyperbola& h, double xi)
{
    double const ax = std::abs(xi);
    double const c = std::cosh(ax);
    double s = std::sinh(ax);
    if (xi < 0)
        s = -s;
    return {Complex(h.a * c, -h.b * s), Complex(h.a * s, -h.b * c)};
}

ContourPoint Hyperbola::at(double xi) const { return hyperbola_eval(*this, xi); }

}  // namespace nlevolve
