#pragma once

#include "operators.hpp"
#include "solver_inhom.hpp"
#include "symbol.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace nlevolve {

/// A fully specified nonlocal problem on (0,1).
struct Problem {
    std::string name;
    std::shared_ptr<const DirichletModel> model;
    NonlocalSpec nonlocal;
    CVector u0;
    std::optional<SourceTerm> source;
    /// Exact u(x, t) when known.
    std::function<double(double, double)> exact;
    /// Smoothness exponent alpha of u0.
    double smoothness = 0.5;
};

/// Sector used for the reference convergence studies.  The reference data
/// do not state a contour; phi = 1.11 and rho1 = 0.19 rho0 reproduce the
/// reported decay of both the homogeneous and the inhomogeneous example.
SectorOptions reproduction_sector();

struct ExampleOptions {
    SectorOptions sector = reproduction_sector();
    /// Per-side quadrature nodes of the Green's-function model (example 2).
    std::size_t green_quad = 32;
};

/// 1: u0 = B(pi^2) sin(pi x), alpha = {0.5, 0.3}, t = {0.2, 0.4}, f = 0.
/// 2: u0 = x ln x, alpha = {1}, t = {0.5}, f = 0, Green's-function model.
/// 3: u0 = (1 + 0.5 e^0.2) sin(pi x), alpha = {0.5}, t = {0.2},
///    f = (1 + pi^2) e^t sin(pi x).
Problem make_example(int id, const ExampleOptions& opts = {});

// Reference values at x = 0.5, t = 0.3.
inline constexpr std::array<int, 8> kReferenceN = {4, 8, 16, 32, 64, 128, 256, 512};
inline constexpr std::array<double, 8> kExample1ReferenceErrors = {
    .29857983847712589e-1, .41823888073604986e-2, .11258594468208641e-2,
    .10042178166563831e-3, .28007158539828452e-5, .2098826601399176e-7,
    .1858929920173152e-10, .856837124351510e-15};
inline constexpr std::array<double, 7> kExample1ReferenceRates = {
    2.372652515388745588587496, 1.120148732795449515627946,
    1.458741976765153165445005, 1.527648924601130131250452,
    1.476794596387591759032900, 1.499935011373075736075927,
    1.506597339081609844717370};
inline constexpr std::array<double, 7> kExample2ReferenceValues = {
    -.241535790017043e-1, -.228401191029108e-1, -.194273285627507e-1,
    -.192905848633180e-1, -.192911920318628e-1, -.192907849909929e-1,
    -.192907820740651e-1};
inline constexpr std::array<double, 8> kExample3ReferenceErrors = {
    .202211483120243,     .726677678737409e-1, .138993889900620e-1,
    .143037059411419e-2,  .554542099757830e-4, .532640823981411e-6,
    .730569324317506e-9,  .648376079810788e-13};

}  // namespace nlevolve
