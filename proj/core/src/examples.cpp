#include "nonlocal_evolve/examples.hpp"

#include <cmath>

namespace nlevolve {

SectorOptions reproduction_sector()
{
    SectorOptions s;
    s.phi = 1.11;
    s.margin = 0.95;
    s.rho1_fraction = 0.19;
    return s;
}

namespace {

double sin_pi(double x) { return std::sin(kPi * x); }

Problem example_1(const ExampleOptions& opts)
{
    Problem p;
    p.name = "example-1";
    p.model = std::make_shared<SpectralModeModel>(1, opts.sector);
    p.nonlocal = {{0.5, 0.3}, {0.2, 0.4}, 1.0};
    p.u0 = {symbol_B(p.nonlocal, kPi * kPi)};
    p.exact = [](double x, double t) { return std::exp(-kPi * kPi * t) * sin_pi(x); };
    p.smoothness = 1.0;
    return p;
}

Problem example_2(const ExampleOptions& opts)
{
    Problem p;
    p.name = "example-2";
    auto model = std::make_shared<GreenFunctionModel>(opts.green_quad, opts.sector);
    p.u0 = model->project([](double x) { return x > 0 ? x * std::log(x) : 0.0; });
    p.model = std::move(model);
    p.nonlocal = {{1.0}, {0.5}, 1.0};
    // x ln x lies in D(A^alpha) only for alpha < 1/2
    p.smoothness = 0.45;
    return p;
}

Problem example_3(const ExampleOptions& opts)
{
    Problem p;
    p.name = "example-3";
    p.model = std::make_shared<SpectralModeModel>(1, opts.sector);
    p.nonlocal = {{0.5}, {0.2}, 1.0};
    p.u0 = {Complex(1 + 0.5 * std::exp(0.2))};
    SourceTerm f;
    f.eval = [](double t) { return CVector{Complex((1 + kPi * kPi) * std::exp(t))}; };
    f.smoothness = 1.0;
    p.source = std::move(f);
    p.exact = [](double x, double t) { return std::exp(t) * sin_pi(x); };
    p.smoothness = 1.0;
    return p;
}

}  // namespace

Problem make_example(int id, const ExampleOptions& opts)
{
    switch (id)
    {
    case 1: return example_1(opts);
    case 2: return example_2(opts);
    case 3: return example_3(opts);
    default:
        throw Error(ErrorKind::InvalidArgument, "unknown example " + std::to_string(id));
    }
}

}  // namespace nlevolve
