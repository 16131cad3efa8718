#pragma once

// Shared fixtures for the test suite.

#include <nonlocal_evolve/oracle.hpp>
#include <nonlocal_evolve/operators.hpp>

#include <array>
#include <cmath>
#include <random>

namespace nlevolve::test {

inline double max_diff(std::span<const Complex> a, std::span<const Complex> b)
{
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_diff(std::span<const Complex> a, std::span<const double> b)
{
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline CVector random_vector(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> u(-1, 1);
    CVector v(n);
    for (auto& c : v)
        c = Complex(u(rng), u(rng));
    return v;
}

// Green vectors are samples of a function, so their test inputs are random
// smooth functions; the matrix models take arbitrary vectors.
inline CVector test_vector(std::mt19937_64& rng, const OperatorModel& m)
{
    auto const* green = dynamic_cast<const GreenFunctionModel*>(&m);
    if (!green)
        return random_vector(rng, m.dim());
    std::uniform_real_distribution<double> u(-1, 1);
    std::array<double, 6> c{};
    for (double& ck : c)
        ck = u(rng);
    return green->project([&](double x) {
        double s = c[5] * x * (1 - x) * std::exp(x);
        for (int k = 0; k < 5; ++k)
            s += c[std::size_t(k)] * std::sin((k + 1) * kPi * x);
        return s;
    });
}

inline oracle::DenseMatrix dense_of(const FdLaplacianModel& m)
{
    return {m.dim(), m.dense_matrix()};
}

/// The 8x8 finite-difference problem with two nonlocal points.
struct FdCase {
    FdLaplacianModel model{8};
    NonlocalSpec nl{{0.5, 0.3}, {0.2, 0.4}, 1.0};
    RVector u0;
    RVector w;

    FdCase()
    {
        for (std::size_t j = 0; j < model.dim(); ++j)
        {
            double const x = model.grid_point(j);
            u0.push_back(std::sin(kPi * x) + 0.3 * std::sin(3 * kPi * x) + 0.1 * x * (1 - x));
            w.push_back(std::cos(2 * x));
        }
    }

    oracle::RealSource source() const
    {
        RVector const ww = w;
        return [ww](double t) {
            RVector v = ww;
            for (auto& c : v)
                c *= std::exp(-t);
            return v;
        };
    }
};

}  // namespace nlevolve::test
