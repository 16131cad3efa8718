#include "support.hpp"

#include <nonlocal_evolve/contour.hpp>
#include <nonlocal_evolve/examples.hpp>
#include <nonlocal_evolve/tridiagonal.hpp>

#include <Eigen/Dense>
#include <doctest.h>

using namespace nlevolve;
using namespace nlevolve::test;

namespace {

const double pi2 = kPi * kPi;

CVector dense_solve(const std::vector<double>& a, std::size_t n, Complex z, const CVector& v)
{
    Eigen::MatrixXcd m(n, n);
    Eigen::VectorXcd rhs(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        rhs(i) = v[i];
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = (i == j ? z : Complex(0.0)) - a[i * n + j];
    }
    Eigen::VectorXcd x = m.fullPivLu().solve(rhs);
    return CVector(x.data(), x.data() + n);
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.kind();
    }
    return ErrorKind::Io;
}

}  // namespace

TEST_CASE("spectral mode model")
{
    SpectralModeModel const m(1);
    CVector const v{1.0};
    CHECK(std::abs(m.resolvent_apply(0.0, v)[0] + 1 / pi2) <= 1e-17);
    CHECK(std::abs(m.resolvent_apply(2 * pi2, v)[0] - 1 / pi2) <= 1e-17);
    CHECK(m.spectral().rho0 == doctest::Approx(0.95 * pi2));
    CHECK(m.spectral().phi == doctest::Approx(kPi / 6));
    CHECK(m.spectral().rho1 == doctest::Approx(0.475 * pi2));
    CHECK(kind_of([&] { m.resolvent_apply(pi2, v); }) == ErrorKind::SingularResolvent);

    SpectralModeModel const m5(5);
    auto const c = m5.project([](double x) { return std::sin(3 * kPi * x) - 0.5 * std::sin(kPi * x); });
    CHECK(std::abs(c[0] + 0.5) <= 1e-14);
    CHECK(std::abs(c[2] - 1.0) <= 1e-14);
    CHECK(std::abs(c[1]) <= 1e-14);
    CHECK(std::abs(m5.evaluate(c, 0.25) - (std::sin(0.75 * kPi) - 0.5 * std::sin(0.25 * kPi))) <= 1e-14);

    Complex const z(3, -40);
    auto const r = m5.resolvent_apply(z, c);
    CHECK(std::abs(r[2] - 1.0 / (z - 9 * pi2)) <= 1e-16);
}

TEST_CASE("finite-difference model")
{
    FdLaplacianModel const one(1);
    CHECK(one.dense_matrix()[0] == 8.0);
    Complex const z(-1, 3);
    CHECK(std::abs(one.resolvent_apply(z, CVector{2.0})[0] - 2.0 / (z - 8.0)) <= 1e-16);

    CHECK(FdLaplacianModel::lambda_min(100) == doctest::Approx(9.868808678859499).epsilon(1e-14));
    CHECK(FdLaplacianModel::lambda_min(4000) == doctest::Approx(pi2).epsilon(1e-6));

    std::mt19937_64 rng(11);
    FdLaplacianModel const m(8);
    auto const v = random_vector(rng, 8);
    auto const r = m.resolvent_apply(z, v);
    auto const ref = dense_solve(m.dense_matrix(), 8, z, v);
    CHECK(max_diff(r, ref) <= 1e-12 * norm_inf(ref));

    // evaluation interpolates between grid values and vanishes on the boundary
    CVector const g = m.project([](double x) { return x; });
    CHECK(std::abs(m.evaluate(g, 0.0)) == 0.0);
    CHECK(std::abs(m.evaluate(g, 4.0 / 9)) == doctest::Approx(4.0 / 9));
    CHECK(std::abs(m.evaluate(g, 0.5) - 0.5) <= 1e-15);
}

TEST_CASE("tridiagonal solve against a dense factorization")
{
    std::mt19937_64 rng(3);
    for (std::size_t n : {1u, 2u, 3u, 17u, 64u})
    {
        auto const sub = random_vector(rng, n - 1);
        auto const sup = random_vector(rng, n - 1);
        auto diag = random_vector(rng, n);
        auto const rhs = random_vector(rng, n);
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
        for (std::size_t i = 0; i < n; ++i)
        {
            a(i, i) = diag[i];
            if (i + 1 < n)
            {
                a(i + 1, i) = sub[i];
                a(i, i + 1) = sup[i];
            }
        }
        Eigen::VectorXcd b(n);
        for (std::size_t i = 0; i < n; ++i)
            b(i) = rhs[i];
        Eigen::VectorXcd ref = a.fullPivLu().solve(b);
        auto const x = solve_tridiagonal(sub, diag, sup, rhs);
        CVector const refv(ref.data(), ref.data() + n);
        CHECK(max_diff(x, refv) <= 1e-11 * (1 + norm_inf(refv)));
    }
    CVector const zero{0.0, 0.0};
    CHECK(kind_of([&] { solve_tridiagonal(CVector{0.0}, zero, CVector{0.0}, CVector{1.0, 1.0}); })
          == ErrorKind::SingularResolvent);
}

TEST_CASE("dense matrix model")
{
    auto const spec = SpectralCharacteristics::make(1.0, kPi / 6);
    DenseMatrixModel const m(2, {2.0, 1.0, 0.0, 3.0}, spec);
    Complex const z(0.5, 1.0);
    auto const r = m.resolvent_apply(z, CVector{1.0, 1.0});
    // (zI - A) r = v checked directly
    CHECK(std::abs((z - 2.0) * r[0] - r[1] - 1.0) <= 1e-14);
    CHECK(std::abs((z - 3.0) * r[1] - 1.0) <= 1e-14);
    CHECK(kind_of([&] { m.resolvent_apply(2.0, CVector{1.0, 1.0}); }) == ErrorKind::SingularResolvent);
    CHECK_THROWS_AS(DenseMatrixModel(2, {1.0}, spec), Error);
}

TEST_CASE("Green's-function model on an eigenfunction")
{
    GreenFunctionModel const green(96, reproduction_sector(), 48);
    auto const v = green.project([](double x) { return std::sin(kPi * x); });
    Hyperbola const h = integration_hyperbola(green.spectral());
    for (double xi : {0.0, 0.5, -1.25, 2.0, 4.0})
    {
        Complex const z = hyperbola_eval(h, xi).z;
        auto const r = green.resolvent_apply(z, v);
        double worst = 0;
        for (std::size_t i = 0; i < r.size(); ++i)
            worst = std::max(worst, std::abs(r[i] - v[i] / (z - pi2)));
        CHECK(worst * std::abs(z - pi2) <= 1e-8);
        CHECK(green.quadrature_drift(z, v) <= GreenFunctionModel::kAccuracyWarning);
    }
    CHECK(kind_of([&] { green.resolvent_apply(pi2, v); }) == ErrorKind::SingularResolvent);
    CHECK(kind_of([&] { green.resolvent_apply(4 * pi2, v); }) == ErrorKind::SingularResolvent);

    // node 0 sits at x = 1/2; interpolation reproduces node values
    CHECK(green.node(48) == 0.5);
    CHECK(std::abs(green.evaluate(v, 0.5) - 1.0) <= 1e-15);
    CHECK(std::abs(green.evaluate(v, 0.3) - std::sin(0.3 * kPi)) <= 1e-10);
}

TEST_CASE("Green's-function resolvent decays along the real axis")
{
    GreenFunctionModel const green(32);
    auto const v = green.project([](double x) { return x * (1 - x) + 0.2; });
    double prev = 1e300;
    for (double z : {-5.0, -50.0, -500.0, -5000.0})
    {
        double const n = norm_inf(green.resolvent_apply(z, v));
        CHECK(n < prev);
        CHECK(n * (1 + std::abs(z)) <= 2 * norm_inf(v));
        prev = n;
    }
}

TEST_CASE("Green's-function model against fine finite differences")
{
    GreenFunctionModel const green(96, reproduction_sector(), 48);
    FdLaplacianModel const fd(2001, reproduction_sector());
    auto xlogx = [](double x) { return x > 0 ? x * std::log(x) : 0.0; };
    auto const vg = green.project(xlogx);
    auto const vf = fd.project(xlogx);
    Hyperbola const h = integration_hyperbola(green.spectral());
    for (double xi : {0.0, 0.7, -2.0, 3.5})
    {
        Complex const z = hyperbola_eval(h, xi).z;
        Complex const a = green.resolvent_apply(z, vg)[green.dim() / 2];
        Complex const b = fd.resolvent_apply(z, vf)[1000];
        CHECK(fd.grid_point(1000) == 0.5);
        CHECK(std::abs(a - b) <= 1e-5 * std::abs(a));
    }
}
