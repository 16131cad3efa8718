#include "nonlocal_evolve/operators.hpp"

#include "nonlocal_evolve/tridiagonal.hpp"
#include "sinc_rules.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlevolve {

SpectralCharacteristics self_adjoint_characteristics(double lambda_min,
                                                     const SectorOptions& opts)
{
    if (!(opts.margin > 0 && opts.margin <= 1))
        throw Error(ErrorKind::InvalidCharacteristics, "sector margin must lie in (0, 1]");
    if (!(opts.rho1_fraction >= 0 && opts.rho1_fraction < 1))
        throw Error(ErrorKind::InvalidCharacteristics, "rho1 fraction must lie in [0, 1)");
    double const rho0 = opts.margin * lambda_min;
    return SpectralCharacteristics::make(rho0, opts.phi, opts.rho1_fraction * rho0, opts.M);
}

namespace {

[[noreturn]] void singular_at(Complex z)
{
    std::ostringstream os;
    os << "resolvent is singular at z = " << z;
    throw Error(ErrorKind::SingularResolvent, os.str());
}

void check_size(std::size_t expected, std::size_t got)
{
    if (expected != got)
        throw Error(ErrorKind::InvalidArgument, "vector length does not match model dimension");
}

}  // namespace

//---------------------------------------------------------------------------//
// SpectralModeModel
//---------------------------------------------------------------------------//

SpectralModeModel::SpectralModeModel(std::size_t n_modes, SectorOptions opts)
    : n_modes_(n_modes), spec_(self_adjoint_characteristics(eigenvalue(1), opts))
{
    if (n_modes == 0)
        throw Error(ErrorKind::InvalidArgument, "spectral model needs at least one mode");
}

double SpectralModeModel::eigenvalue(std::size_t k)
{
    double const w = static_cast<double>(k) * kPi;
    return w * w;
}

CVector SpectralModeModel::resolvent_apply(Complex z, std::span<const Complex> v) const
{
    check_size(n_modes_, v.size());
    CVector out(n_modes_);
    for (std::size_t k = 0; k < n_modes_; ++k)
    {
        double const lambda = eigenvalue(k + 1);
        Complex const gap = z - lambda;
        if (std::abs(gap) <= 1e-14 * lambda)
            singular_at(z);
        out[k] = v[k] / gap;
    }
    return out;
}

CVector SpectralModeModel::project(const std::function<double(double)>& g) const
{
    // Composite tanh rule; panels keep each sine well resolved.
    std::size_t const panels = std::max<std::size_t>(1, (n_modes_ + 1) / 2);
    int const n = 128;
    double const h = detail::tanh_rule_step(n);

    CVector coeff(n_modes_, 0.0);
    for (std::size_t p = 0; p < panels; ++p)
    {
        double const a = double(p) / double(panels);
        double const b = double(p + 1) / double(panels);
        for (auto const& pt : detail::tanh_rule(a, b, n, h))
        {
            double const x = pt.from_a < pt.to_b ? a + pt.from_a : b - pt.to_b;
            double const gx = g(x) * pt.weight;
            double const theta = kPi * x;
            double const c2 = 2 * std::cos(theta);
            double s_prev = 0, s = std::sin(theta);
            for (std::size_t k = 0; k < n_modes_; ++k)
            {
                coeff[k] += 2 * gx * s;
                double const next = c2 * s - s_prev;
                s_prev = s;
                s = next;
            }
        }
    }
    return coeff;
}

Complex SpectralModeModel::evaluate(std::span<const Complex> v, double x) const
{
    check_size(n_modes_, v.size());
    Complex sum = 0;
    for (std::size_t k = 0; k < n_modes_; ++k)
        sum += v[k] * std::sin(double(k + 1) * kPi * x);
    return sum;
}

//---------------------------------------------------------------------------//
// FdLaplacianModel
//---------------------------------------------------------------------------//

FdLaplacianModel::FdLaplacianModel(std::size_t n, SectorOptions opts)
    : n_(n), spec_(self_adjoint_characteristics(lambda_min(n), opts))
{
    if (n == 0)
        throw Error(ErrorKind::InvalidArgument, "finite-difference model needs n >= 1");
}

double FdLaplacianModel::lambda_min(std::size_t n)
{
    double const np1 = double(n + 1);
    double const s = std::sin(kPi / (2 * np1));
    return 4 * np1 * np1 * s * s;
}

double FdLaplacianModel::grid_point(std::size_t j) const
{
    return double(j + 1) / double(n_ + 1);
}

CVector FdLaplacianModel::resolvent_apply(Complex z, std::span<const Complex> v) const
{
    check_size(n_, v.size());
    double const scale = double(n_ + 1) * double(n_ + 1);
    CVector diag(n_, z - 2 * scale);
    CVector off(n_ - 1, Complex(scale));
    try
    {
        return solve_tridiagonal(off, diag, off, v);
    }
    catch (Error const& e)
    {
        if (e.kind() == ErrorKind::SingularResolvent)
            singular_at(z);
        throw;
    }
}

CVector FdLaplacianModel::project(const std::function<double(double)>& g) const
{
    CVector out(n_);
    for (std::size_t j = 0; j < n_; ++j)
        out[j] = g(grid_point(j));
    return out;
}

Complex FdLaplacianModel::evaluate(std::span<const Complex> v, double x) const
{
    check_size(n_, v.size());
    double const pos = x * double(n_ + 1);  // grid index with boundaries at 0 and n+1
    if (!(pos >= 0 && pos <= double(n_ + 1)))
        throw Error(ErrorKind::InvalidArgument, "evaluation point outside [0, 1]");
    auto const left = std::min<std::size_t>(static_cast<std::size_t>(pos), n_);
    double const frac = pos - double(left);
    auto value = [&](std::size_t idx) -> Complex {
        return (idx == 0 || idx == n_ + 1) ? Complex(0.0) : v[idx - 1];
    };
    if (frac == 0)
        return value(left);
    return (1 - frac) * value(left) + frac * value(left + 1);
}

std::vector<double> FdLaplacianModel::dense_matrix() const
{
    double const scale = double(n_ + 1) * double(n_ + 1);
    std::vector<double> a(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
    {
        a[i * n_ + i] = 2 * scale;
        if (i > 0)
            a[i * n_ + i - 1] = -scale;
        if (i + 1 < n_)
            a[i * n_ + i + 1] = -scale;
    }
    return a;
}

//---------------------------------------------------------------------------//
// DenseMatrixModel
//---------------------------------------------------------------------------//

DenseMatrixModel::DenseMatrixModel(std::size_t n, std::vector<double> row_major,
                                   SpectralCharacteristics spec)
    : n_(n), a_(std::move(row_major)), spec_(spec)
{
    if (n == 0 || a_.size() != n * n)
        throw Error(ErrorKind::InvalidArgument, "dense model needs an n x n matrix");
    spec_.validate();
}

CVector DenseMatrixModel::resolvent_apply(Complex z, std::span<const Complex> v) const
{
    check_size(n_, v.size());
    Eigen::MatrixXcd m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            m(i, j) = (i == j ? z : Complex(0.0)) - a_[i * n_ + j];
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    auto const diag = lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i)
        if (diag(i) == Complex(0.0))
            singular_at(z);
    Eigen::VectorXcd rhs(n_);
    for (std::size_t i = 0; i < n_; ++i)
        rhs(i) = v[i];
    Eigen::VectorXcd x = lu.solve(rhs);
    return CVector(x.data(), x.data() + n_);
}

}  // namespace nlevolve
