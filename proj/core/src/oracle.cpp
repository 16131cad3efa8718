#include "nonlocal_evolve/oracle.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace nlevolve::oracle {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

Matrix to_eigen(const DenseMatrix& A)
{
    if (A.n == 0 || A.a.size() != A.n * A.n)
        throw Error(ErrorKind::InvalidArgument, "oracle needs an n x n matrix");
    if (A.n > 64)
        throw Error(ErrorKind::InvalidArgument, "dense oracle is limited to dim <= 64");
    Matrix m(A.n, A.n);
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t j = 0; j < A.n; ++j)
            m(i, j) = A.a[i * A.n + j];
    return m;
}

Vector to_eigen(std::span<const double> v)
{
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

RVector from_eigen(const Vector& v) { return RVector(v.data(), v.data() + v.size()); }

// exp(M) by scaling and squaring with a degree-18 Taylor kernel.
Matrix exp_matrix(const Matrix& m)
{
    double const norm = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.25)
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    Matrix const scaled = m / std::ldexp(1.0, squarings);

    Matrix result = Matrix::Identity(m.rows(), m.cols());
    Matrix term = result;
    for (int k = 1; k <= 18; ++k)
    {
        term = term * scaled / double(k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s)
        result = result * result;
    return result;
}

struct GaussRule {
    std::array<double, 10> x;
    std::array<double, 10> w;
};

// 10-point Gauss-Legendre on [-1, 1] by Newton iteration on P_10.
GaussRule const& gauss10()
{
    static GaussRule const rule = [] {
        GaussRule r{};
        constexpr int n = 10;
        for (int i = 0; i < n; ++i)
        {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 0;
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1, p1 = x;
                for (int k = 2; k <= n; ++k)
                {
                    double const p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1);
                double const dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            r.x[i] = x;
            r.w[i] = 2 / ((1 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

Vector integrand(const Matrix& A, const RealSource& f, double t, double s)
{
    RVector const fs = f(s);
    return exp_matrix(-A * (t - s)) * to_eigen(fs);
}

Vector gauss_panel(const Matrix& A, const RealSource& f, double t, double a, double b)
{
    auto const& rule = gauss10();
    double const mid = (a + b) / 2, half = (b - a) / 2;
    Vector sum = Vector::Zero(A.rows());
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        sum += rule.w[i] * integrand(A, f, t, mid + half * rule.x[i]);
    return half * sum;
}

Vector adaptive(const Matrix& A, const RealSource& f, double t, double a, double b,
                const Vector& whole, double tol, int depth)
{
    double const mid = (a + b) / 2;
    Vector const left = gauss_panel(A, f, t, a, mid);
    Vector const right = gauss_panel(A, f, t, mid, b);
    Vector const both = left + right;
    double const scale = std::max(1.0, both.cwiseAbs().maxCoeff());
    if ((both - whole).cwiseAbs().maxCoeff() <= tol * scale)
        return both;
    if (depth >= 40)
        throw Error(ErrorKind::OracleFailure,
                    "adaptive Gauss quadrature did not converge in the Duhamel integral");
    return adaptive(A, f, t, a, mid, left, tol / 2, depth + 1)
           + adaptive(A, f, t, mid, b, right, tol / 2, depth + 1);
}

Vector duhamel_eigen(const Matrix& A, const RealSource& f, double t, double tol)
{
    if (t == 0)
        return Vector::Zero(A.rows());
    return adaptive(A, f, t, 0, t, gauss_panel(A, f, t, 0, t), tol, 0);
}

}  // namespace

DenseMatrix DenseMatrix::identity_scaled(std::size_t n, double s)
{
    DenseMatrix m{n, std::vector<double>(n * n, 0.0)};
    for (std::size_t i = 0; i < n; ++i)
        m.a[i * n + i] = s;
    return m;
}

std::vector<double> expm(const DenseMatrix& A, double t)
{
    Matrix const e = exp_matrix(-to_eigen(A) * t);
    std::vector<double> out(A.n * A.n);
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t j = 0; j < A.n; ++j)
            out[i * A.n + j] = e(i, j);
    return out;
}

RVector expm_apply(const DenseMatrix& A, double t, std::span<const double> v)
{
    return from_eigen(exp_matrix(-to_eigen(A) * t) * to_eigen(v));
}

RVector duhamel(const DenseMatrix& A, const RealSource& f, double t, double tolerance)
{
    return from_eigen(duhamel_eigen(to_eigen(A), f, t, tolerance));
}

RVector nonlocal_solution(const DenseMatrix& A, const NonlocalSpec& nl,
                          std::span<const double> u0, const RealSource& f, double t)
{
    nl.validate();
    Matrix const a = to_eigen(A);
    Vector const v0 = to_eigen(u0);
    auto const n = a.rows();
    if (v0.size() != n)
        throw Error(ErrorKind::InvalidArgument, "u0 length does not match the matrix");

    // B W = B u0 - u0 + sum_i alpha_i int_0^{t_i} exp(-A(t_i - s)) f(s) ds
    Matrix B = Matrix::Identity(n, n);
    Vector forced = Vector::Zero(n);
    for (std::size_t i = 0; i < nl.size(); ++i)
    {
        B += nl.alphas[i] * exp_matrix(-a * nl.times[i]);
        if (f)
            forced += nl.alphas[i] * duhamel_eigen(a, f, nl.times[i], 1e-12);
    }
    Vector const rhs = B * v0 - v0 + forced;
    Eigen::FullPivLU<Matrix> lu(B);
    if (!lu.isInvertible())
        throw Error(ErrorKind::OracleFailure, "B(A) is singular");
    Vector const W = lu.solve(rhs);
    Vector const initial = v0 - W;

    Vector u = exp_matrix(-a * t) * initial;
    if (f)
        u += duhamel_eigen(a, f, t, 1e-12);
    return from_eigen(u);
}

RVector nonlocal_solution(const DenseMatrix& A, const NonlocalSpec& nl,
                          std::span<const double> u0, double t)
{
    return nonlocal_solution(A, nl, u0, RealSource{}, t);
}

}  // namespace nlevolve::oracle
