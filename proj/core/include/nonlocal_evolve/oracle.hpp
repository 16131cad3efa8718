#pragma once

#include "symbol.hpp"
#include "types.hpp"

#include <functional>

namespace nlevolve::oracle {

/// Brute-force reference solutions for small dense problems, computed
/// without any contour integral: matrix exponential by scaling and squaring
/// and the Duhamel integral by adaptive Gauss-Legendre quadrature.
///
/// Intended for dim <= 64.

struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // row-major

    static DenseMatrix identity_scaled(std::size_t n, double s);
};

using RealSource = std::function<RVector(double)>;

/// exp(-A t) as a dense row-major matrix.
std::vector<double> expm(const DenseMatrix& A, double t);

/// exp(-A t) v
RVector expm_apply(const DenseMatrix& A, double t, std::span<const double> v);

/// int_0^t exp(-A (t - s)) f(s) ds, adaptive to `tolerance`.
/// Throws OracleFailure when the bisection depth is exhausted.
RVector duhamel(const DenseMatrix& A, const RealSource& f, double t,
                double tolerance = 1e-10);

/// Solution of u' + A u = f, u(0) + sum alpha_k u(t_k) = u0 at time t,
/// via a dense solve for W = sum alpha_k u(t_k).
RVector nonlocal_solution(const DenseMatrix& A, const NonlocalSpec& nl,
                          std::span<const double> u0, const RealSource& f,
                          double t);

/// Same with f == 0.
RVector nonlocal_solution(const DenseMatrix& A, const NonlocalSpec& nl,
                          std::span<const double> u0, double t);

}  // namespace nlevolve::oracle
