#include "nonlocal_evolve/tridiagonal.hpp"

#include <cmath>
#include <utility>

namespace nlevolve {

CVector solve_tridiagonal(std::span<const Complex> sub,
                          std::span<const Complex> diag,
                          std::span<const Complex> sup,
                          std::span<const Complex> rhs)
{
    std::size_t const n = diag.size();
    if (n == 0 || rhs.size() != n || sub.size() + 1 != n || sup.size() + 1 != n)
        throw Error(ErrorKind::InvalidArgument, "tridiagonal system size mismatch");

    // Row i holds (d[i], u[i], u2[i]) after elimination; u2 is the fill-in
    // created by row swaps.
    CVector d(diag.begin(), diag.end());
    CVector u(n, 0.0), u2(n, 0.0), l(sub.begin(), sub.end());
    CVector x(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i + 1 < n; ++i)
        u[i] = sup[i];

    auto singular = [] {
        throw Error(ErrorKind::SingularResolvent, "zero pivot in tridiagonal solve");
    };

    for (std::size_t i = 0; i + 1 < n; ++i)
    {
        if (std::abs(d[i]) >= std::abs(l[i]))
        {
            if (d[i] == Complex(0.0))
                singular();
            Complex const f = l[i] / d[i];
            d[i + 1] -= f * u[i];
            x[i + 1] -= f * x[i];
            l[i] = 0.0;
        }
        else
        {
            // Swap rows i and i+1.
            Complex const f = d[i] / l[i];
            d[i] = l[i];
            Complex const tmp = d[i + 1];
            d[i + 1] = u[i] - f * tmp;
            u[i] = tmp;
            if (i + 2 < n)
            {
                u2[i] = u[i + 1];
                u[i + 1] = -f * u2[i];
            }
            std::swap(x[i], x[i + 1]);
            x[i + 1] -= f * x[i];
        }
    }
    if (d[n - 1] == Complex(0.0))
        singular();

    x[n - 1] /= d[n - 1];
    if (n > 1)
        x[n - 2] = (x[n - 2] - u[n - 2] * x[n - 1]) / d[n - 2];
    for (std::size_t ii = n > 2 ? n - 2 : 0; ii-- > 0;)
        x[ii] = (x[ii] - u[ii] * x[ii + 1] - u2[ii] * x[ii + 2]) / d[ii];
    return x;
}

}  // namespace nlevolve
