#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nlevolve {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using RVector = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

enum class ErrorKind {
    InvalidArgument,
    InvalidCharacteristics,
    ContourUnsafe,
    SingularResolvent,
    Unsolvable,
    OracleFailure,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Library error; `kind()` lets callers (the CLI in particular) map
/// failures onto exit codes without parsing messages.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

//---------------------------------------------------------------------------//
// Small dense vector helpers
//---------------------------------------------------------------------------//

/// y += a * x
inline void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y)
{
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] += a * x[i];
}

inline double norm_inf(std::span<const Complex> v)
{
    double m = 0;
    for (auto const& c : v)
        m = std::max(m, std::abs(c));
    return m;
}

inline double norm_inf(std::span<const double> v)
{
    double m = 0;
    for (double c : v)
        m = std::max(m, std::abs(c));
    return m;
}

inline CVector to_complex(std::span<const double> v)
{
    return CVector(v.begin(), v.end());
}

/// Largest |Im v_i| relative to 1 + ||Re v||_inf.
double symmetry_residual(std::span<const Complex> v);

/// Real part of a quadrature result whose imaginary part must vanish for
/// real data; throws when the residual exceeds `tolerance`.
RVector real_part(std::span<const Complex> v, double tolerance);

}  // namespace nlevolve
