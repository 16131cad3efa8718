#pragma once

#include "types.hpp"

namespace nlevolve {

/// Solve a complex tridiagonal system by Gaussian elimination with partial
/// pivoting (the gtsv scheme).  `sub[i]` couples row i+1 to column i and
/// `sup[i]` couples row i to column i+1, so both hold n-1 entries.
/// Throws SingularResolvent on an exactly zero pivot.
CVector solve_tridiagonal(std::span<const Complex> sub,
                          std::span<const Complex> diag,
                          std::span<const Complex> sup,
                          std::span<const Complex> rhs);

}  // namespace nlevolve
