#pragma once

#include "zonocover/matrix.hpp"

#include <utility>

namespace zonocover {

/// Exact determinant of a square integer matrix (fraction-free Bareiss
/// elimination, so intermediate values stay integral).
Int det(const IntMatrix& m);

/// Exact determinant of a square rational matrix.
Rat det(const RatMatrix& m);

/// Column-style Hermite normal form: returns (h, u) with h = m*u and u
/// unimodular. Convention: pivots advance one column per nonzero row,
/// pivot entries positive, entries left of a pivot in its row reduced
/// into [0, pivot). For a full-row-rank (n-1) x n input the last column
/// of h is zero.
std::pair<IntMatrix, IntMatrix> hnf_columns(const IntMatrix& m);

/// LLL reduction of the rows of m with parameter delta in (1/4, 1).
/// Exact rational Gram-Schmidt bookkeeping; no floating point. The row
/// lattice is preserved (result = u*m for unimodular u). Throws on
/// linearly dependent rows.
IntMatrix lll_rows(const IntMatrix& m, const Rat& delta);

/// Exact solution of a*x = b for square nonsingular rational a.
RatVec solve_square(const RatMatrix& a, const RatVec& b);

}  // namespace zonocover
