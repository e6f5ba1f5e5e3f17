#pragma once

// Classical computations that do not go through diagrams. Used to check the diagrammatic results.

#include "tracediag/core/matrix.hpp"

#include <vector>

namespace tracediag::lab {

/// Fraction-free (Bareiss) elimination with row pivoting.
Scalar bareiss_determinant(const Matrix& a);

/// Coefficients c_0..c_n of det(A - lambda I), by the Faddeev-LeVerrier recurrence.
std::vector<Scalar> charpoly_oracle(const Matrix& a);

/// Faddeev-LeVerrier run for `degree` steps on a matrix of any size. The result is the trace
/// polynomial (-1)^degree * (e_degree(A) - e_{degree-1}(A) lambda + ...), which agrees with
/// charpoly_oracle when degree equals the matrix size.
std::vector<Scalar> charpoly_trace_form(const Matrix& a, int degree);

/// Sum over perfect matchings with the standard crossing sign. Throws for odd size.
Scalar pfaffian_oracle(const Matrix& a);

Vector cross3(const Vector& u, const Vector& v);
Scalar dot(const Vector& u, const Vector& v);

/// Sum_i coeffs[i] * A^i.
Matrix matrix_polynomial(const std::vector<Scalar>& coeffs, const Matrix& a);
/// Sum_i coeffs[i] * x^i.
Scalar polynomial_value(const std::vector<Scalar>& coeffs, const Scalar& x);

}  // namespace tracediag::lab
