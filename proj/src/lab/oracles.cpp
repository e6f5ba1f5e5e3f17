#include "tracediag/lab/oracles.hpp"

#include "tracediag/core/errors.hpp"

namespace tracediag::lab {

Scalar bareiss_determinant(const Matrix& a) {
  if (!a.square()) throw EvalError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Matrix m = a;
  Scalar sign = 1;
  Scalar prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<Scalar> charpoly_trace_form(const Matrix& a, int degree) {
  if (!a.square()) throw EvalError("characteristic polynomial of a non-square matrix");
  if (degree < 0) throw EvalError("negative degree");
  const std::size_t d = a.rows();
  // Coefficients of lambda^degree + ... for the monic form, then the sign of det(A - lambda I).
  std::vector<Scalar> monic(degree + 1);
  monic[degree] = 1;
  Matrix m(d, d);
  for (int k = 1; k <= degree; ++k) {
    m = a * m + Matrix::identity(d) * monic[degree - k + 1];
    monic[degree - k] = -(a * m).trace() / k;
  }
  const Scalar s = sign_power(degree);
  for (auto& c : monic) c *= s;
  return monic;
}

std::vector<Scalar> charpoly_oracle(const Matrix& a) {
  return charpoly_trace_form(a, static_cast<int>(a.rows()));
}

namespace {

Scalar pfaffian_rec(const Matrix& a, std::vector<std::size_t>& idx) {
  if (idx.empty()) return 1;
  const std::size_t first = idx.front();
  Scalar total = 0;
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const std::size_t partner = idx[j];
    if (sgn(a(first, partner)) == 0) continue;
    std::vector<std::size_t> rest;
    for (std::size_t t = 1; t < idx.size(); ++t) {
      if (t != j) rest.push_back(idx[t]);
    }
    const Scalar sub = pfaffian_rec(a, rest);
    // The partner sits j - 1 places after the first free slot.
    total += ((j - 1) % 2 == 0 ? 1 : -1) * a(first, partner) * sub;
  }
  return total;
}

}  // namespace

Scalar pfaffian_oracle(const Matrix& a) {
  if (!a.square() || a.rows() % 2 != 0) throw EvalError("Pfaffian needs an even square matrix");
  std::vector<std::size_t> idx(a.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return pfaffian_rec(a, idx);
}

Vector cross3(const Vector& u, const Vector& v) {
  if (u.size() != 3 || v.size() != 3) throw EvalError("cross product needs 3-vectors");
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

Scalar dot(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw EvalError("dot product of vectors of different length");
  Scalar s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

Matrix matrix_polynomial(const std::vector<Scalar>& coeffs, const Matrix& a) {
  Matrix total(a.rows(), a.cols());
  Matrix p = Matrix::identity(a.rows());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i > 0) p = p * a;
    total += p * coeffs[i];
  }
  return total;
}

Scalar polynomial_value(const std::vector<Scalar>& coeffs, const Scalar& x) {
  Scalar total = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) total = total * x + *it;
  return total;
}

}  // namespace tracediag::lab
