#pragma once

#include "tracediag/core/diagram.hpp"
#include "tracediag/core/scalar.hpp"

#include <vector>

namespace tracediag {

struct Term {
  Scalar coefficient;
  TraceDiagram diagram;
};

/// Linear combination of diagrams with rational coefficients. Terms are never merged.
class FormalSum {
 public:
  explicit FormalSum(Dimension dim) : dim_(dim) {}
  FormalSum(Dimension dim, std::vector<Term> terms);
  /// Single term with coefficient 1.
  explicit FormalSum(TraceDiagram diagram);

  Dimension dimension() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Appends a term; throws DiagramError when dimension or arity disagree with existing terms.
  FormalSum& add_term(Scalar coefficient, TraceDiagram diagram);

  FormalSum& operator+=(const FormalSum& other);
  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
  friend FormalSum operator-(FormalSum a, const FormalSum& b);
  friend FormalSum operator*(const Scalar& s, FormalSum a);

 private:
  void check_compatible(const TraceDiagram& d) const;

  Dimension dim_;
  std::vector<Term> terms_;
};

FormalSum scale(const Scalar& s, FormalSum sum);

}  // namespace tracediag
