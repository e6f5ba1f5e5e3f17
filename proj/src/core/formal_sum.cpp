#include "tracediag/core/formal_sum.hpp"

namespace tracediag {

FormalSum::FormalSum(Dimension dim, std::vector<Term> terms) : dim_(dim) {
  for (auto& t : terms) add_term(std::move(t.coefficient), std::move(t.diagram));
}

FormalSum::FormalSum(TraceDiagram diagram) : dim_(diagram.dimension()) { add_term(1, std::move(diagram)); }

void FormalSum::check_compatible(const TraceDiagram& d) const {
  if (d.dimension() != dim_) {
    throw DiagramError("formal sum term has dimension " + std::to_string(d.n()) + ", expected " +
                       std::to_string(dim_.value()));
  }
  if (terms_.empty()) return;
  const TraceDiagram& first = terms_.front().diagram;
  if (first.function_like() != d.function_like() || first.input_arity() != d.input_arity() ||
      first.output_arity() != d.output_arity()) {
    throw DiagramError("formal sum terms have incompatible framings (" + std::to_string(first.input_arity()) + "->" +
                       std::to_string(first.output_arity()) + " vs " + std::to_string(d.input_arity()) + "->" +
                       std::to_string(d.output_arity()) + ")");
  }
}

FormalSum& FormalSum::add_term(Scalar coefficient, TraceDiagram diagram) {
  check_compatible(diagram);
  terms_.push_back(Term{std::move(coefficient), std::move(diagram)});
  return *this;
}

FormalSum& FormalSum::operator+=(const FormalSum& other) {
  if (other.dim_ != dim_) throw DiagramError("cannot add formal sums of different dimension");
  for (const auto& t : other.terms_) add_term(t.coefficient, t.diagram);
  return *this;
}

FormalSum operator-(FormalSum a, const FormalSum& b) { return a += scale(-1, b); }

FormalSum operator*(const Scalar& s, FormalSum a) {
  for (auto& t : a.terms_) t.coefficient *= s;
  return a;
}

FormalSum scale(const Scalar& s, FormalSum sum) { return s * std::move(sum); }

}  // namespace tracediag
