#include "tracediag/core/binding.hpp"

namespace tracediag {

MatrixBinding& MatrixBinding::bind_matrix(const std::string& label, Matrix m) {
  const auto n = static_cast<std::size_t>(dim_.value());
  if (m.rows() != n || m.cols() != n) {
    throw BindingError(label, "matrix '" + label + "' is " + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()) + ", expected " + std::to_string(n) + "x" +
                                  std::to_string(n));
  }
  matrices_[label] = std::move(m);
  return *this;
}

MatrixBinding& MatrixBinding::bind_vector(const std::string& label, Vector v) {
  const auto n = static_cast<std::size_t>(dim_.value());
  if (v.size() != n) {
    throw BindingError(label, "vector '" + label + "' has " + std::to_string(v.size()) + " entries, expected " +
                                  std::to_string(n));
  }
  vectors_[label] = std::move(v);
  return *this;
}

const Matrix& MatrixBinding::matrix(const std::string& label) const {
  auto it = matrices_.find(label);
  if (it == matrices_.end()) throw BindingError(label, "unbound matrix label '" + label + "'");
  return it->second;
}

const Vector& MatrixBinding::vector(const std::string& label) const {
  auto it = vectors_.find(label);
  if (it == vectors_.end()) throw BindingError(label, "unbound vector label '" + label + "'");
  return it->second;
}

Matrix MatrixBinding::word_product(const std::vector<std::string>& word) const {
  Matrix p = Matrix::identity(static_cast<std::size_t>(dim_.value()));
  for (const auto& l : word) p = p * matrix(l);
  return p;
}

void MatrixBinding::check_covers(const TraceDiagram& diagram) const {
  if (diagram.dimension() != dim_) {
    throw BindingError("", "binding dimension " + std::to_string(dim_.value()) + " does not match diagram dimension " +
                               std::to_string(diagram.n()));
  }
  for (const auto& l : diagram.matrix_labels()) (void)matrix(l);
  for (const auto& l : diagram.vector_labels()) (void)vector(l);
}

}  // namespace tracediag
