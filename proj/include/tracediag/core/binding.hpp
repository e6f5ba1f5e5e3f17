#pragma once

#include "tracediag/core/diagram.hpp"
#include "tracediag/core/matrix.hpp"

#include <map>
#include <string>

namespace tracediag {

/// Environment mapping matrix labels to n x n matrices and vector labels to n-vectors.
class MatrixBinding {
 public:
  explicit MatrixBinding(Dimension dim) : dim_(dim) {}

  Dimension dimension() const { return dim_; }

  /// Throws BindingError on shape mismatch.
  MatrixBinding& bind_matrix(const std::string& label, Matrix m);
  MatrixBinding& bind_vector(const std::string& label, Vector v);

  bool has_matrix(const std::string& label) const { return matrices_.count(label) != 0; }
  bool has_vector(const std::string& label) const { return vectors_.count(label) != 0; }
  /// Throws BindingError naming the label when unbound.
  const Matrix& matrix(const std::string& label) const;
  const Vector& vector(const std::string& label) const;

  const std::map<std::string, Matrix>& matrices() const { return matrices_; }
  const std::map<std::string, Vector>& vectors() const { return vectors_; }

  /// Product of a marking word, left to right; identity for the empty word.
  Matrix word_product(const std::vector<std::string>& word) const;

  /// Throws BindingError if the diagram uses an unbound label or a different dimension.
  void check_covers(const TraceDiagram& diagram) const;

 private:
  Dimension dim_;
  std::map<std::string, Matrix> matrices_;
  std::map<std::string, Vector> vectors_;
};

}  // namespace tracediag
