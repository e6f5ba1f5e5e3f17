#pragma once

#include <stdexcept>
#include <string>

namespace tracediag {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural problem with a diagram or an operation on diagrams.
class DiagramError : public Error {
 public:
  using Error::Error;
};

/// A label is missing from a binding, or its shape does not match.
class BindingError : public Error {
 public:
  BindingError(std::string label, const std::string& what) : Error(what), label_(std::move(label)) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace tracediag
