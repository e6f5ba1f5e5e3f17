#include "tracediag/core/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace tracediag {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_literal(num) || (slash != std::string_view::npos && !is_integer_literal(den))) {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  mpz_class numerator(n, 10);
  mpz_class denominator(1);
  if (!den.empty()) {
    std::string d(den);
    if (d[0] == '+') d.erase(0, 1);
    denominator = mpz_class(d, 10);
    if (denominator == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  Scalar q(numerator, denominator);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& value) {
  Scalar v = value;
  v.canonicalize();
  return v.get_str(10);
}

Scalar factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Scalar(f);
}

}  // namespace tracediag
