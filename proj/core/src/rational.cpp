#include "logvoa/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace logvoa {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("Rational: empty string");

  std::string_view num = s, den = "1";
  if (auto pos = s.find('/'); pos != std::string_view::npos) {
    num = trim(s.substr(0, pos));
    den = trim(s.substr(pos + 1));
  }
  std::string_view digits = num;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits) || !all_digits(den))
    throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");

  mpq_class v{mpz_class(std::string(num)), mpz_class(std::string(den))};
  if (v.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
  v.canonicalize();
  return Rational(v);
}

std::string Rational::str() const { return v_.get_str(); }

long Rational::to_long() const {
  if (!is_integer()) throw std::invalid_argument("Rational: not an integer: " + str());
  if (!v_.get_num().fits_slong_p()) throw std::overflow_error("Rational: does not fit a long");
  return v_.get_num().get_si();
}

Rational Rational::pow(unsigned e) const {
  mpq_class out(1);
  mpq_class base = v_;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return Rational(out);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(mpq_class(f));
}

Rational binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(mpq_class(b));
}

}  // namespace logvoa
