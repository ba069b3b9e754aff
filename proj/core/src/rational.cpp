#include "graphlim/rational.hpp"

#include <cctype>
#include <cmath>

#include "graphlim/error.hpp"

namespace graphlim {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw ParseError("empty rational literal");

  if (auto dot = s.find('.'); dot != std::string::npos) {
    if (s.find('/') != std::string::npos || s.find_first_of("eE") != std::string::npos)
      throw ParseError("malformed rational literal: " + s);
    bool negative = s[0] == '-';
    std::string body = (s[0] == '-' || s[0] == '+') ? s.substr(1) : s;
    dot = body.find('.');
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("malformed decimal literal: " + s);
    Integer numerator(digits, 10);
    Integer denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 10, body.size() - dot - 1);
    Rational out(numerator, denominator);
    out.canonicalize();
    return negative ? Rational(-out) : out;
  }

  std::string check = s;
  if (check[0] == '+') check = check.substr(1);
  auto slash = check.find('/');
  auto valid_int = [](std::string_view part) {
    if (!part.empty() && part[0] == '-') part.remove_prefix(1);
    return !part.empty() && part.find_first_not_of("0123456789") == std::string_view::npos;
  };
  if (slash == std::string::npos ? !valid_int(check)
                                 : !valid_int(std::string_view(check).substr(0, slash)) ||
                                       !valid_int(std::string_view(check).substr(slash + 1)) ||
                                       check[slash + 1] == '-')
    throw ParseError("malformed rational literal: " + s);

  Rational out;
  if (out.set_str(check, 10) != 0) throw ParseError("malformed rational literal: " + s);
  if (out.get_den() == 0) throw ParseError("zero denominator: " + s);
  out.canonicalize();
  return out;
}

Rational rationalize(double value, std::int64_t max_denominator) {
  if (!std::isfinite(value)) throw DomainError("cannot rationalize a non-finite value");
  if (max_denominator < 1) throw DomainError("denominator bound must be positive");
  const bool negative = value < 0;
  double x = std::fabs(value);

  // Convergents h/k of the continued fraction of x.
  Integer h_prev = 1, h = static_cast<long>(std::floor(x));
  Integer k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  Rational exact(x);  // doubles are dyadic rationals
  const Integer bound = static_cast<long>(max_denominator);

  while (frac > 0) {
    Rational current(h, k);
    current.canonicalize();
    if (current == exact) break;
    double inv = 1.0 / frac;
    Integer a = static_cast<long>(std::floor(inv));
    frac = inv - std::floor(inv);
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    if (k_next > bound) {
      // Best semiconvergent within the bound, if it beats the convergent.
      Integer t = (bound - k_prev) / k;
      if (t > 0) {
        Rational semi(t * h + h_prev, t * k + k_prev);
        semi.canonicalize();
        Rational conv(h, k);
        conv.canonicalize();
        if (graphlim::abs(semi - exact) < graphlim::abs(conv - exact)) {
          h = t * h + h_prev;
          k = t * k + k_prev;
        }
      }
      break;
    }
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  Rational out(h, k);
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

Rational round_to_grid(double value, std::int64_t denominator) {
  if (!std::isfinite(value)) throw DomainError("cannot round a non-finite value");
  const double scaled = std::nearbyint(value * static_cast<double>(denominator));
  Integer numerator;
  mpz_set_d(numerator.get_mpz_t(), scaled);
  Rational out(numerator, Integer(static_cast<long>(denominator)));
  out.canonicalize();
  return out;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace graphlim
