#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include "dpa/error.hpp"

namespace dpa {

/// Exact rational equal to the shortest decimal that round-trips `x`
/// (so 0.3 becomes 3/10, not the binary fraction nearest to 0.3).
inline mpq_class rationalize_decimal(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "cannot rationalize non-finite");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc{}) throw Error(ErrorCode::InvalidArgument, "to_chars failed");
  const std::string text(buf, res.ptr);

  bool negative = false;
  std::string digits;
  long exponent = 0;
  long frac_digits = 0;
  bool in_fraction = false;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch == '.') {
      in_fraction = true;
    } else if (ch == 'e' || ch == 'E') {
      exponent = std::stol(text.substr(pos + 1));
      break;
    } else {
      digits.push_back(ch);
      if (in_fraction) ++frac_digits;
    }
  }
  mpz_class mant(digits.empty() ? std::string("0") : digits, 10);
  const long scale = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class q = scale >= 0 ? mpq_class(mant * pow10) : mpq_class(mant, pow10);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

inline mpz_class binomial_z(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// Correctly rounded conversion to double (mpq_get_d truncates).
inline double to_double(const mpq_class& q) {
  if (q == 0) return 0.0;
  const double d = q.get_d();
  const double up = std::nextafter(d, q > 0 ? HUGE_VAL : -HUGE_VAL);
  const mpq_class err_d = abs(q - mpq_class(d));
  const mpq_class err_up = abs(q - mpq_class(up));
  return err_up < err_d ? up : d;
}

}  // namespace dpa
