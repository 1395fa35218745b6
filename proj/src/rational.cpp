#include "siqs/rational.hpp"

namespace siqs {

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos)
    throw std::invalid_argument("Rational::parse: '" + s +
                                "' looks like a float; pass an exact rational such as 3/2");
  try {
    mpq_class q(s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational::parse: cannot parse '" + s + "'");
  }
}

Rational Rational::pow_int(long e) const {
  if (e == 0) return Rational(1);
  if (is_zero()) {
    if (e < 0) throw std::domain_error("Rational: 0 raised to negative power");
    return Rational(0);
  }
  mpz_class num = v_.get_num(), den = v_.get_den();
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), k);
  mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), k);
  mpq_class r = (e > 0) ? mpq_class(pn, pd) : mpq_class(pd, pn);
  r.canonicalize();
  return Rational(r);
}

long Rational::to_long() const {
  if (!is_integer() || !v_.get_num().fits_slong_p())
    throw std::domain_error("Rational::to_long: not a small integer");
  return v_.get_num().get_si();
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

}  // namespace siqs
