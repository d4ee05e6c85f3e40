#include "rtmix/rational.hpp"

namespace rtmix {

BigInt Rational::to_mpz(Int v) {
  static_assert(sizeof(long) == sizeof(Int), "Int must map onto mpz's signed long");
  return BigInt(static_cast<long>(v));
}

Rational::Rational(Int num, Int den) : Rational(to_mpz(num), to_mpz(den)) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  require(den != 0, ErrorKind::PreconditionViolated, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  require(o.sign() != 0, ErrorKind::PreconditionViolated, "division by zero rational");
  q_ /= o.q_;
  return *this;
}

BigInt Rational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

BigInt Rational::ceil() const {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Int to_int(const BigInt& v, const Limits& limits) {
  if (!v.fits_slong_p() || v > Rational::to_mpz(limits.max_magnitude) ||
      v < -Rational::to_mpz(limits.max_magnitude))
    fail(ErrorKind::OverflowLimit, "value " + v.get_str() + " exceeds magnitude cap");
  return static_cast<Int>(v.get_si());
}

}  // namespace rtmix
