#include "superquot/scalar.hpp"

namespace sq {

Field Field::prime(unsigned long p) {
  if (p < 3) throw std::invalid_argument("prime field characteristic must be an odd prime");
  if (p % 2 == 0) throw std::invalid_argument("characteristic 2 is not supported");
  // trial division; field characteristics here are small
  for (unsigned long d = 3; d * d <= p; d += 2)
    if (p % d == 0) throw std::invalid_argument("field characteristic must be prime");
  return Field{p};
}

std::string Field::describe() const {
  return p == 0 ? std::string("Q") : ("F" + std::to_string(p));
}

Scalar Scalar::fraction(const Field& f, long n, long d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  Scalar r(f, n);
  return r / Scalar(f, d);
}

void Scalar::normalize() {
  v_.canonicalize();
  if (field_.p != 0) {
    mpz_class num = v_.get_num(), den = v_.get_den(), p(static_cast<unsigned long>(field_.p));
    if (den != 1) {
      mpz_class dinv;
      if (!mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()))
        throw std::domain_error("denominator not invertible mod p");
      num *= dinv;
    }
    mpz_class r;
    mpz_mod(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    v_ = mpq_class(r);
  }
}

void Scalar::check(const Scalar& o) const {
  if (field_ != o.field_) throw std::logic_error("scalar field mismatch");
}

Scalar Scalar::operator-() const { return Scalar(field_, mpq_class(-v_)); }

Scalar Scalar::operator+(const Scalar& o) const {
  check(o);
  return Scalar(field_, mpq_class(v_ + o.v_));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check(o);
  return Scalar(field_, mpq_class(v_ - o.v_));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check(o);
  return Scalar(field_, mpq_class(v_ * o.v_));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (field_.p == 0) return Scalar(field_, mpq_class(1 / v_));
  mpz_class a = v_.get_num(), p(static_cast<unsigned long>(field_.p)), r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()))
    throw std::domain_error("element not invertible mod p");
  return Scalar(field_, mpq_class(r));
}

std::string Scalar::str() const { return v_.get_str(); }

}  // namespace sq
