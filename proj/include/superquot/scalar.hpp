#ifndef SUPERQUOT_SCALAR_HPP
#define SUPERQUOT_SCALAR_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sq {

/// Ground field descriptor: the rationals (p == 0) or a prime field of odd
/// characteristic. Characteristic 2 is rejected at construction; the sign
/// conventions of super-commutativity degenerate there.
struct Field {
  unsigned long p = 0;  // 0 = rationals

  static Field rationals() { return Field{0}; }
  static Field prime(unsigned long p);

  bool is_rational() const { return p == 0; }
  bool operator==(const Field& o) const { return p == o.p; }
  bool operator!=(const Field& o) const { return p != o.p; }
  std::string describe() const;
};

/// Exact field element. For prime fields the value is kept as the canonical
/// representative in [0, p) with denominator 1.
class Scalar {
 public:
  Scalar() : field_(Field::rationals()), v_(0) {}
  Scalar(const Field& f, long n) : field_(f), v_(n) { normalize(); }
  Scalar(const Field& f, const mpq_class& v) : field_(f), v_(v) { normalize(); }

  static Scalar zero(const Field& f) { return Scalar(f, 0); }
  static Scalar one(const Field& f) { return Scalar(f, 1); }
  /// n/d in the given field.
  static Scalar fraction(const Field& f, long n, long d);

  const Field& field() const { return field_; }
  const mpq_class& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const { return field_ == o.field_ && v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void normalize();
  void check(const Scalar& o) const;

  Field field_;
  mpq_class v_;
};

}  // namespace sq

#endif
