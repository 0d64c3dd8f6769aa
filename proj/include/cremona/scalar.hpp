#pragma once

// Exact elements of the Gaussian rationals Q(i).

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

#include "cremona/error.hpp"

namespace cremona {

using Rational = mpq_class;

inline std::string rational_text(const Rational& q) {
  // mpq_class prints "a" or "a/b" with b > 0; canonicalized on construction.
  return q.get_str();
}

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {  // NOLINT
    re_.canonicalize();
  }
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational from_ints(long num, long den = 1) {
    if (den == 0) throw InputError("zero denominator");
    return GaussianRational(Rational(num, den));
  }
  static GaussianRational imaginary_unit() { return {Rational(0), Rational(1)}; }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const noexcept { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational inverse() const {
    if (is_zero()) throw MathError("division by zero in Q(i)");
    Rational n = norm();
    return {Rational(re_ / n), Rational(-im_ / n)};
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re_), Rational(-a.im_)}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  GaussianRational pow(unsigned e) const {
    GaussianRational result(1), base = *this;
    while (e != 0) {
      if (e & 1U) result *= base;
      base *= base;
      e >>= 1U;
    }
    return result;
  }

  /// Text form `a/b`, `c/d*i` or `a/b+c/d*i`.
  std::string to_string() const {
    if (sgn(im_) == 0) return rational_text(re_);
    std::string imag;
    Rational mag = abs(im_);
    imag = mag == 1 ? "i" : rational_text(mag) + "*i";
    if (sgn(re_) == 0) return sgn(im_) < 0 ? "-" + imag : imag;
    return rational_text(re_) + (sgn(im_) < 0 ? "-" : "+") + imag;
  }

  std::size_t hash() const {
    std::hash<std::string> h;
    return h(re_.get_str()) * 31U + h(im_.get_str());
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
  return os << z.to_string();
}

using Scalar = GaussianRational;

}  // namespace cremona
