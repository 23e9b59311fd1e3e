#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace instanton {

/// Exact complex number with rational real and imaginary parts.
class GaussRational {
public:
  GaussRational() = default;
  GaussRational(long n) : re_(n), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im);

  /// Exact conversion; every finite double is a dyadic rational.
  static GaussRational from_complex(std::complex<double> z);
  /// Accepts `p`, `p/q`, decimals with optional exponent, or `(re,im)`.
  static GaussRational parse(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  /// `p/q` when real, `(re,im)` otherwise; parse() inverts it exactly.
  std::string str() const;

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

}  // namespace instanton
