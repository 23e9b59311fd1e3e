#include "instanton/gauss_rational.hpp"

#include <cctype>
#include <cmath>

#include "instanton/error.hpp"

namespace instanton {

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational GaussRational::from_complex(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw PreconditionError("non-finite coefficient");
  return {mpq_class(z.real()), mpq_class(z.imag())};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
  if (sgn(n) == 0) throw std::domain_error("division by zero");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  return "(" + re_.get_str() + "," + im_.get_str() + ")";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Integer, fraction, or decimal literal with optional exponent; exact.
mpq_class parse_real(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw ParseError("empty number");
  std::string text(s);
  if (auto slash = text.find('/'); slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw ParseError("bad fraction: " + text);
    q.canonicalize();
    return q;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string digits;
  long exponent = 0;
  bool any = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    any = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      --exponent;
      any = true;
    }
  }
  if (!any) throw ParseError("bad number: " + text);
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(text.substr(pos), &used);
    } catch (const std::exception&) {
      throw ParseError("bad exponent: " + text);
    }
    pos += used;
    exponent += e;
  }
  if (pos != text.size()) throw ParseError("trailing characters in number: " + text);
  mpz_class mant(digits, 10);
  if (negative) mant = -mant;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class q = exponent >= 0 ? mpq_class(mpz_class(mant * pow10)) : mpq_class(mant, pow10);
  q.canonicalize();
  return q;
}

}  // namespace

GaussRational GaussRational::parse(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '(') {
    if (text.back() != ')') throw ParseError("unterminated complex coefficient");
    std::string_view inner = text.substr(1, text.size() - 2);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw ParseError("complex coefficient needs (re,im)");
    return {parse_real(inner.substr(0, comma)), parse_real(inner.substr(comma + 1))};
  }
  return {parse_real(text), mpq_class(0)};
}

}  // namespace instanton
