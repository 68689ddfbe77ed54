#include "ranksched/rational.hpp"

#include <cctype>

#include "ranksched/errors.hpp"

namespace ranksched {

namespace {

BigInt parse_int(std::string_view text, std::string_view whole) {
  bool neg = false;
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') {
    neg = true;
    ++i;
  }
  if (i == text.size()) {
    throw ValidationError("invalid rational '" + std::string(whole) + "'");
  }
  BigInt v = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ValidationError("invalid rational '" + std::string(whole) + "'");
    }
    v = v * 10 + (text[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw ValidationError("division of rational by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::parse(std::string_view text) {
  std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_int(text, text), 1);
  }
  BigInt num = parse_int(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text[0] == '-') {
    throw ValidationError("invalid rational '" + std::string(text) +
                          "': denominator must be positive");
  }
  BigInt den = parse_int(den_text, text);
  if (den == 0) {
    throw ValidationError("invalid rational '" + std::string(text) +
                          "': denominator must be positive");
  }
  return Rational(std::move(num), std::move(den));
}

std::string Rational::str() const {
  std::string s = num_.str();
  if (den_ != 1) {
    s += '/';
    s += den_.str();
  }
  return s;
}

double Rational::to_double() const {
  return num_.convert_to<double>() / den_.convert_to<double>();
}

}  // namespace ranksched
