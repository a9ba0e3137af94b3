#include "dsp/rational.hpp"

#include <cctype>

#include "dsp/errors.hpp"

namespace dsp {

namespace {

BigInt parse_integer(const std::string& text, const std::string& whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size())
    throw ValidationError("bad rational literal '" + whole + "'");
  BigInt v = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ValidationError("bad rational literal '" + whole +
                            "' (expected p/q with integer p, q)");
    v = v * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text, raw));
  const BigInt num = parse_integer(text.substr(0, slash), raw);
  const BigInt den = parse_integer(text.substr(slash + 1), raw);
  if (den == 0) throw ValidationError("zero denominator in '" + raw + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

std::string to_string(const GaussianRational& z) {
  if (z.im == 0) return to_string(z.re);
  std::string s = z.re == 0 ? "" : to_string(z.re);
  if (z.im > 0 && !s.empty()) s += "+";
  return s + to_string(z.im) + "i";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
  return os << to_string(z);
}

}  // namespace dsp
