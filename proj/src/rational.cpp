#include "sparsecsp/rational.hpp"

#include "sparsecsp/error.hpp"

#include <charconv>

namespace sparsecsp {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError(0, "not an integer: '" + std::string(text) + "'");
  return value;
}

} // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t num = parse_int(text.substr(0, slash));
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0)
      throw ParseError(0, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos)
    return Rational(parse_int(text));
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.size() > 15 || frac.empty())
    throw ParseError(0, "unsupported decimal '" + std::string(text) + "'");
  bool negative = !whole.empty() && whole.front() == '-';
  std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i)
    scale *= 10;
  std::int64_t f = parse_int(frac);
  if (f < 0)
    throw ParseError(0, "malformed decimal '" + std::string(text) + "'");
  Rational result(w < 0 ? -w : w);
  result += Rational(f, scale);
  return negative ? -result : result;
}

std::string to_string(const Rational &q) {
  if (q.denominator() == 1)
    return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double to_double(const Rational &q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

BigRational to_big(const Rational &q) {
  return BigRational(q.numerator()) / BigRational(q.denominator());
}

std::string to_string(const BigRational &q) {
  if (denominator(q) == 1)
    return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

} // namespace sparsecsp
