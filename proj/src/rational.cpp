#include "obstructor/rational.hpp"

#include <cctype>

#include "obstructor/errors.hpp"

namespace obstructor {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t k = 0;
  if (k < text.size() && (text[k] == '-' || text[k] == '+')) ++k;
  if (k == text.size())
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  for (std::size_t d = k; d < text.size(); ++d)
    if (!std::isdigit(static_cast<unsigned char>(text[d])))
      throw ParseError("malformed rational '" + std::string(whole) + "'");
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace obstructor
