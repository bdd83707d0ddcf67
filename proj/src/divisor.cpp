#include "obstructor/divisor.hpp"

#include <cctype>
#include <charconv>

#include "obstructor/errors.hpp"

namespace obstructor {

namespace {

using Terms = MultiHomogPoly::Terms;
using Exponents = MultiHomogPoly::Exponents;

constexpr int kMaxPower = 1000;

std::vector<int> multidegree(const Exponents& e) {
  std::vector<int> d(e.size() / 2);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = e[2 * i] + e[2 * i + 1];
  return d;
}

std::string monomial_string(const Exponents& e) {
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += (k % 2 == 0 ? 'x' : 'y');
    out += std::to_string(k / 2 + 1);
    if (e[k] > 1) out += '^' + std::to_string(e[k]);
  }
  return out;
}

std::string term_string(const Exponents& e, const Rational& c) {
  const std::string m = monomial_string(e);
  if (m.empty()) return to_string(c);
  if (c == 1) return m;
  if (c == -1) return "-" + m;
  return to_string(c) + "*" + m;
}

std::string degree_string(const std::vector<int>& d) {
  std::string out = "(";
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + std::to_string(d[i]);
  return out + ")";
}

void add_into(Terms& acc, const Exponents& e, const Rational& c) {
  auto [it, inserted] = acc.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) acc.erase(it);
  } else if (is_zero(c)) {
    acc.erase(it);
  }
}

Terms multiply_terms(const Terms& f, const Terms& g) {
  Terms out;
  for (const auto& [ef, cf] : f)
    for (const auto& [eg, cg] : g) {
      Exponents e(ef.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ef[k] + eg[k];
      add_into(out, e, cf * cg);
    }
  return out;
}

Rational rational_power(const Rational& q, int n) {
  Rational out = 1;
  for (int k = 0; k < n; ++k) out *= q;
  return out;
}

void check_factor(int r, int i) {
  if (i < 1 || i > r) throw InvalidArgument("factor index " + std::to_string(i) + " outside 1.." + std::to_string(r));
}

// Recursive descent over possibly inhomogeneous polynomials; homogeneity is
// checked once the whole input is read.
class Parser {
 public:
  Parser(std::string_view text, int r) : text_(text), r_(r) {}

  Terms parse() {
    Terms t = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("poly: " + what + " at position " + std::to_string(pos_), pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // '+' or '-' (ASCII or U+2212) at the current position; 0 otherwise.
  char peek_sign() {
    skip_space();
    if (pos_ >= text_.size()) return 0;
    if (text_[pos_] == '+' || text_[pos_] == '-') return text_[pos_];
    if (text_.substr(pos_, 3) == "−") return '-';
    return 0;
  }

  void consume_sign() { pos_ += text_[pos_] == '+' || text_[pos_] == '-' ? 1 : 3; }

  Terms expr() {
    Terms acc;
    bool first = true;
    for (;;) {
      const char s = peek_sign();
      if (!first && s == 0) break;
      if (s != 0) consume_sign();
      const Terms t = term();
      for (const auto& [e, c] : t) add_into(acc, e, s == '-' ? Rational(-c) : c);
      first = false;
    }
    return acc;
  }

  Terms term() {
    Terms acc = power();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '*') break;
      ++pos_;
      acc = multiply_terms(acc, power());
    }
    return acc;
  }

  Terms power() {
    Terms base = primary();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      const int n = integer("exponent");
      if (n > kMaxPower) fail("exponent too large");
      Terms acc{{Exponents(2 * r_, 0), Rational(1)}};
      for (int k = 0; k < n; ++k) acc = multiply_terms(acc, base);
      return acc;
    }
    return base;
  }

  int integer(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) {
      pos_ = start;
      fail(std::string("expected ") + what);
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc()) {
      pos_ = start;
      fail(std::string(what) + " out of range");
    }
    return value;
  }

  Terms primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Terms inner = expr();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x' || c == 'y') {
      const std::size_t start = pos_;
      ++pos_;
      const int i = integer("variable index");
      if (i < 1 || i > r_) {
        pos_ = start;
        fail("variable " + std::string(text_.substr(start, 1)) + std::to_string(i) + " outside 1.." +
             std::to_string(r_));
      }
      Exponents e(2 * r_, 0);
      e[2 * (i - 1) + (c == 'y' ? 1 : 0)] = 1;
      return {{e, Rational(1)}};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        const std::size_t den = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (den == pos_) fail("expected denominator");
      }
      Rational q;
      try {
        q = parse_rational(text_.substr(start, pos_ - start));
      } catch (const ParseError& err) {
        pos_ = start;
        fail(err.what());
      }
      if (is_zero(q)) return {};
      return {{Exponents(2 * r_, 0), q}};
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int r_;
  std::size_t pos_ = 0;
};

}  // namespace

ProjectivePoint::ProjectivePoint(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {
  if (is_zero(x) && is_zero(y)) throw InvalidArgument("projective point [0:0] is not a point");
}

std::string to_string(const ProjectivePoint& pt) { return "[" + to_string(pt.x) + ":" + to_string(pt.y) + "]"; }

MultiHomogPoly::MultiHomogPoly(int r) : r_(r), degrees_(static_cast<std::size_t>(r), 0) {
  if (r < 1) throw InvalidArgument("MultiHomogPoly: r must be >= 1");
}

MultiHomogPoly::MultiHomogPoly(int r, Terms terms) : MultiHomogPoly(r) {
  for (auto& [e, c] : terms) {
    if (e.size() != static_cast<std::size_t>(2 * r)) throw DimensionMismatch("MultiHomogPoly: exponent length");
    for (int a : e)
      if (a < 0) throw InvalidArgument("MultiHomogPoly: negative exponent");
    if (!obstructor::is_zero(c)) terms_.emplace(e, c);
  }
  if (terms_.empty()) return;
  // Reference multidegree: that of the leading (largest) term.
  const auto& lead = *terms_.rbegin();
  degrees_ = multidegree(lead.first);
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (multidegree(it->first) != degrees_)
      throw ValidationError("inhomogeneous term " + term_string(it->first, it->second) + ": multidegree " +
                            degree_string(multidegree(it->first)) + " differs from " + degree_string(degrees_) +
                            " of " + term_string(lead.first, lead.second));
  }
}

MultiHomogPoly MultiHomogPoly::constant(int r, const Rational& c) {
  return MultiHomogPoly(r, {{Exponents(2 * r, 0), c}});
}

MultiHomogPoly parse_poly(std::string_view text, int r) {
  if (r < 1) throw InvalidArgument("parse_poly: r must be >= 1");
  return MultiHomogPoly(r, Parser(text, r).parse());
}

namespace {

void check_compatible(const MultiHomogPoly& f, const MultiHomogPoly& g) {
  if (f.r() != g.r()) throw DimensionMismatch("polynomials on (P^1)^" + std::to_string(f.r()) + " and (P^1)^" +
                                              std::to_string(g.r()));
}

}  // namespace

MultiHomogPoly operator+(const MultiHomogPoly& f, const MultiHomogPoly& g) {
  check_compatible(f, g);
  if (!f.is_zero() && !g.is_zero() && f.degrees() != g.degrees())
    throw DimensionMismatch("sum of multidegrees " + degree_string(f.degrees()) + " and " +
                            degree_string(g.degrees()));
  Terms t = f.terms();
  for (const auto& [e, c] : g.terms()) add_into(t, e, c);
  return MultiHomogPoly(f.r(), std::move(t));
}

MultiHomogPoly operator-(const MultiHomogPoly& f) {
  Terms t = f.terms();
  for (auto& [e, c] : t) c = -c;
  return MultiHomogPoly(f.r(), std::move(t));
}

MultiHomogPoly operator-(const MultiHomogPoly& f, const MultiHomogPoly& g) { return f + (-g); }

MultiHomogPoly operator*(const MultiHomogPoly& f, const MultiHomogPoly& g) {
  check_compatible(f, g);
  return MultiHomogPoly(f.r(), multiply_terms(f.terms(), g.terms()));
}

MultiHomogPoly substitute_powers(const MultiHomogPoly& f, const std::vector<int>& exps) {
  if (exps.size() != static_cast<std::size_t>(f.r()))
    throw DimensionMismatch("substitute_powers: " + std::to_string(exps.size()) + " exponents for r = " +
                            std::to_string(f.r()));
  for (int e : exps)
    if (e < 1) throw InvalidArgument("substitute_powers: exponents must be positive");
  Terms t;
  for (const auto& [e, c] : f.terms()) {
    Exponents scaled(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) scaled[k] = e[k] * exps[k / 2];
    t.emplace(std::move(scaled), c);
  }
  return MultiHomogPoly(f.r(), std::move(t));
}

bool verify_factorization(const MultiHomogPoly& f, const std::vector<MultiHomogPoly>& factors) {
  MultiHomogPoly product = MultiHomogPoly::constant(f.r(), 1);
  bool any_zero = false;
  std::vector<int> degree_sum(static_cast<std::size_t>(f.r()), 0);
  for (const auto& h : factors) {
    check_compatible(f, h);
    any_zero = any_zero || h.is_zero();
    for (int i = 0; i < f.r(); ++i) degree_sum[i] += h.degrees()[i];
    product = product * h;
  }
  if (!any_zero && !f.is_zero() && degree_sum != f.degrees())
    throw DimensionMismatch("factor multidegrees add up to " + degree_string(degree_sum) + ", not " +
                            degree_string(f.degrees()));
  return product == f;
}

MultiHomogPoly restrict_to_fibers(const MultiHomogPoly& f,
                                  const std::vector<std::pair<int, ProjectivePoint>>& fibers) {
  for (std::size_t a = 0; a < fibers.size(); ++a) {
    check_factor(f.r(), fibers[a].first);
    for (std::size_t b = 0; b < a; ++b)
      if (fibers[a].first == fibers[b].first)
        throw InvalidArgument("restrict_to_fibers: factor " + std::to_string(fibers[a].first) + " given twice");
  }
  Terms t;
  for (const auto& [e, c] : f.terms()) {
    Exponents rest = e;
    Rational value = c;
    for (const auto& [i, pt] : fibers) {
      const std::size_t k = 2 * static_cast<std::size_t>(i - 1);
      value *= rational_power(pt.x, e[k]) * rational_power(pt.y, e[k + 1]);
      rest[k] = rest[k + 1] = 0;
    }
    add_into(t, rest, value);
  }
  return MultiHomogPoly(f.r(), std::move(t));
}

bool contains_double_fiber(const MultiHomogPoly& f, int i, const ProjectivePoint& pt_i, int j,
                           const ProjectivePoint& pt_j) {
  if (i == j) throw InvalidArgument("contains_double_fiber: factors must differ");
  return restrict_to_fibers(f, {{i, pt_i}, {j, pt_j}}).is_zero();
}

std::string to_string(const MultiHomogPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    std::string t = term_string(it->first, it->second);
    if (out.empty()) {
      out = t;
    } else if (t.front() == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

ProjectivePoint parse_point(std::string_view text) {
  const auto open = text.find('[');
  const auto colon = text.find(':');
  const auto close = text.find(']');
  if (open != 0 || colon == std::string_view::npos || close != text.size() - 1 || colon < open || colon > close)
    throw ParseError("point: expected [a:b], got '" + std::string(text) + "'");
  return ProjectivePoint(parse_rational(text.substr(1, colon - 1)),
                         parse_rational(text.substr(colon + 1, close - colon - 1)));
}

std::pair<int, ProjectivePoint> parse_fiber(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0)
    throw ParseError("fiber: expected i:[a:b], got '" + std::string(text) + "'");
  int i = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + colon, i);
  if (ec != std::errc() || ptr != text.data() + colon)
    throw ParseError("fiber: bad factor index in '" + std::string(text) + "'", 0);
  return {i, parse_point(text.substr(colon + 1))};
}

}  // namespace obstructor
