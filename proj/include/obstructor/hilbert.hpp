#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obstructor/rational.hpp"

namespace obstructor {

/// A place of Q: a rational prime or the real place.
class Place {
 public:
  static Place infinity() { return Place(std::nullopt); }
  /// Throws InvalidArgument unless p is prime.
  static Place prime(const Integer& p);

  bool is_infinite() const { return !prime_.has_value(); }
  const Integer& prime() const;
  std::string to_string() const;

  /// Finite places ascending, then infinity.
  friend bool operator<(const Place& x, const Place& y);
  friend bool operator==(const Place& x, const Place& y);

 private:
  explicit Place(std::optional<Integer> p) : prime_(std::move(p)) {}
  std::optional<Integer> prime_;
};

bool is_prime(const Integer& n);

/// Distinct prime divisors of |n| (n != 0), ascending. Trial division.
std::vector<Integer> prime_divisors(const Integer& n);

/// Local Hilbert symbol (a,b)_v ∈ {+1,-1}; a, b nonzero.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// ∞ together with every prime dividing 2ab (numerators and denominators).
/// The symbol is +1 at every place outside this list.
std::vector<Place> relevant_places(const Rational& a, const Rational& b);

/// Places where (a,b)/Q ramifies, i.e. (a,b)_v = -1.
std::vector<Place> ramified_places(const Rational& a, const Rational& b);

}  // namespace obstructor
