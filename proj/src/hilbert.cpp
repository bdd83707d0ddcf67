#include "obstructor/hilbert.hpp"

#include <algorithm>

#include <gmp.h>

#include "obstructor/errors.hpp"

namespace obstructor {

namespace {

// Representative of the square class of q: num * den.
Integer square_class(const Rational& q) { return numerator(q) * denominator(q); }

// Strips p from n; returns the exponent.
int strip(Integer& n, const Integer& p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int legendre(const Integer& u, const Integer& p) {
  return mpz_legendre(u.backend().data(), p.backend().data());
}

int mod_positive(const Integer& n, int m) {
  int r = static_cast<int>(Integer(n % m).convert_to<long>());
  return r < 0 ? r + m : r;
}

// ε(u) = (u-1)/2 and ω(u) = (u²-1)/8 mod 2 for odd u.
int epsilon(const Integer& u) { return mod_positive(u, 4) == 1 ? 0 : 1; }
int omega(const Integer& u) {
  const int r = mod_positive(u, 8);
  return (r == 1 || r == 7) ? 0 : 1;
}

}  // namespace

Place Place::prime(const Integer& p) {
  if (!is_prime(p)) throw InvalidArgument("not a prime: " + p.str());
  return Place(p);
}

const Integer& Place::prime() const {
  if (!prime_) throw InvalidArgument("the infinite place has no prime");
  return *prime_;
}

std::string Place::to_string() const { return prime_ ? prime_->str() : "inf"; }

bool operator<(const Place& x, const Place& y) {
  if (x.is_infinite()) return false;
  if (y.is_infinite()) return true;
  return *x.prime_ < *y.prime_;
}

bool operator==(const Place& x, const Place& y) { return x.prime_ == y.prime_; }

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.backend().data(), 40) > 0;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  if (n == 0) throw InvalidArgument("prime_divisors: zero has no factorization");
  std::vector<Integer> out;
  Integer m = abs(n);
  bool rest_is_prime = is_prime(m);
  for (Integer d = 2; !rest_is_prime && d * d <= m; ++d) {
    if (m % d != 0) continue;
    out.push_back(d);
    strip(m, d);
    rest_is_prime = is_prime(m);
  }
  if (m > 1) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw InvalidArgument("hilbert_symbol: arguments must be nonzero");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;

  const Integer& p = v.prime();
  Integer u = square_class(a);
  Integer w = square_class(b);
  const int alpha = strip(u, p);
  const int beta = strip(w, p);

  if (p == 2) {
    const int e = epsilon(u) * epsilon(w) + alpha * omega(w) + beta * omega(u);
    return (e % 2 == 0) ? 1 : -1;
  }
  // (-1)^{αβε(p)} (u/p)^β (w/p)^α
  int s = 1;
  if ((alpha * beta) % 2 == 1 && epsilon(p) == 1) s = -s;
  if (beta % 2 == 1) s *= legendre(u, p);
  if (alpha % 2 == 1) s *= legendre(w, p);
  return s;
}

std::vector<Place> relevant_places(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw InvalidArgument("relevant_places: arguments must be nonzero");
  std::vector<Integer> primes{2};
  for (const Integer& n : {numerator(a), denominator(a), numerator(b), denominator(b)})
    for (const Integer& p : prime_divisors(n)) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<Place> out;
  for (const Integer& p : primes) out.push_back(Place::prime(p));
  out.push_back(Place::infinity());
  return out;
}

std::vector<Place> ramified_places(const Rational& a, const Rational& b) {
  std::vector<Place> out;
  for (const Place& v : relevant_places(a, b))
    if (hilbert_symbol(a, b, v) == -1) out.push_back(v);
  return out;
}

}  // namespace obstructor
