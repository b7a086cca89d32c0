#pragma once

// Exact integer and rational arithmetic for the certificate builders:
// p-adic valuations, square classes, Legendre and Hilbert symbols, and the
// small prime searches used by the lattice constructor.
//
// Big integers and rationals are GMP's C++ classes.  Everything that needs
// factorization (square classes, Hasse supports) is restricted to integers
// below 2^64; larger inputs raise std::domain_error.

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace k3cert::arith {

using Integer = mpz_class;
using Rat = mpq_class;

// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);
// Same test on a big integer; throws std::domain_error when n >= 2^64.
bool is_prime(const Integer& n);

// Prime factorization of n >= 1 as ascending (prime, exponent) pairs.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// Converts |n| to uint64, throwing std::domain_error if it does not fit.
std::uint64_t to_u64(const Integer& n);

/// ν_p of a rational: an integer, or +∞ for zero.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(); }
  explicit Valuation(long v) : finite_(true), value_(v) {}

  bool is_infinite() const { return !finite_; }
  // Precondition: finite.
  long value() const;

  friend Valuation operator+(Valuation a, Valuation b);
  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);

 private:
  Valuation() = default;
  bool finite_ = false;
  long value_ = 0;
};

/// A place of Q: a prime p or the real place.
class Place {
 public:
  static Place infinite() { return Place(); }
  // Throws std::invalid_argument unless p is prime.
  static Place finite(std::uint64_t p);

  bool is_infinite() const { return infinite_; }
  std::uint64_t prime() const;

  // "inf" or the decimal prime.
  std::string to_string() const;
  // Inverse of to_string.
  static Place parse(std::string_view token);

  // Finite places ascend by prime; the real place sorts last.
  friend std::strong_ordering operator<=>(const Place& a, const Place& b);
  friend bool operator==(const Place& a, const Place& b) = default;

 private:
  Place() = default;
  bool infinite_ = true;
  std::uint64_t p_ = 0;
};

/// Element of Q*/(Q*)^2 in canonical form (sign, squarefree positive part).
struct SquareClass {
  int sign = 1;
  Integer squarefree = 1;

  Integer representative() const { return sign * squarefree; }
  bool is_trivial() const { return sign == 1 && squarefree == 1; }
  SquareClass operator*(const SquareClass& other) const;
  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.sign == b.sign && a.squarefree == b.squarefree;
  }
};

/// Element of Br(Q_v)[2] = Z/2, written additively.
struct Br2Class {
  unsigned bit = 0;

  Br2Class operator+(Br2Class o) const { return Br2Class{bit ^ o.bit}; }
  Br2Class& operator+=(Br2Class o) {
    bit ^= o.bit;
    return *this;
  }
  bool is_trivial() const { return bit == 0; }
  friend bool operator==(Br2Class, Br2Class) = default;
};

// Throws std::invalid_argument when p is not prime.
Valuation val_p(const Rat& x, std::uint64_t p);

// Legendre symbol (a/p) for an odd prime p.
int legendre(const Integer& a, std::uint64_t p);

// Hilbert symbol (a, b)_v via the closed-form local formulas.
Br2Class hilbert(const Rat& a, const Rat& b, const Place& v);

SquareClass square_class(const Rat& x);

// True when x is a nonzero square in Q_p.
bool is_local_square(const Rat& x, std::uint64_t p);

// Primes dividing the numerator or denominator of x.
std::set<std::uint64_t> prime_support(const Rat& x);

// Smallest prime q with q = x (mod p) and q = 3 (mod 4).
std::uint64_t next_progression_prime(std::uint64_t p, std::int64_t x);

// Smallest odd prime p2 != p1 with p2 = 3 (mod 4) and (p2/p1) = +1 when
// p1 = 3 (mod 4), -1 when p1 = 1 (mod 4).
std::uint64_t find_p2(std::uint64_t p1);

// "num/den" text, den omitted when 1.
std::string to_string(const Rat& x);
// Parses "num" or "num/den"; throws std::invalid_argument on malformed text
// or a zero denominator.
Rat parse_rational(std::string_view text);

}  // namespace k3cert::arith
