#pragma once

// Exact univariate polynomials over Q and the root-location machinery the
// certificates are built from: the reciprocal transform, Sturm counting,
// unit-circle and cyclotomic tests, p-adic Newton polygons, perfect-power
// decomposition, and the Kronecker-style irreducibility certificate.
//
// No root is ever approximated.  Every claim about where roots lie comes
// from an exact computation over Q.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3cert/arith.hpp"

namespace k3cert::weil {

using arith::Integer;
using arith::Rat;

/// Dense polynomial with rational coefficients, ascending order.  The zero
/// polynomial has no stored coefficients and degree -1.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs);
  static RatPoly constant(const Rat& c);
  static RatPoly monomial(const Rat& c, int degree);
  // T.
  static RatPoly x();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  // Zero outside [0, degree].
  Rat coeff(int i) const;
  // Precondition: nonzero.
  const Rat& leading() const;

  Rat evaluate(const Rat& t) const;
  RatPoly derivative() const;
  RatPoly pow(unsigned e) const;
  RatPoly monic() const;
  // T^deg P(1/T).
  RatPoly reversed() const;
  // Rescaled so that P(0) = 1.  Precondition: P(0) != 0.
  RatPoly normalized_constant() const;

  RatPoly operator-() const;
  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly& operator*=(const RatPoly& o);
  RatPoly& operator*=(const Rat& c);
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(RatPoly a, const RatPoly& b) { return a *= b; }
  friend RatPoly operator*(RatPoly a, const Rat& c) { return a *= c; }
  friend RatPoly operator*(const Rat& c, RatPoly a) { return a *= c; }
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

// Quotient and remainder; throws std::domain_error when b is zero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
// Exact quotient, throwing std::domain_error if b does not divide a.
RatPoly exact_div(const RatPoly& a, const RatPoly& b);
bool divides(const RatPoly& b, const RatPoly& a);
// Monic gcd; gcd(0, 0) = 0.
RatPoly gcd(const RatPoly& a, const RatPoly& b);
bool is_squarefree(const RatPoly& f);

// Comma-separated ascending coefficients, e.g. "1,1/7,1,1/7,1".  The zero
// polynomial prints as "0".
std::string to_text(const RatPoly& f);
RatPoly parse_poly(std::string_view text);

/// Lower-hull edge of the Newton polygon.  A segment of slope s and
/// horizontal length l accounts for exactly l roots of p-adic valuation -s.
struct Segment {
  Rat slope;
  int length = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct NewtonPolygon {
  std::vector<Segment> segments;
  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
};

// Throws std::invalid_argument when P(0) = 0 or p is not prime.
NewtonPolygon newton_polygon(const RatPoly& P, std::uint64_t p);

// L(T) = T^m F(T + 1/T) for F of degree m.
RatPoly reciprocal_transform(const RatPoly& F);

// The unique G with L = T^m G(T + 1/T), or nullopt when L is not
// self-reciprocal of even degree 2m.
std::optional<RatPoly> chebyshev_descent(const RatPoly& L);

// Number of distinct real roots in (lo, hi] of a squarefree polynomial.
// Throws std::invalid_argument for a non-squarefree input or lo >= hi.
int sturm_count(const RatPoly& F, const Rat& lo, const Rat& hi);

// True iff every complex root of L has absolute value one.
bool unit_circle_check(const RatPoly& L);

// All k with phi(k) <= maxdeg, ascending.
std::vector<int> cyclotomic_index_list(int maxdeg);
// Phi_k by exact division of T^k - 1 by Phi_d for the proper divisors d.
RatPoly cyclotomic_polynomial(int k);

// Smallest k with Phi_k | L.
std::optional<int> has_cyclotomic_factor(const RatPoly& L);

struct StrippedPoly {
  // Normalized to constant term 1.
  RatPoly quotient;
  // Removed Phi_k indices with multiplicity, ascending.
  std::vector<int> removed;
};

// Divides out every cyclotomic factor.  Throws when P(0) = 0.
StrippedPoly strip_cyclotomic(const RatPoly& P);

struct PowerDecomposition {
  RatPoly base;
  int exponent = 1;
};

// (R, e) with L = R^e and R squarefree, R(0) = 1; nullopt when L is not a
// perfect power of its squarefree part.  Requires L(0) = 1.
std::optional<PowerDecomposition> squarefree_decompose(const RatPoly& L);

struct Premise {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct IrreducibilityCertificate {
  enum class Verdict { Certified, Unknown };
  Verdict verdict = Verdict::Unknown;
  // Length of the negative-slope segment and its slope numerator.
  std::optional<int> h;
  std::optional<Integer> a;
  std::vector<Premise> premises;

  bool certified() const { return verdict == Verdict::Certified; }
};

// Certifies irreducibility over Q of a squarefree R with R(0) = 1 from four
// checkable premises: a pure-slope Newton polygon (-a/h, 0, a/h) with
// gcd(a, h) = 1, no cyclotomic factor, all roots on the unit circle, and
// denominators that are powers of p.  Under these, any proper factor avoiding
// the negative-slope block is a monic integer polynomial with all roots on
// the unit circle, hence cyclotomic by Kronecker's theorem.  Failing
// premises give Unknown, never a reducibility claim.
IrreducibilityCertificate kronecker_certificate(const RatPoly& R, std::uint64_t p);

// True when every coefficient denominator is a power of p.
bool denominators_are_p_powers(const RatPoly& f, std::uint64_t p);

}  // namespace k3cert::weil
