#include "k3cert/condition.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace k3cert::condition {

using arith::Rat;
using weil::NewtonPolygon;
using weil::Segment;

namespace {

BulletResult pass(std::string detail = {}) { return {Status::Pass, std::move(detail)}; }
BulletResult fail(std::string detail) { return {Status::Fail, std::move(detail)}; }
BulletResult unknown(std::string detail) { return {Status::Unknown, std::move(detail)}; }

std::string describe(const NewtonPolygon& np) {
  std::string out = "[";
  for (std::size_t i = 0; i < np.segments.size(); ++i) {
    if (i) out += ", ";
    out += "(" + arith::to_string(np.segments[i].slope) + ", " + std::to_string(np.segments[i].length) + ")";
  }
  return out + "]";
}

Integer power_of(std::uint64_t p, const Integer& a) {
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, a.get_ui());
  return q;
}

void require_prime(std::uint64_t p) {
  if (!arith::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

// Bullet 4.  Fills h and a when the negative segment determines them.
BulletResult slope_profile(const NewtonPolygon& np, int m, Condition1Report& r) {
  const auto& s = np.segments;
  if (s.empty() || s.front().slope >= 0) return fail("no negative slope: " + describe(np));

  const Segment& neg = s.front();
  const Rat a_rat = -neg.slope * neg.length;
  r.h = neg.length;
  if (a_rat.get_den() != 1) return fail("slope times length is not integral: " + describe(np));
  r.a = a_rat.get_num();

  const int h = neg.length;
  const bool two = s.size() == 2;
  const bool three = s.size() == 3 && s[1].slope == 0 && s[1].length == 2 * m - 2 * h;
  if (!(two || three) || s.back().slope != -neg.slope || s.back().length != h) {
    return fail("profile is not (-a/h, 0, a/h): " + describe(np));
  }
  if (two && h != m) return fail("profile is not (-a/h, 0, a/h): " + describe(np));
  if (h < 1 || h > m) return fail("h = " + std::to_string(h) + " outside 1..m");
  return pass("h=" + std::to_string(h) + " a=" + r.a->get_str() + " " + describe(np));
}

// Bullet 6 on the factor of Q whose roots have negative valuation, which
// is the positive-slope part of the polygon.
BulletResult local_irreducibility(const RatPoly& Q, std::uint64_t p) {
  const NewtonPolygon np = weil::newton_polygon(Q, p);
  std::vector<Segment> part;
  for (const Segment& s : np.segments) {
    if (s.slope > 0) part.push_back(s);
  }
  if (part.empty()) return fail("Q has no root of negative valuation");
  if (part.size() > 1) return fail("Q has several negative-valuation slopes: " + describe(np));
  const Segment& seg = part.front();
  // The slope is a'/h' in lowest terms exactly when its denominator is the
  // full segment length; then every root generates a totally ramified
  // extension of degree h'.
  const Integer den = seg.slope.get_den();
  if (den == seg.length) {
    return pass("pure slope " + arith::to_string(seg.slope) + " over length " + std::to_string(seg.length));
  }
  return unknown("slope " + arith::to_string(seg.slope) + " over length " + std::to_string(seg.length) +
                 " is not pure");
}

// Bullet 5.
BulletResult power_of_irreducible(const RatPoly& L, std::uint64_t p, Condition1Report& r,
                                  std::optional<RatPoly>& base) {
  const auto dec = weil::squarefree_decompose(L);
  if (!dec) return fail("L is not a power of its squarefree part");
  r.e = dec->exponent;
  base = dec->base;
  const RatPoly& Q = dec->base;
  const std::string shape = "e=" + std::to_string(dec->exponent) + " deg Q=" + std::to_string(Q.degree());

  const auto cert = weil::kronecker_certificate(Q, p);
  if (cert.certified()) return pass(shape + ", irreducibility certified");

  if (const auto k = weil::has_cyclotomic_factor(Q)) {
    if (weil::cyclotomic_polynomial(*k).normalized_constant() == Q) return pass(shape + ", Q is Phi_" + std::to_string(*k));
    return fail(shape + ", Phi_" + std::to_string(*k) + " is a proper factor of Q");
  }
  std::string failed;
  for (const auto& pr : cert.premises) {
    if (!pr.holds) failed += (failed.empty() ? "" : ", ") + pr.name;
  }
  return unknown(shape + ", certificate premises not met: " + failed);
}

void check_shape(const RatPoly& L) {
  if (L.is_zero() || L.coeff(0) != 1) throw std::invalid_argument("L(0) must be 1");
  const int d = L.degree();
  if (d < 2 || d > 20 || d % 2 != 0) {
    throw std::invalid_argument("L must have even degree between 2 and 20, got " + std::to_string(d));
  }
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "Pass";
    case Status::Fail:
      return "Fail";
    case Status::Unknown:
      return "Unknown";
  }
  return "?";
}

const char* to_string(FeasibilityReason r) {
  switch (r) {
    case FeasibilityReason::ArtinViolation:
      return "ArtinViolation";
    case FeasibilityReason::TheoremCase:
      return "TheoremCase";
    case FeasibilityReason::WitnessProvided:
      return "WitnessProvided";
  }
  return "?";
}

const char* to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Computed:
      return "Computed";
    case WitnessStatus::UnsupportedCase:
      return "UnsupportedCase";
    case WitnessStatus::NotRequested:
      return "NotRequested";
    case WitnessStatus::NotApplicable:
      return "NotApplicable";
  }
  return "?";
}

Condition1Report check_condition1(const RatPoly& L, std::uint64_t p) {
  require_prime(p);
  check_shape(L);

  Condition1Report r;
  r.p = p;
  r.m = L.degree() / 2;
  r.slope_profile = weil::newton_polygon(L, p);

  r.checks["unit_circle"] =
      weil::unit_circle_check(L) ? pass() : fail("some root lies off the unit circle");

  if (const auto k = weil::has_cyclotomic_factor(L)) {
    r.checks["no_roots_of_unity"] = fail("Phi_" + std::to_string(*k) + " divides L");
  } else {
    r.checks["no_roots_of_unity"] = pass();
  }

  r.checks["integral_away_from_p"] = weil::denominators_are_p_powers(L, p)
                                         ? pass()
                                         : fail("a coefficient denominator has a prime factor other than " +
                                                std::to_string(p));

  r.checks["slope_profile"] = slope_profile(r.slope_profile, r.m, r);
  if (r.a && *r.a >= 1) r.q = power_of(p, *r.a);

  std::optional<RatPoly> Q;
  r.checks["power_of_irreducible"] = power_of_irreducible(L, p, r, Q);
  r.checks["local_irreducibility"] = Q ? local_irreducibility(*Q, p) : fail("no decomposition L = Q^e");

  r.verdict = Status::Pass;
  for (const std::string& name : bullet_names()) {
    const BulletResult& b = r.checks.at(name);
    if (b.status == Status::Fail) {
      r.verdict = Status::Fail;
      r.failed_bullet = name;
      r.reason = b.detail;
      break;
    }
    if (b.status == Status::Unknown && r.verdict == Status::Pass) {
      r.verdict = Status::Unknown;
      r.failed_bullet = name;
      r.reason = b.detail;
    }
  }
  return r;
}

RatPoly construct_F0(int m) {
  if (m < 1 || m > 10) throw std::invalid_argument("construct_F0 needs 1 <= m <= 10, got " + std::to_string(m));
  const RatPoly f0(std::vector<Rat>{-1, 1});
  const RatPoly f1(std::vector<Rat>{-1, 0, 1});
  const RatPoly f2(std::vector<Rat>{-2, 0, 1});
  const RatPoly f3(std::vector<Rat>{-3, 0, 1});
  const RatPoly f4(std::vector<Rat>{1, -3, 0, 1});
  const RatPoly f5(std::vector<Rat>{1, 0, -4, 0, 1});

  RatPoly F0;
  switch (m) {
    case 1: F0 = f0; break;
    case 2: F0 = f1; break;
    case 3: F0 = f4; break;
    case 4: F0 = f5; break;
    case 5: F0 = f1 * f4; break;
    case 6: F0 = f1 * f5; break;
    case 7: F0 = f4 * f5; break;
    case 8: F0 = f1 * f2 * f5; break;
    case 9: F0 = f1 * f4 * f5; break;
    default: F0 = f1 * f2 * f3 * f5; break;
  }

  // m distinct real roots in (-2, 2), none of them 0.
  if (F0.degree() != m || F0.leading() != 1 || F0.coeff(0) == 0 || !weil::is_squarefree(F0) ||
      F0.evaluate(2) == 0 || weil::sturm_count(F0, -2, 2) != m) {
    throw std::logic_error("F0 table entry for m = " + std::to_string(m) + " violates its root conditions");
  }
  return F0;
}

Witness construct_L(std::uint64_t p, int m, int h, int a_start, int a_cap) {
  require_prime(p);
  if (m < 1 || m > 10) throw std::invalid_argument("m must be in 1..10, got " + std::to_string(m));
  if (h < 1 || h > m) throw std::invalid_argument("h must be in 1..m, got h=" + std::to_string(h));
  if (a_start < 1) throw std::invalid_argument("a_start must be positive");

  const RatPoly F0 = construct_F0(m);
  for (int a = a_start; a <= a_cap; ++a) {
    if (std::gcd(a, h) != 1) continue;
    Integer pa;
    mpz_ui_pow_ui(pa.get_mpz_t(), p, static_cast<unsigned long>(a));
    const RatPoly F = F0 + RatPoly::monomial(Rat(Integer(1), pa), m - h);
    const RatPoly L = weil::reciprocal_transform(F);
    Condition1Report report = check_condition1(L, p);
    if (!report.passed()) continue;
    if (report.m != m || report.h != h || report.e != 1 || report.a != Integer(a)) {
      throw std::logic_error("constructed witness passed with unexpected (m, h, a, e)");
    }
    return {L, std::move(report)};
  }
  throw std::runtime_error("no passing a in [" + std::to_string(a_start) + ", " + std::to_string(a_cap) +
                           "] for p=" + std::to_string(p) + " m=" + std::to_string(m) + " h=" + std::to_string(h));
}

Witness construct_L_even_h(std::uint64_t p, int h_even) {
  if (h_even < 2 || h_even > 10 || h_even % 2 != 0) {
    throw std::invalid_argument("h must be even in 2..10, got " + std::to_string(h_even));
  }
  const Witness base = construct_L(p, 5, h_even / 2);
  RatPoly L = base.L * base.L;
  Condition1Report report = check_condition1(L, p);
  if (!report.passed() || report.m != 10 || report.h != h_even || report.e != 2 ||
      report.a != 2 * *base.report.a) {
    throw std::logic_error("squared witness failed its own check for h=" + std::to_string(h_even));
  }
  return {std::move(L), std::move(report)};
}

FeasibilityVerdict feasibility(std::uint64_t p, int rho, int h, bool want_witness) {
  if (p < 5 || !arith::is_prime(p)) {
    throw std::invalid_argument("p must be a prime >= 5 (the existence theorem assumes p >= 5), got " +
                                std::to_string(p));
  }
  if (rho < 2 || rho % 2 != 0) throw std::invalid_argument("rho must be a positive even integer");
  if (h < 1) throw std::invalid_argument("h must be positive");

  FeasibilityVerdict v;
  v.p = p;
  v.rho = rho;
  v.h = h;
  if (rho > 22 - 2 * h) {
    v.feasible = false;
    v.reason = FeasibilityReason::ArtinViolation;
    v.description = "rho > 22 - 2h";
    v.witness_status = WitnessStatus::NotApplicable;
    return v;
  }

  v.feasible = true;
  v.reason = FeasibilityReason::TheoremCase;
  const int m = 11 - rho / 2;
  v.m = m;

  const bool unsupported = m == 10 && h % 2 == 1 && p == 5;
  if (m <= 9) {
    v.description = "m <= 9: explicit polynomial of degree 2m";
  } else if (h % 2 == 0) {
    v.description = "m = 10, h even: square of the m = 5 polynomial";
  } else if (unsupported) {
    v.description = "m = 10, h odd, p = 5: existence by theorem, no explicit polynomial";
  } else {
    v.description = "m = 10, h odd, p >= 7: explicit polynomial of degree 20";
  }

  if (unsupported) {
    v.witness_status = WitnessStatus::UnsupportedCase;
    return v;
  }
  if (!want_witness) {
    v.witness_status = WitnessStatus::NotRequested;
    return v;
  }

  Witness w = m == 10 && h % 2 == 0 ? construct_L_even_h(p, h) : construct_L(p, m, h);
  // Re-check rather than trust the constructor.
  w.report = check_condition1(w.L, p);
  if (!w.report.passed() || w.report.m != m || w.report.h != h) {
    throw std::logic_error("witness for rho=" + std::to_string(rho) + " h=" + std::to_string(h) +
                           " failed its re-check");
  }
  v.witness = std::move(w);
  v.witness_status = WitnessStatus::Computed;
  v.reason = FeasibilityReason::WitnessProvided;
  return v;
}

}  // namespace k3cert::condition
