#pragma once

// The six-part condition characterizing transcendental parts of K3
// L-functions, the explicit constructors that produce polynomials meeting
// it, and the (Picard number, height) feasibility oracle.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3cert/arith.hpp"
#include "k3cert/weilpoly.hpp"

namespace k3cert::condition {

using arith::Integer;
using weil::RatPoly;

enum class Status { Pass, Fail, Unknown };

const char* to_string(Status s);

struct BulletResult {
  Status status = Status::Unknown;
  std::string detail;
};

// Bullet keys, in the order they are checked.
inline const std::vector<std::string>& bullet_names() {
  static const std::vector<std::string> names{"unit_circle",  "no_roots_of_unity",    "integral_away_from_p",
                                              "slope_profile", "power_of_irreducible", "local_irreducibility"};
  return names;
}

struct Condition1Report {
  Status verdict = Status::Unknown;
  // First failing bullet, or first Unknown one when nothing fails.
  std::optional<std::string> failed_bullet;
  std::string reason;

  std::uint64_t p = 0;
  int m = 0;
  // h and a come from the negative slope of the Newton polygon; absent when
  // the polygon has no usable negative segment.
  std::optional<int> h;
  std::optional<Integer> a;
  std::optional<int> e;
  // p^a.
  std::optional<Integer> q;
  weil::NewtonPolygon slope_profile;
  std::map<std::string, BulletResult> checks;

  bool passed() const { return verdict == Status::Pass; }
};

// Requires L(0) = 1 and even degree 2m with 1 <= m <= 10.
Condition1Report check_condition1(const RatPoly& L, std::uint64_t p);

// Monic, degree m, m distinct nonzero real roots in (-2, 2).
RatPoly construct_F0(int m);

struct Witness {
  RatPoly L;
  Condition1Report report;
};

// Smallest a >= a_start with gcd(a, h) = 1 whose polynomial passes.
// Throws std::runtime_error when a exceeds a_cap.
Witness construct_L(std::uint64_t p, int m, int h, int a_start = 1, int a_cap = 50);

// Square of the (m = 5, h / 2) witness: m = 10, e = 2, even a.
Witness construct_L_even_h(std::uint64_t p, int h_even);

enum class FeasibilityReason { ArtinViolation, TheoremCase, WitnessProvided };
enum class WitnessStatus { Computed, UnsupportedCase, NotRequested, NotApplicable };

const char* to_string(FeasibilityReason r);
const char* to_string(WitnessStatus s);

struct FeasibilityVerdict {
  std::uint64_t p = 0;
  int rho = 0;
  int h = 0;
  bool feasible = false;
  FeasibilityReason reason = FeasibilityReason::ArtinViolation;
  std::string description;
  // 11 - rho / 2 when feasible.
  std::optional<int> m;
  std::optional<Witness> witness;
  WitnessStatus witness_status = WitnessStatus::NotRequested;
};

// Throws std::invalid_argument unless p >= 5 is prime, rho >= 2 is even and
// h >= 1.
FeasibilityVerdict feasibility(std::uint64_t p, int rho, int h, bool want_witness);

}  // namespace k3cert::condition
