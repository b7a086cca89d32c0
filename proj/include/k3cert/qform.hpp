#pragma once

// Diagonal quadratic spaces over Q and their local invariants, the
// orthogonal-complement rule inside a fixed ambient space, and the
// three-condition embedding criterion for CM fields.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "k3cert/arith.hpp"

namespace k3cert::qform {

using arith::Br2Class;
using arith::Place;
using arith::Rat;
using arith::SquareClass;

/// Diagonal form <a_1, ..., a_m> with nonzero rational entries.
class QuadSpace {
 public:
  // Throws std::invalid_argument on an empty list or a zero entry.
  explicit QuadSpace(std::vector<Rat> entries);

  const std::vector<Rat>& entries() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.size()); }

  QuadSpace direct_sum(const QuadSpace& other) const;

 private:
  std::vector<Rat> entries_;
};

struct Signature {
  int pos = 0;
  int neg = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// dim, det, signature and the local Hasse invariants of a quadratic space.
///
/// `hasse` holds every place at which the invariant was evaluated; places
/// outside it carry the trivial class.  Only nonzero entries are
/// significant, so two invariants compare equal when they agree on the union
/// of their supports.
struct SpaceInvariants {
  int dim = 0;
  SquareClass det;
  Signature sig;
  std::map<Place, Br2Class> hasse;

  Br2Class hasse_at(const Place& v) const;
  // Places where the Hasse invariant is nontrivial.
  std::set<Place> nontrivial_places() const;

  friend bool operator==(const SpaceInvariants& a, const SpaceInvariants& b);
};

SpaceInvariants invariants(const QuadSpace& V);

// <1, -1> repeated m times.
QuadSpace hyperbolic(int m);

// Invariants of V ⊕ W from those of V and W.
SpaceInvariants direct_sum_invariants(const SpaceInvariants& v, const SpaceInvariants& w);

// Invariants of T where ambient = sub ⊕ T.
SpaceInvariants complement_invariants(const SpaceInvariants& ambient, const SpaceInvariants& sub);

/// What the caller knows about a CM field F of degree 2m.
///
/// `n` is the positive integer with disc(F) = (-1)^m n.  Splitting data is
/// supplied, never computed: `nonsplit_witness` is a prime with a place of
/// the totally real subfield that does not split in F, and `split_table[p]`
/// records whether every place above p splits.
struct CMFieldData {
  int degree = 0;
  arith::Integer n = 1;
  bool disc_is_square = true;
  std::optional<std::uint64_t> nonsplit_witness;
  std::map<std::uint64_t, bool> split_table;

  // Throws std::invalid_argument when the fields are inconsistent.
  void validate() const;
  int half_degree() const { return degree / 2; }
};

enum class HyperbolicityStatus { Pass, ConditionalPass, NeedsData, Fail };

enum class NonsplitReason {
  Witness,           // the caller's nonsplit witness prime
  SplitTableFalse,   // split_table[p] == false
  DiscNotLocalSquare,  // disc(F) is not a square in Q_p, so F cannot split completely above p
};

struct HyperbolicityReport {
  HyperbolicityStatus status = HyperbolicityStatus::Pass;
  // Primes p with w(V_p) != w(U^m_p), ascending.
  std::vector<std::uint64_t> discrepancies;
  std::map<std::uint64_t, NonsplitReason> certified_nonsplit;
  // Discrepancy primes whose split behaviour is unknown.
  std::vector<std::uint64_t> needs_data;
  // Discrepancy primes the split table marks as split.
  std::vector<std::uint64_t> split_conflicts;
};

HyperbolicityReport hyperbolicity_check(const SpaceInvariants& V, const CMFieldData& F);
HyperbolicityReport hyperbolicity_check(const QuadSpace& V, const CMFieldData& F);

enum class Outcome { Holds, Fails, Undetermined };

struct BayerVerdict {
  Outcome outcome = Outcome::Fails;
  bool det_matches = false;
  SquareClass det;
  SquareClass expected_det;
  bool signature_even = false;
  Signature sig;
  HyperbolicityReport hyperbolicity;
};

// Evaluates det(V) = (-1)^m disc(F), evenness of both signature components,
// and the hyperbolicity condition.  Holds when all three pass (a
// conditional hyperbolicity pass counts), Undetermined when only missing
// split data stands in the way.
BayerVerdict bayer_criterion(const SpaceInvariants& V, const CMFieldData& F);
BayerVerdict bayer_criterion(const QuadSpace& V, const CMFieldData& F);

const char* to_string(HyperbolicityStatus s);
const char* to_string(NonsplitReason r);
const char* to_string(Outcome o);

}  // namespace k3cert::qform
