#pragma once

// Even lattices assembled from hyperbolic planes U and even diagonal blocks,
// the case table producing the lattice N (rank 22 - 2m, signature
// (1, 21 - 2m)) for CM fields of degree 2m with 6 <= m <= 10, and the
// verification of every invariant identity the construction relies on.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3cert/arith.hpp"
#include "k3cert/qform.hpp"

namespace k3cert::lattice {

using arith::Integer;

/// Either the hyperbolic plane U (Gram matrix [[0,1],[1,0]]) or <d> with d
/// even and nonzero.
class Block {
 public:
  static Block hyperbolic() { return Block(); }
  // Throws std::invalid_argument unless d is even and nonzero.
  static Block diag(Integer d);

  bool is_hyperbolic() const { return hyperbolic_; }
  const Integer& diag_entry() const { return d_; }
  int rank() const { return hyperbolic_ ? 2 : 1; }

  friend bool operator==(const Block& a, const Block& b) { return a.hyperbolic_ == b.hyperbolic_ && a.d_ == b.d_; }

 private:
  Block() = default;
  bool hyperbolic_ = true;
  Integer d_ = 0;
};

class LatticeSpec {
 public:
  explicit LatticeSpec(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  int rank() const;
  qform::Signature signature() const;
  // Always true for valid blocks; recomputed from the Gram diagonal.
  bool is_even() const;
  bool starts_with_hyperbolic() const { return !blocks_.empty() && blocks_.front().is_hyperbolic(); }

 private:
  std::vector<Block> blocks_;
};

// dim 22, det -1, signature (3, 19), Hasse class (-1, -1) at every place.
qform::SpaceInvariants k3_ambient_invariants();

// The case-table lattice for 6 <= m <= 10.  m = 7, 8 need
// F.nonsplit_witness (p1); p2 is derived with arith::find_p2.
LatticeSpec build_N(int m, const qform::CMFieldData& F);

// U -> <1, -1>; <d> -> <square-free representative of d>.
qform::QuadSpace rationalize(const LatticeSpec& L);

/// Proof that <2> ⊕ <-8n> has no vector of square -2.
///
/// 2a^2 - 8nb^2 = -2 forces a^2 + 1 = 4nb^2 = 0 (mod 4); the certificate
/// records the squares mod 4 that rule this out, and an exhaustive search
/// of the box |a|, |b| <= bound that confirms it.
struct NoMinusTwoCertificate {
  Integer n;
  std::vector<int> squares_mod4;
  bool congruence_obstruction = false;
  std::int64_t search_bound = 0;
  std::uint64_t minus_two_solutions = 0;
  // First (a, b) in the box with 2a^2 - 8nb^2 = 2, if any.
  std::optional<std::pair<std::int64_t, std::int64_t>> plus_two_vector;
  bool certified = false;
};

NoMinusTwoCertificate no_minus_two_vector(const Integer& n, std::int64_t bound = 1000);

struct LatticeReport {
  int m = 0;
  LatticeSpec N{std::vector<Block>{}};
  std::optional<std::uint64_t> p1;
  std::optional<std::uint64_t> p2;
  int rank = 0;
  qform::Signature signature;
  bool is_even = false;
  qform::QuadSpace rational_space{std::vector<arith::Rat>{arith::Rat(1)}};
  qform::SpaceInvariants N_invariants;
  qform::SpaceInvariants T_invariants;
  qform::BayerVerdict bayer;
  // rank <= 10, which is what the primitive-embedding theorem needs.
  bool embedding_hypothesis = false;
  bool has_U_embedding = false;
  std::optional<std::pair<std::int64_t, std::int64_t>> degree2_vector;
  std::optional<NoMinusTwoCertificate> no_minus2_certificate;
};

LatticeReport verify_latticeCM(int m, const qform::CMFieldData& F);

}  // namespace k3cert::lattice
