#include "k3cert/k3lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace k3cert::lattice {

using arith::Rat;

Block Block::diag(Integer d) {
  if (d == 0 || d % 2 != 0) throw std::invalid_argument("diagonal block must be even and nonzero, got " + d.get_str());
  Block b;
  b.hyperbolic_ = false;
  b.d_ = std::move(d);
  return b;
}

LatticeSpec::LatticeSpec(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}

int LatticeSpec::rank() const {
  int r = 0;
  for (const Block& b : blocks_) r += b.rank();
  return r;
}

qform::Signature LatticeSpec::signature() const {
  qform::Signature s;
  for (const Block& b : blocks_) {
    if (b.is_hyperbolic()) {
      ++s.pos;
      ++s.neg;
    } else {
      ++(b.diag_entry() > 0 ? s.pos : s.neg);
    }
  }
  return s;
}

bool LatticeSpec::is_even() const {
  for (const Block& b : blocks_) {
    if (!b.is_hyperbolic() && b.diag_entry() % 2 != 0) return false;
  }
  return true;
}

qform::SpaceInvariants k3_ambient_invariants() {
  qform::SpaceInvariants inv;
  inv.dim = 22;
  inv.det = arith::SquareClass{-1, 1};
  inv.sig = {3, 19};
  for (const auto& v : {arith::Place::finite(2), arith::Place::infinite()}) {
    inv.hasse.emplace(v, arith::hilbert(-1, -1, v));
  }
  return inv;
}

LatticeSpec build_N(int m, const qform::CMFieldData& F) {
  if (m < 6 || m > 10) throw std::invalid_argument("build_N needs 6 <= m <= 10, got " + std::to_string(m));
  F.validate();
  if (F.degree != 2 * m) throw std::invalid_argument("CM field degree must equal 2m");

  const Integer& n = F.n;
  std::vector<Block> blocks;
  auto diag = [&](Integer d) { blocks.push_back(Block::diag(std::move(d))); };

  if (m == 10) {
    if (F.disc_is_square) {
      blocks.push_back(Block::hyperbolic());
    } else {
      diag(2);
      diag(-8 * n);
    }
    return LatticeSpec(std::move(blocks));
  }

  blocks.push_back(Block::hyperbolic());
  diag(-4 * n);
  if (m == 6 || m == 9) {
    for (int i = 0; i < 19 - 2 * m; ++i) diag(-4);
    return LatticeSpec(std::move(blocks));
  }

  if (!F.nonsplit_witness) throw std::invalid_argument("m = 7, 8 need a nonsplit witness prime p1");
  const std::uint64_t p1 = *F.nonsplit_witness;
  const std::uint64_t p2 = arith::find_p2(p1);
  const Integer ip1(std::to_string(p1));
  const Integer ip2(std::to_string(p2));
  if (m == 7) {
    diag(-4);
    diag(-4);
  }
  diag(-4 * ip1);
  diag(-4 * ip2);
  diag(-4 * ip1 * ip2);
  return LatticeSpec(std::move(blocks));
}

qform::QuadSpace rationalize(const LatticeSpec& L) {
  std::vector<Rat> entries;
  for (const Block& b : L.blocks()) {
    if (b.is_hyperbolic()) {
      entries.emplace_back(1);
      entries.emplace_back(-1);
    } else {
      entries.emplace_back(arith::square_class(Rat(b.diag_entry())).representative());
    }
  }
  return qform::QuadSpace(std::move(entries));
}

NoMinusTwoCertificate no_minus_two_vector(const Integer& n, std::int64_t bound) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (bound < 0) throw std::invalid_argument("search bound must be nonnegative");
  NoMinusTwoCertificate cert;
  cert.n = n;
  cert.search_bound = bound;

  for (int a = 0; a < 4; ++a) {
    const int s = (a * a) % 4;
    if (std::find(cert.squares_mod4.begin(), cert.squares_mod4.end(), s) == cert.squares_mod4.end()) {
      cert.squares_mod4.push_back(s);
    }
  }
  cert.congruence_obstruction = true;
  for (int s : cert.squares_mod4) {
    if ((s + 1) % 4 == 0) cert.congruence_obstruction = false;
  }

  // For each b the equation fixes a^2, so scanning b with an exact square
  // test covers every (a, b) in the box.
  const Integer limit = Integer(std::to_string(bound)) * Integer(std::to_string(bound));
  for (std::int64_t b = 0; b <= bound; ++b) {
    const Integer nb2 = 4 * n * Integer(std::to_string(b)) * Integer(std::to_string(b));
    // 2a^2 - 8nb^2 = -2  <=>  a^2 = 4nb^2 - 1
    const Integer minus = nb2 - 1;
    if (minus >= 0 && minus <= limit && mpz_perfect_square_p(minus.get_mpz_t())) {
      const std::uint64_t a_signs = minus == 0 ? 1 : 2;
      cert.minus_two_solutions += a_signs * (b == 0 ? 1 : 2);
    }
    // 2a^2 - 8nb^2 = 2  <=>  a^2 = 4nb^2 + 1
    const Integer plus = nb2 + 1;
    if (!cert.plus_two_vector && plus <= limit && mpz_perfect_square_p(plus.get_mpz_t())) {
      Integer a = sqrt(plus);
      cert.plus_two_vector = std::make_pair(static_cast<std::int64_t>(a.get_si()), b);
    }
  }
  cert.certified = cert.congruence_obstruction && cert.minus_two_solutions == 0;
  return cert;
}

LatticeReport verify_latticeCM(int m, const qform::CMFieldData& F) {
  LatticeReport r;
  r.m = m;
  r.N = build_N(m, F);
  if (m == 7 || m == 8) {
    r.p1 = F.nonsplit_witness;
    r.p2 = arith::find_p2(*F.nonsplit_witness);
  }
  r.rank = r.N.rank();
  r.signature = r.N.signature();
  r.is_even = r.N.is_even();
  r.rational_space = rationalize(r.N);
  r.N_invariants = qform::invariants(r.rational_space);
  r.T_invariants = qform::complement_invariants(k3_ambient_invariants(), r.N_invariants);
  r.bayer = qform::bayer_criterion(r.T_invariants, F);
  r.embedding_hypothesis = r.rank <= 10;
  r.has_U_embedding = r.N.starts_with_hyperbolic();
  if (m == 10 && !F.disc_is_square) {
    r.no_minus2_certificate = no_minus_two_vector(F.n);
    r.degree2_vector = r.no_minus2_certificate->plus_two_vector;
  }
  return r;
}

}  // namespace k3cert::lattice
