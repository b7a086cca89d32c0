#include "k3cert/qform.hpp"

#include <stdexcept>
#include <string>

namespace k3cert::qform {

namespace {

// {2, inf} plus every prime dividing a numerator or denominator.
std::set<Place> base_support(std::initializer_list<const Rat*> values) {
  std::set<Place> out{Place::finite(2), Place::infinite()};
  for (const Rat* x : values) {
    for (std::uint64_t p : arith::prime_support(*x)) out.insert(Place::finite(p));
  }
  return out;
}

Rat as_rat(const SquareClass& c) { return Rat(c.representative()); }

}  // namespace

QuadSpace::QuadSpace(std::vector<Rat> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("quadratic space of dimension zero");
  for (const Rat& a : entries_) {
    if (a == 0) throw std::invalid_argument("degenerate diagonal entry");
  }
}

QuadSpace QuadSpace::direct_sum(const QuadSpace& other) const {
  std::vector<Rat> all = entries_;
  all.insert(all.end(), other.entries_.begin(), other.entries_.end());
  return QuadSpace(std::move(all));
}

Br2Class SpaceInvariants::hasse_at(const Place& v) const {
  auto it = hasse.find(v);
  return it == hasse.end() ? Br2Class{} : it->second;
}

std::set<Place> SpaceInvariants::nontrivial_places() const {
  std::set<Place> out;
  for (const auto& [v, c] : hasse) {
    if (!c.is_trivial()) out.insert(v);
  }
  return out;
}

bool operator==(const SpaceInvariants& a, const SpaceInvariants& b) {
  return a.dim == b.dim && a.det == b.det && a.sig == b.sig && a.nontrivial_places() == b.nontrivial_places();
}

SpaceInvariants invariants(const QuadSpace& V) {
  SpaceInvariants inv;
  inv.dim = V.dim();
  Rat det = 1;
  std::set<Place> support{Place::finite(2), Place::infinite()};
  for (const Rat& a : V.entries()) {
    det *= a;
    (a > 0 ? inv.sig.pos : inv.sig.neg) += 1;
    for (std::uint64_t p : arith::prime_support(a)) support.insert(Place::finite(p));
  }
  inv.det = arith::square_class(det);

  // sum_{i<j} (a_i, a_j) = sum_j (a_1 ... a_{j-1}, a_j) by bilinearity.
  for (const Place& v : support) {
    Br2Class w;
    Rat prefix = V.entries().front();
    for (std::size_t j = 1; j < V.entries().size(); ++j) {
      w += arith::hilbert(prefix, V.entries()[j], v);
      prefix *= V.entries()[j];
    }
    inv.hasse.emplace(v, w);
  }
  return inv;
}

QuadSpace hyperbolic(int m) {
  if (m < 1) throw std::invalid_argument("hyperbolic(m) needs m >= 1");
  std::vector<Rat> entries;
  for (int i = 0; i < m; ++i) {
    entries.emplace_back(1);
    entries.emplace_back(-1);
  }
  return QuadSpace(std::move(entries));
}

SpaceInvariants direct_sum_invariants(const SpaceInvariants& v, const SpaceInvariants& w) {
  SpaceInvariants out;
  out.dim = v.dim + w.dim;
  out.det = v.det * w.det;
  out.sig = {v.sig.pos + w.sig.pos, v.sig.neg + w.sig.neg};

  const Rat dv = as_rat(v.det);
  const Rat dw = as_rat(w.det);
  std::set<Place> support = base_support({&dv, &dw});
  for (const auto& [p, c] : v.hasse) support.insert(p);
  for (const auto& [p, c] : w.hasse) support.insert(p);
  for (const Place& p : support) {
    out.hasse.emplace(p, v.hasse_at(p) + w.hasse_at(p) + arith::hilbert(dv, dw, p));
  }
  return out;
}

SpaceInvariants complement_invariants(const SpaceInvariants& ambient, const SpaceInvariants& sub) {
  if (sub.dim >= ambient.dim) {
    throw std::invalid_argument("complement needs sub.dim < ambient.dim (" + std::to_string(sub.dim) + " vs " +
                                std::to_string(ambient.dim) + ")");
  }
  if (sub.sig.pos > ambient.sig.pos || sub.sig.neg > ambient.sig.neg) {
    throw std::invalid_argument("sub signature does not fit inside the ambient signature");
  }
  SpaceInvariants out;
  out.dim = ambient.dim - sub.dim;
  out.det = ambient.det * sub.det;
  out.sig = {ambient.sig.pos - sub.sig.pos, ambient.sig.neg - sub.sig.neg};
  if (out.det.sign != (out.sig.neg % 2 == 0 ? 1 : -1)) {
    throw std::invalid_argument("determinant sign is inconsistent with the complement signature");
  }

  // w(A) = w(S) + w(T) + (det S, det T), solved for w(T).
  const Rat ds = as_rat(sub.det);
  const Rat dt = as_rat(out.det);
  std::set<Place> support = base_support({&ds, &dt});
  for (const auto& [p, c] : ambient.hasse) support.insert(p);
  for (const auto& [p, c] : sub.hasse) support.insert(p);
  for (const Place& p : support) {
    out.hasse.emplace(p, ambient.hasse_at(p) + sub.hasse_at(p) + arith::hilbert(ds, dt, p));
  }
  return out;
}

void CMFieldData::validate() const {
  if (degree < 2 || degree % 2 != 0) throw std::invalid_argument("CM field degree must be even and positive");
  if (n < 1) throw std::invalid_argument("n must be a positive integer");
  if (disc_is_square != arith::square_class(Rat(n)).is_trivial()) {
    throw std::invalid_argument("disc_is_square disagrees with the square class of n = " + n.get_str());
  }
  if (nonsplit_witness) {
    if (!arith::is_prime(*nonsplit_witness)) throw std::invalid_argument("nonsplit witness must be prime");
    auto it = split_table.find(*nonsplit_witness);
    if (it != split_table.end() && it->second) {
      throw std::invalid_argument("split table marks the nonsplit witness as split");
    }
  }
  for (const auto& [p, split] : split_table) {
    if (!arith::is_prime(p)) throw std::invalid_argument("split table key " + std::to_string(p) + " is not prime");
  }
}

HyperbolicityReport hyperbolicity_check(const SpaceInvariants& V, const CMFieldData& F) {
  F.validate();
  if (V.dim != F.degree) {
    throw std::invalid_argument("dimension mismatch: dim V = " + std::to_string(V.dim) +
                                ", [F:Q] = " + std::to_string(F.degree));
  }
  const int m = F.half_degree();
  const SpaceInvariants U = invariants(hyperbolic(m));
  const Rat disc = (m % 2 == 0 ? 1 : -1) * Rat(F.n);

  // Both Hasse invariants vanish outside their supports, so the finite
  // union decides the condition at every prime.
  std::set<Place> support;
  for (const auto& [p, c] : V.hasse) support.insert(p);
  for (const auto& [p, c] : U.hasse) support.insert(p);

  HyperbolicityReport report;
  for (const Place& v : support) {
    if (v.is_infinite() || V.hasse_at(v) == U.hasse_at(v)) continue;
    const std::uint64_t p = v.prime();
    report.discrepancies.push_back(p);

    auto row = F.split_table.find(p);
    if (row != F.split_table.end() && row->second) {
      report.split_conflicts.push_back(p);
    } else if (F.nonsplit_witness == p) {
      report.certified_nonsplit.emplace(p, NonsplitReason::Witness);
    } else if (row != F.split_table.end()) {
      report.certified_nonsplit.emplace(p, NonsplitReason::SplitTableFalse);
    } else if (!arith::is_local_square(disc, p)) {
      report.certified_nonsplit.emplace(p, NonsplitReason::DiscNotLocalSquare);
    } else {
      report.needs_data.push_back(p);
    }
  }

  if (!report.split_conflicts.empty()) {
    report.status = HyperbolicityStatus::Fail;
  } else if (!report.needs_data.empty()) {
    report.status = HyperbolicityStatus::NeedsData;
  } else if (!report.discrepancies.empty()) {
    report.status = HyperbolicityStatus::ConditionalPass;
  } else {
    report.status = HyperbolicityStatus::Pass;
  }
  return report;
}

HyperbolicityReport hyperbolicity_check(const QuadSpace& V, const CMFieldData& F) {
  return hyperbolicity_check(invariants(V), F);
}

BayerVerdict bayer_criterion(const SpaceInvariants& V, const CMFieldData& F) {
  BayerVerdict out;
  out.hyperbolicity = hyperbolicity_check(V, F);
  out.det = V.det;
  // (-1)^m disc(F) = n.
  out.expected_det = arith::square_class(Rat(F.n));
  out.det_matches = out.det == out.expected_det;
  out.sig = V.sig;
  out.signature_even = V.sig.pos % 2 == 0 && V.sig.neg % 2 == 0;

  const auto hs = out.hyperbolicity.status;
  if (!out.det_matches || !out.signature_even || hs == HyperbolicityStatus::Fail) {
    out.outcome = Outcome::Fails;
  } else if (hs == HyperbolicityStatus::NeedsData) {
    out.outcome = Outcome::Undetermined;
  } else {
    out.outcome = Outcome::Holds;
  }
  return out;
}

BayerVerdict bayer_criterion(const QuadSpace& V, const CMFieldData& F) { return bayer_criterion(invariants(V), F); }

const char* to_string(HyperbolicityStatus s) {
  switch (s) {
    case HyperbolicityStatus::Pass:
      return "PASS";
    case HyperbolicityStatus::ConditionalPass:
      return "CONDITIONAL-PASS";
    case HyperbolicityStatus::NeedsData:
      return "NEEDS-DATA";
    case HyperbolicityStatus::Fail:
      return "FAIL";
  }
  return "?";
}

const char* to_string(NonsplitReason r) {
  switch (r) {
    case NonsplitReason::Witness:
      return "nonsplit-witness";
    case NonsplitReason::SplitTableFalse:
      return "split-table";
    case NonsplitReason::DiscNotLocalSquare:
      return "disc-not-local-square";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds:
      return "holds";
    case Outcome::Fails:
      return "fails";
    case Outcome::Undetermined:
      return "undetermined";
  }
  return "?";
}

}  // namespace k3cert::qform
