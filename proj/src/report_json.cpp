#include "k3cert/report_json.hpp"

#include <climits>

namespace k3cert::report {

namespace {

template <typename T, typename F>
Json optional_or_null(const std::optional<T>& x, F&& f) {
  return x ? f(*x) : Json(nullptr);
}

Json signature(const qform::Signature& s) { return Json::array({s.pos, s.neg}); }

Json u64_list(const std::vector<std::uint64_t>& xs) {
  Json out = Json::array();
  for (auto x : xs) out.push_back(x);
  return out;
}

Json pair_or_null(const std::optional<std::pair<std::int64_t, std::int64_t>>& v) {
  return optional_or_null(v, [](const auto& ab) { return Json::array({ab.first, ab.second}); });
}

}  // namespace

Json integer(const arith::Integer& n) {
  if (mpz_sizeinbase(n.get_mpz_t(), 2) < 63) return Json(static_cast<std::int64_t>(n.get_si()));
  return Json(n.get_str());
}

Json rational(const arith::Rat& x) { return Json(arith::to_string(x)); }

Json poly(const weil::RatPoly& f) { return Json(weil::to_text(f)); }

Json square_class(const arith::SquareClass& c) { return integer(c.representative()); }

Json to_json(const weil::NewtonPolygon& np) {
  Json out = Json::array();
  for (const auto& s : np.segments) out.push_back({{"slope", rational(s.slope)}, {"length", s.length}});
  return out;
}

Json to_json(const weil::StrippedPoly& s) { return {{"quotient", poly(s.quotient)}, {"removed", s.removed}}; }

Json to_json(const qform::SpaceInvariants& inv) {
  Json hasse = Json::array();
  for (const auto& v : inv.nontrivial_places()) hasse.push_back(v.to_string());
  return {{"dim", inv.dim}, {"det", square_class(inv.det)}, {"signature", signature(inv.sig)}, {"hasse_nontrivial", hasse}};
}

Json to_json(const qform::HyperbolicityReport& r) {
  Json certified = Json::object();
  for (const auto& [p, why] : r.certified_nonsplit) certified[std::to_string(p)] = qform::to_string(why);
  return {{"status", qform::to_string(r.status)},
          {"discrepancies", u64_list(r.discrepancies)},
          {"certified_nonsplit", certified},
          {"needs_data", u64_list(r.needs_data)},
          {"split_conflicts", u64_list(r.split_conflicts)}};
}

Json to_json(const qform::BayerVerdict& v) {
  return {{"outcome", qform::to_string(v.outcome)},
          {"det", square_class(v.det)},
          {"expected_det", square_class(v.expected_det)},
          {"det_matches", v.det_matches},
          {"signature", signature(v.sig)},
          {"signature_even", v.signature_even},
          {"hyperbolicity", to_json(v.hyperbolicity)}};
}

Json to_json(const lattice::LatticeSpec& L) {
  Json blocks = Json::array();
  for (const auto& b : L.blocks()) {
    if (b.is_hyperbolic()) {
      blocks.push_back("U");
    } else {
      blocks.push_back({{"diag", integer(b.diag_entry())}});
    }
  }
  return {{"blocks", blocks}};
}

Json to_json(const lattice::NoMinusTwoCertificate& c) {
  return {{"n", integer(c.n)},
          {"squares_mod4", c.squares_mod4},
          {"congruence_obstruction", c.congruence_obstruction},
          {"search_bound", c.search_bound},
          {"minus_two_solutions", c.minus_two_solutions},
          {"plus_two_vector", pair_or_null(c.plus_two_vector)},
          {"certified", c.certified}};
}

Json to_json(const lattice::LatticeReport& r) {
  Json rational_diag = Json::array();
  for (const auto& a : r.rational_space.entries()) rational_diag.push_back(rational(a));
  return {{"m", r.m},
          {"N", to_json(r.N)},
          {"p1", optional_or_null(r.p1, [](auto p) { return Json(p); })},
          {"p2", optional_or_null(r.p2, [](auto p) { return Json(p); })},
          {"rank", r.rank},
          {"signature", signature(r.signature)},
          {"is_even", r.is_even},
          {"rational_diagonal", rational_diag},
          {"N_invariants", to_json(r.N_invariants)},
          {"T_invariants", to_json(r.T_invariants)},
          {"bayer", to_json(r.bayer)},
          {"embedding_hypothesis", r.embedding_hypothesis},
          {"has_U_embedding", r.has_U_embedding},
          {"degree2_vector", pair_or_null(r.degree2_vector)},
          {"no_minus2_certificate",
           optional_or_null(r.no_minus2_certificate, [](const auto& c) { return to_json(c); })}};
}

Json to_json(const condition::Condition1Report& r) {
  Json checks = Json::object();
  for (const auto& [name, b] : r.checks) {
    checks[name] = {{"status", condition::to_string(b.status)}, {"detail", b.detail}};
  }
  return {{"verdict", condition::to_string(r.verdict)},
          {"failed_bullet", optional_or_null(r.failed_bullet, [](const auto& s) { return Json(s); })},
          {"reason", r.reason},
          {"p", r.p},
          {"m", r.m},
          {"h", optional_or_null(r.h, [](int h) { return Json(h); })},
          {"a", optional_or_null(r.a, [](const auto& a) { return integer(a); })},
          {"e", optional_or_null(r.e, [](int e) { return Json(e); })},
          {"q", optional_or_null(r.q, [](const auto& q) { return integer(q); })},
          {"slope_profile", to_json(r.slope_profile)},
          {"checks", checks}};
}

Json to_json(const condition::Witness& w) { return {{"L", poly(w.L)}, {"report", to_json(w.report)}}; }

Json to_json(const condition::FeasibilityVerdict& v) {
  return {{"p", v.p},
          {"rho", v.rho},
          {"h", v.h},
          {"feasible", v.feasible},
          {"reason", condition::to_string(v.reason)},
          {"description", v.description},
          {"m", optional_or_null(v.m, [](int m) { return Json(m); })},
          {"witness_status", condition::to_string(v.witness_status)},
          {"witness", optional_or_null(v.witness, [](const auto& w) { return to_json(w); })}};
}

}  // namespace k3cert::report
