#pragma once

// JSON views of the certificates.  Objects use nlohmann::json's ordered-by-key
// map, so dump() is byte-stable.  Integers that fit in int64 are numbers,
// larger ones are decimal strings; rationals are always "num/den" strings.

#include <json.hpp>

#include "k3cert/arith.hpp"
#include "k3cert/condition.hpp"
#include "k3cert/k3lattice.hpp"
#include "k3cert/qform.hpp"
#include "k3cert/weilpoly.hpp"

namespace k3cert::report {

using Json = nlohmann::json;

Json integer(const arith::Integer& n);
Json rational(const arith::Rat& x);
Json poly(const weil::RatPoly& f);
Json square_class(const arith::SquareClass& c);

Json to_json(const weil::NewtonPolygon& np);
Json to_json(const weil::StrippedPoly& s);
Json to_json(const qform::SpaceInvariants& inv);
Json to_json(const qform::HyperbolicityReport& r);
Json to_json(const qform::BayerVerdict& v);
Json to_json(const lattice::LatticeSpec& L);
Json to_json(const lattice::NoMinusTwoCertificate& c);
Json to_json(const lattice::LatticeReport& r);
Json to_json(const condition::Condition1Report& r);
Json to_json(const condition::Witness& w);
Json to_json(const condition::FeasibilityVerdict& v);

}  // namespace k3cert::report
