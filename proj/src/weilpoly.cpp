#include "k3cert/weilpoly.hpp"

#include <numeric>
#include <stdexcept>

namespace k3cert::weil {

namespace {

int sign_of(const Rat& x) { return sgn(x); }

// Sign changes in the Sturm sequence at x, zeros dropped.
int sign_variations(const std::vector<RatPoly>& seq, const Rat& x) {
  int variations = 0;
  int last = 0;
  for (const RatPoly& f : seq) {
    const int s = sign_of(f.evaluate(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

std::vector<RatPoly> sturm_sequence(const RatPoly& F) {
  std::vector<RatPoly> seq{F, F.derivative()};
  while (!seq.back().is_zero()) {
    RatPoly r = -divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps signs and tames coefficient growth.
    r *= Rat(1) / abs(r.leading());
    seq.push_back(std::move(r));
  }
  return seq;
}

long euler_phi(long k) {
  long result = k;
  for (long p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      while (k % p == 0) k /= p;
      result -= result / p;
    }
  }
  if (k > 1) result -= result / k;
  return result;
}

// Phi_d for every d listed, built bottom-up.
std::map<int, RatPoly> cyclotomic_table(const std::vector<int>& indices) {
  std::map<int, RatPoly> table;
  for (int k : indices) {
    if (table.count(k)) continue;
    RatPoly f = RatPoly::monomial(1, k) - RatPoly::constant(1);
    for (int d = 1; d < k; ++d) {
      if (k % d != 0) continue;
      auto it = table.find(d);
      RatPoly phi_d = it != table.end() ? it->second : cyclotomic_polynomial(d);
      f = exact_div(f, phi_d);
    }
    table.emplace(k, std::move(f));
  }
  return table;
}

}  // namespace

RatPoly::RatPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
  for (Rat& c : coeffs_) c.canonicalize();
  trim();
}

RatPoly RatPoly::constant(const Rat& c) { return RatPoly(std::vector<Rat>{c}); }

RatPoly RatPoly::monomial(const Rat& c, int degree) {
  if (degree < 0) throw std::invalid_argument("negative monomial degree");
  std::vector<Rat> v(static_cast<std::size_t>(degree) + 1, Rat(0));
  v.back() = c;
  return RatPoly(std::move(v));
}

RatPoly RatPoly::x() { return monomial(1, 1); }

void RatPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat RatPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const Rat& RatPoly::leading() const {
  if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rat RatPoly::evaluate(const Rat& t) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Rat> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return RatPoly(std::move(d));
}

RatPoly RatPoly::pow(unsigned e) const {
  RatPoly result = constant(1);
  RatPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return {};
  return *this * (Rat(1) / leading());
}

RatPoly RatPoly::reversed() const {
  std::vector<Rat> r(coeffs_.rbegin(), coeffs_.rend());
  return RatPoly(std::move(r));
}

RatPoly RatPoly::normalized_constant() const {
  if (coeff(0) == 0) throw std::domain_error("cannot normalize a polynomial with zero constant term");
  return *this * (Rat(1) / coeffs_.front());
}

RatPoly RatPoly::operator-() const {
  RatPoly r = *this;
  for (Rat& c : r.coeffs_) c = -c;
  return r;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const RatPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rat> prod(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(prod);
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const Rat& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (Rat& x : coeffs_) x *= c;
  return *this;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {RatPoly{}, a};
  std::vector<Rat> rem = a.coeffs();
  std::vector<Rat> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rat(0));
  const Rat inv_lead = Rat(1) / b.leading();
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    const Rat c = rem[static_cast<std::size_t>(i)] * inv_lead;
    if (c == 0) continue;
    quot[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

RatPoly exact_div(const RatPoly& a, const RatPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

bool divides(const RatPoly& b, const RatPoly& a) { return divmod(a, b).second.is_zero(); }

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a;
  RatPoly y = b;
  while (!y.is_zero()) {
    RatPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

bool is_squarefree(const RatPoly& f) {
  if (f.is_zero()) return false;
  return gcd(f, f.derivative()).degree() == 0;
}

std::string to_text(const RatPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) out += ',';
    out += arith::to_string(f.coeffs()[i]);
  }
  return out;
}

RatPoly parse_poly(std::string_view text) {
  std::vector<Rat> coeffs;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    coeffs.push_back(arith::parse_rational(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return RatPoly(std::move(coeffs));
}

NewtonPolygon newton_polygon(const RatPoly& P, std::uint64_t p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("newton_polygon needs a prime");
  if (P.coeff(0) == 0) throw std::invalid_argument("newton_polygon needs a nonzero constant term");

  struct Point {
    long x;
    long y;
  };
  std::vector<Point> pts;
  for (int i = 0; i <= P.degree(); ++i) {
    if (P.coeff(i) == 0) continue;
    pts.push_back({i, arith::val_p(P.coeff(i), p).value()});
  }

  // Monotone-chain lower hull; collinear middle points are dropped.
  std::vector<Point> hull;
  for (const Point& pt : pts) {
    while (hull.size() >= 2) {
      const Point& o = hull[hull.size() - 2];
      const Point& a = hull.back();
      const long cross = (a.x - o.x) * (pt.y - o.y) - (a.y - o.y) * (pt.x - o.x);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }

  NewtonPolygon np;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const long dx = hull[i].x - hull[i - 1].x;
    const long dy = hull[i].y - hull[i - 1].y;
    Rat slope(dy, dx);
    slope.canonicalize();
    np.segments.push_back({slope, static_cast<int>(dx)});
  }
  return np;
}

RatPoly reciprocal_transform(const RatPoly& F) {
  if (F.is_zero()) throw std::invalid_argument("reciprocal transform of the zero polynomial");
  const int m = F.degree();
  const RatPoly t2p1(std::vector<Rat>{1, 0, 1});
  RatPoly L;
  RatPoly power = RatPoly::constant(1);  // (T^2 + 1)^k
  for (int k = 0; k <= m; ++k) {
    if (F.coeff(k) != 0) L += RatPoly::monomial(F.coeff(k), m - k) * power;
    power *= t2p1;
  }
  return L;
}

std::optional<RatPoly> chebyshev_descent(const RatPoly& L) {
  if (L.is_zero() || L.degree() % 2 != 0 || L.reversed() != L) return std::nullopt;
  const int m = L.degree() / 2;
  // T^k + T^-k = V_k(T + 1/T) with V_0 = 2, V_1 = x, V_k = x V_{k-1} - V_{k-2}.
  RatPoly v_prev = RatPoly::constant(2);
  RatPoly v_cur = RatPoly::x();
  RatPoly G = RatPoly::constant(L.coeff(m));
  for (int k = 1; k <= m; ++k) {
    G += v_cur * L.coeff(m + k);
    RatPoly next = RatPoly::x() * v_cur - v_prev;
    v_prev = std::move(v_cur);
    v_cur = std::move(next);
  }
  return G;
}

int sturm_count(const RatPoly& F, const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) throw std::invalid_argument("sturm_count needs lo < hi");
  if (F.is_zero()) throw std::invalid_argument("sturm_count of the zero polynomial");
  if (F.degree() == 0) return 0;
  if (!is_squarefree(F)) throw std::invalid_argument("sturm_count needs a squarefree polynomial");
  const auto seq = sturm_sequence(F);
  return sign_variations(seq, lo) - sign_variations(seq, hi);
}

bool unit_circle_check(const RatPoly& L) {
  if (L.is_zero() || L.coeff(0) == 0) return false;
  RatPoly R = L;
  for (const RatPoly& lin : {RatPoly(std::vector<Rat>{-1, 1}), RatPoly(std::vector<Rat>{1, 1})}) {
    while (R.degree() > 0) {
      auto [q, r] = divmod(R, lin);
      if (!r.is_zero()) break;
      R = std::move(q);
    }
  }
  if (R.degree() == 0) return true;
  // With +-1 removed, unit-circle roots pair as (z, 1/z) and R = rev(R).
  const auto G = chebyshev_descent(R);
  if (!G) return false;
  // |t| = 1 iff x = t + 1/t is real in [-2, 2].
  const RatPoly S = exact_div(*G, gcd(*G, G->derivative()));
  int count = sturm_count(S, -2, 2);
  if (S.evaluate(-2) == 0) ++count;
  return count == S.degree();
}

std::vector<int> cyclotomic_index_list(int maxdeg) {
  std::vector<int> out;
  if (maxdeg < 1) return out;
  // phi(k) >= sqrt(k / 2), so phi(k) <= maxdeg forces k <= 2 maxdeg^2.
  const long bound = 2L * maxdeg * maxdeg;
  for (long k = 1; k <= bound; ++k) {
    if (euler_phi(k) <= maxdeg) out.push_back(static_cast<int>(k));
  }
  return out;
}

RatPoly cyclotomic_polynomial(int k) {
  if (k < 1) throw std::invalid_argument("cyclotomic index must be positive");
  std::vector<int> divisors;
  for (int d = 1; d <= k; ++d) {
    if (k % d == 0) divisors.push_back(d);
  }
  return cyclotomic_table(divisors).at(k);
}

std::optional<int> has_cyclotomic_factor(const RatPoly& L) {
  if (L.is_zero()) throw std::invalid_argument("has_cyclotomic_factor of the zero polynomial");
  if (L.degree() < 1) return std::nullopt;
  const auto indices = cyclotomic_index_list(L.degree());
  const auto table = cyclotomic_table(indices);
  for (int k : indices) {
    if (divides(table.at(k), L)) return k;
  }
  return std::nullopt;
}

StrippedPoly strip_cyclotomic(const RatPoly& P) {
  if (P.coeff(0) == 0) throw std::invalid_argument("strip_cyclotomic needs P(0) != 0");
  StrippedPoly out;
  RatPoly rest = P;
  const auto indices = cyclotomic_index_list(P.degree());
  const auto table = cyclotomic_table(indices);
  for (int k : indices) {
    const RatPoly& phi = table.at(k);
    while (rest.degree() >= phi.degree()) {
      auto [q, r] = divmod(rest, phi);
      if (!r.is_zero()) break;
      rest = std::move(q);
      out.removed.push_back(k);
    }
  }
  out.quotient = rest.normalized_constant();
  return out;
}

std::optional<PowerDecomposition> squarefree_decompose(const RatPoly& L) {
  if (L.is_zero() || L.coeff(0) != 1) throw std::invalid_argument("squarefree_decompose needs L(0) = 1");
  if (L.degree() == 0) return PowerDecomposition{L, 1};
  const RatPoly R = exact_div(L, gcd(L, L.derivative())).normalized_constant();
  if (L.degree() % R.degree() != 0) return std::nullopt;
  const int e = L.degree() / R.degree();
  if (R.pow(static_cast<unsigned>(e)) != L) return std::nullopt;
  return PowerDecomposition{R, e};
}

bool denominators_are_p_powers(const RatPoly& f, std::uint64_t p) {
  for (const Rat& c : f.coeffs()) {
    Integer d = c.get_den();
    Integer pp(static_cast<unsigned long>(p));
    mpz_remove(d.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
    if (d != 1) return false;
  }
  return true;
}

IrreducibilityCertificate kronecker_certificate(const RatPoly& R, std::uint64_t p) {
  if (R.coeff(0) != 1) throw std::invalid_argument("kronecker_certificate needs R(0) = 1");
  if (!is_squarefree(R)) throw std::invalid_argument("kronecker_certificate needs a squarefree polynomial");

  IrreducibilityCertificate cert;
  const NewtonPolygon np = newton_polygon(R, p);

  Premise slope{"pure-slope", false, ""};
  const auto& segs = np.segments;
  const bool shape_three = segs.size() == 3 && segs[1].slope == 0;
  const bool shape_two = segs.size() == 2;
  if ((shape_three || shape_two) && segs.front().slope < 0 && segs.back().slope == -segs.front().slope &&
      segs.front().length == segs.back().length) {
    const int h = segs.front().length;
    const Rat a_rat = -segs.front().slope * h;
    if (a_rat.get_den() != 1) {
      slope.detail = "slope * length is not integral";
    } else {
      cert.h = h;
      cert.a = a_rat.get_num();
      const Integer g = gcd(a_rat.get_num(), Integer(h));
      slope.holds = g == 1;
      slope.detail = "h=" + std::to_string(h) + " a=" + a_rat.get_num().get_str() + (slope.holds ? " coprime" : " not coprime");
    }
  } else {
    slope.detail = "polygon is not of the form (-s, 0, s)";
  }
  cert.premises.push_back(slope);

  const auto cyclo = has_cyclotomic_factor(R);
  cert.premises.push_back({"no-cyclotomic-factor", !cyclo, cyclo ? "Phi_" + std::to_string(*cyclo) + " divides R" : ""});

  const bool circle = unit_circle_check(R);
  cert.premises.push_back({"unit-circle", circle, circle ? "" : "some root is off the unit circle"});

  const bool integral = denominators_are_p_powers(R, p);
  cert.premises.push_back({"l-integrality", integral, integral ? "" : "a denominator has a prime factor other than p"});

  bool all = true;
  for (const Premise& pr : cert.premises) all = all && pr.holds;
  cert.verdict = all ? IrreducibilityCertificate::Verdict::Certified : IrreducibilityCertificate::Verdict::Unknown;
  return cert;
}

}  // namespace k3cert::weil
